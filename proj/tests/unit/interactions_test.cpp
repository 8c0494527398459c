#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "profbench/catalog.hpp"
#include "profbench/errors.hpp"
#include "profbench/interactions.hpp"
#include "temp_dir.hpp"

namespace profbench {
namespace {

using testing::TempDir;

Catalog small_catalog() {
  std::istringstream in(
      "item_id,title,genre,actor,director\n"
      "m1,M1,g1:Action|g2:Drama,a1:A1|a2:A2,d1:D1\n"
      "m2,M2,g1,a3:A3,d1\n"
      "m3,M3,g2,a1,d2:D2\n"
      "m4,M4,g3:Comedy,a2,d2\n"
      "m5,M5,g1,a3,d1\n"
      "m6,M6,g3,a1,d2\n");
  return parse_catalog(in, "catalog");
}

User user(const std::string& id, Source source, Gender gender = Gender::unspecified) {
  return {id, source, "", gender, ""};
}

Favourite item_fav(const std::string& u, const std::string& item) {
  return {u, TargetKind::item, item, std::nullopt, false};
}

Favourite feature_fav(const std::string& u, const std::string& f) {
  return {u, TargetKind::feature, f, std::nullopt, false};
}

ConsistencyTrial trial(const std::string& u, const std::string& target, bool truth, bool selected) {
  return {u, TargetKind::item, target, truth, selected};
}

std::vector<Favourite> meets_minimums(const std::string& u) {
  return {item_fav(u, "m1"), item_fav(u, "m2"), item_fav(u, "m3"), item_fav(u, "m4"), item_fav(u, "m5"),
          feature_fav(u, "g1"), feature_fav(u, "g2"), feature_fav(u, "a1"), feature_fav(u, "a2"),
          feature_fav(u, "a3"), feature_fav(u, "d1")};
}

Dataset make(std::vector<User> users, std::vector<Favourite> favs, std::vector<ConsistencyTrial> trials = {}) {
  resolve_favourites(favs, small_catalog());
  return Dataset(std::move(users), std::move(favs), std::move(trials));
}

TEST(LoadInteractions, ReadsFilesAndCollapsesDuplicates) {
  TempDir dir;
  const auto users = dir.write("users.csv", "user_id,source,age_range,gender,country\nu1,volunteer,24-30,male,IT\n");
  const auto favs = dir.write("favourites.csv",
                              "user_id,kind,target_id\nu1,item,m1\nu1,feature,g1\nu1,item,m2\nu1,item,m1\n");
  const auto d = load_interactions({users, favs, {}}, small_catalog());
  EXPECT_EQ(d.users().size(), 1u);
  EXPECT_EQ(d.favourites().size(), 3u);
  EXPECT_EQ(d.duplicate_favourites(), 1u);
  EXPECT_EQ(d.user("u1").country, "IT");
  EXPECT_EQ(d.provenance().size(), 2u);
  for (const auto& f : d.favourites()) EXPECT_TRUE(f.resolved);
}

TEST(LoadInteractions, UnknownUserIsIntegrityError) {
  TempDir dir;
  const auto users = dir.write("users.csv", "user_id,source,age_range,gender,country\nu1,volunteer,,,\n");
  const auto favs = dir.write("favourites.csv", "user_id,kind,target_id\nu2,item,m1\n");
  EXPECT_THROW(load_interactions({users, favs, {}}, small_catalog()), IntegrityError);
}

TEST(LoadInteractions, MalformedRowReportsLocation) {
  TempDir dir;
  const auto users = dir.write("users.csv", "user_id,source,age_range,gender,country\nu1,paid,,,\n");
  const auto favs = dir.write("favourites.csv", "user_id,kind,target_id\n");
  try {
    load_interactions({users, favs, {}}, small_catalog());
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.field(), "source");
  }
  const auto trials = dir.write("trials.csv", "user_id,kind,target_id,is_true_favourite,selected\nu1,item,m1,yes,true\n");
  const auto good_users = dir.write("u2.csv", "user_id,source,age_range,gender,country\nu1,crowdsourced,,,\n");
  EXPECT_THROW(load_interactions({good_users, favs, trials}, small_catalog()), LoadError);
}

TEST(LoadInteractions, UnresolvedTargetsAreFlaggedAndTypedColumnHonoured) {
  TempDir dir;
  const auto users = dir.write("users.csv", "user_id,source,age_range,gender,country\nu1,volunteer,,,\n");
  const auto favs = dir.write("favourites.csv",
                              "user_id,kind,target_id,attribute_type\nu1,item,m99,\nu1,feature,a77,actor\nu1,feature,g1,\n");
  const auto d = load_interactions({users, favs, {}}, small_catalog());
  ASSERT_EQ(d.favourites().size(), 3u);
  EXPECT_EQ(d.unresolved_favourites(), 2u);
  const auto it = std::find_if(d.favourites().begin(), d.favourites().end(),
                               [](const Favourite& f) { return f.target_id == "a77"; });
  EXPECT_EQ(it->attribute_type, AttributeType::actor);
  EXPECT_FALSE(it->resolved);

  const auto bad = dir.write("bad.csv", "user_id,kind,target_id,attribute_type\nu1,feature,g1,actor\n");
  EXPECT_THROW(load_interactions({users, bad, {}}, small_catalog()), IntegrityError);
}

TEST(Dataset, DuplicateUsersAndTrialsRejected) {
  EXPECT_THROW(Dataset({user("u1", Source::volunteer), user("u1", Source::volunteer)}, {}, {}), IntegrityError);
  EXPECT_THROW(Dataset({user("u1", Source::volunteer)}, {},
                       {trial("u1", "m1", true, true), trial("u1", "m1", true, false)}),
               IntegrityError);
}

TEST(MinimumFavourites, ExactMinimumsPass) {
  const auto d = make({user("u1", Source::volunteer)}, meets_minimums("u1"));
  EXPECT_TRUE(minimum_favourites_met("u1", d, {}));
}

TEST(MinimumFavourites, OneItemShortFails) {
  auto favs = meets_minimums("u1");
  favs.erase(favs.begin());
  const auto d = make({user("u1", Source::volunteer)}, favs);
  EXPECT_FALSE(minimum_favourites_met("u1", d, {}));
}

TEST(MinimumFavourites, ZeroPolicyIsVacuous) {
  const auto d = make({user("u1", Source::volunteer)}, {});
  ReliabilityPolicy zero;
  for (auto& [k, v] : zero.minimums) v = 0;
  EXPECT_TRUE(minimum_favourites_met("u1", d, zero));
  EXPECT_THROW(minimum_favourites_met("nobody", d, zero), NotFoundError);
}

TEST(ConsistencyPrecision, Definition) {
  std::vector<ConsistencyTrial> trials;
  for (int i = 0; i < 8; ++i) trials.push_back(trial("u1", "t" + std::to_string(i), i < 5, true));
  trials.push_back(trial("u1", "unselected", true, false));
  const auto d = make({user("u1", Source::crowdsourced), user("u2", Source::crowdsourced),
                       user("u3", Source::crowdsourced)},
                      {}, [&] {
                        auto t = trials;
                        t.push_back(trial("u2", "m1", true, true));
                        t.push_back(trial("u2", "m2", false, false));
                        return t;
                      }());
  EXPECT_DOUBLE_EQ(*consistency_precision("u1", d), 0.625);
  EXPECT_DOUBLE_EQ(*consistency_precision("u2", d), 1.0);
  EXPECT_FALSE(consistency_precision("u3", d).has_value());
  EXPECT_THROW(consistency_precision("nobody", d), NotFoundError);
}

TEST(Reliability, VolunteerJudgedOnMinimumsOnly) {
  const auto d = make({user("v", Source::volunteer)}, meets_minimums("v"),
                      {trial("v", "m1", true, true), trial("v", "x", false, true), trial("v", "y", false, true),
                       trial("v", "z", false, true), trial("v", "w", false, true)});
  EXPECT_DOUBLE_EQ(*consistency_precision("v", d), 0.2);
  EXPECT_TRUE(is_reliable("v", d, {}));
}

TEST(Reliability, CrowdsourcedThresholdIsInclusiveAndFailsClosed) {
  const auto d = make({user("c1", Source::crowdsourced), user("c2", Source::crowdsourced)}, {},
                      {trial("c1", "m1", true, true), trial("c1", "m2", false, true)});
  EXPECT_TRUE(is_reliable("c1", d, {}));
  EXPECT_FALSE(is_reliable("c2", d, {}));

  ReliabilityPolicy strict;
  strict.crowdsourced_requires_minimums = true;
  EXPECT_FALSE(is_reliable("c1", d, strict));
}

TEST(FilterReliable, KeepsReliableUsersAndIsIdempotent) {
  auto favs = meets_minimums("v1");
  favs.push_back(item_fav("v2", "m1"));
  favs.push_back(item_fav("c1", "m2"));
  const auto d = make({user("v1", Source::volunteer), user("v2", Source::volunteer), user("c1", Source::crowdsourced)},
                      favs, {trial("c1", "m1", false, true)});
  const auto once = filter_reliable(d, {});
  ASSERT_EQ(once.users().size(), 1u);
  EXPECT_EQ(once.users()[0].id, "v1");
  EXPECT_EQ(once.favourites().size(), meets_minimums("v1").size());
  EXPECT_TRUE(once.trials().empty());
  const auto twice = filter_reliable(once, {});
  EXPECT_EQ(twice.users(), once.users());
  EXPECT_EQ(twice.favourites(), once.favourites());

  const auto lonely = make({user("c", Source::crowdsourced)}, {});
  EXPECT_TRUE(filter_reliable(lonely, {}).users().empty());
}

TEST(ReliabilityProperties, RowOrderNeverChangesVerdict) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    std::vector<User> users;
    std::vector<Favourite> favs;
    std::vector<ConsistencyTrial> trials;
    const char* items[] = {"m1", "m2", "m3", "m4", "m5", "m6"};
    const char* features[] = {"g1", "g2", "g3", "a1", "a2", "a3", "d1", "d2"};
    for (int u = 0; u < 6; ++u) {
      const auto id = "u" + std::to_string(u);
      users.push_back(user(id, rng() % 2 ? Source::volunteer : Source::crowdsourced));
      for (auto* item : items) if (rng() % 3) favs.push_back(item_fav(id, item));
      for (auto* f : features) if (rng() % 2) favs.push_back(feature_fav(id, f));
      for (int t = 0; t < 6; ++t) {
        if (rng() % 2) trials.push_back(trial(id, "t" + std::to_string(t), rng() % 2 == 0, rng() % 2 == 0));
      }
    }
    const auto d1 = make(users, favs, trials);
    std::shuffle(users.begin(), users.end(), rng);
    std::shuffle(favs.begin(), favs.end(), rng);
    std::shuffle(trials.begin(), trials.end(), rng);
    const auto d2 = make(users, favs, trials);
    for (const auto& u : d1.users()) {
      EXPECT_EQ(is_reliable(u.id, d1, {}), is_reliable(u.id, d2, {}));
      const auto p = consistency_precision(u.id, d1);
      if (p) {
        EXPECT_GE(*p, 0.0);
        EXPECT_LE(*p, 1.0);
      }
    }
    const auto s = summary_stats(d1, {});
    std::size_t by_source = 0;
    for (const auto& [k, v] : s.users_by_source) by_source += v;
    EXPECT_EQ(by_source, s.users);
    std::size_t by_gender = 0;
    for (const auto& [k, v] : s.users_by_gender) by_gender += v;
    EXPECT_EQ(by_gender, s.users);
    std::size_t typed = s.item_favourites;
    for (const auto& [k, v] : s.feature_favourites) typed += v;
    EXPECT_EQ(typed, s.favourites);
  }
}

TEST(SummaryStats, CountsAndEmptyDataset) {
  auto favs = meets_minimums("v1");
  favs.push_back(item_fav("c1", "m1"));
  const auto d = make({user("v1", Source::volunteer, Gender::male), user("c1", Source::crowdsourced, Gender::female)},
                      favs, {trial("c1", "m1", true, true)});
  const auto s = summary_stats(d, {});
  EXPECT_EQ(s.users, 2u);
  EXPECT_EQ(s.reliable_users, 2u);
  EXPECT_EQ(s.favourites, favs.size());
  EXPECT_EQ(s.item_favourites, 6u);
  EXPECT_EQ(s.unique_favourites, favs.size() - 1);
  EXPECT_EQ(s.feature_favourites.at("genre"), 2u);
  EXPECT_EQ(s.feature_favourites.at("actor"), 3u);
  EXPECT_EQ(s.users_by_gender.at("male"), 1u);

  const auto empty = summary_stats(Dataset{}, {});
  EXPECT_EQ(empty.users, 0u);
  EXPECT_EQ(empty.favourites, 0u);
  EXPECT_EQ(empty.reliable_users, 0u);
}

TEST(WriteInteractions, ReloadReproducesRecords) {
  TempDir dir;
  auto favs = meets_minimums("v1");
  const auto d = make({{"v1", Source::volunteer, "24-30", Gender::female, "IT"}}, favs,
                      {trial("v1", "m1", true, true), trial("v1", "m6", false, false)});
  std::ostringstream u, f, t;
  write_users(u, d.users(), true);
  write_favourites(f, d.favourites(), true);
  write_trials(t, d.trials(), true);
  const auto reloaded = load_interactions(
      {dir.write("u.csv", u.str()), dir.write("f.csv", f.str()), dir.write("t.csv", t.str())}, small_catalog());
  EXPECT_EQ(reloaded.users(), d.users());
  EXPECT_EQ(reloaded.favourites(), d.favourites());
  EXPECT_EQ(reloaded.trials(), d.trials());
}

}  // namespace
}  // namespace profbench
