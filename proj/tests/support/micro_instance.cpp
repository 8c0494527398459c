#include "micro_instance.hpp"

#include <algorithm>
#include <cstdio>

namespace profbench::testing {
namespace {

std::string padded(char prefix, int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%02d", prefix, n);
  return buf;
}

std::vector<int> random_subset(std::mt19937_64& rng, int universe, double p) {
  std::bernoulli_distribution pick(p);
  std::vector<int> out;
  for (int i = 0; i < universe; ++i) {
    if (pick(rng)) out.push_back(i);
  }
  return out;
}

}  // namespace

std::string MicroInstance::feature_id(int f) { return padded('f', f); }
std::string MicroInstance::item_id(int i) { return padded('i', i); }
std::string MicroInstance::user_id(int u) { return padded('u', u); }

Catalog MicroInstance::catalog() const {
  Catalog::Builder builder;
  for (std::size_t i = 0; i < item_features.size(); ++i) {
    std::vector<FeatureRef> refs;
    for (int f : item_features[i]) {
      refs.push_back({feature_id(f), feature_types[static_cast<std::size_t>(f)], "label " + feature_id(f)});
    }
    builder.add_item(item_id(static_cast<int>(i)), "title " + item_id(static_cast<int>(i)), 0.0, std::move(refs));
  }
  return std::move(builder).build();
}

Dataset MicroInstance::dataset() const {
  const Catalog c = catalog();
  std::vector<User> users;
  std::vector<Favourite> favourites;
  for (std::size_t u = 0; u < user_items.size(); ++u) {
    const auto uid = user_id(static_cast<int>(u));
    users.push_back({uid, Source::volunteer, "", Gender::unspecified, ""});
    for (int i : user_items[u]) favourites.push_back({uid, TargetKind::item, item_id(i), std::nullopt, false});
    for (int f : user_explicit[u]) {
      favourites.push_back({uid, TargetKind::feature, feature_id(f), feature_types[static_cast<std::size_t>(f)], false});
    }
  }
  resolve_favourites(favourites, c);
  return Dataset(std::move(users), std::move(favourites), {});
}

MicroInstance random_micro_instance(std::mt19937_64& rng, const MicroLimits& limits) {
  static constexpr AttributeType kTypes[] = {AttributeType::genre, AttributeType::actor, AttributeType::director};
  MicroInstance m;
  const int n_users = std::uniform_int_distribution<int>(1, limits.max_users)(rng);
  const int n_items = std::uniform_int_distribution<int>(1, limits.max_items)(rng);
  const int n_features = std::uniform_int_distribution<int>(1, limits.max_features)(rng);
  std::uniform_int_distribution<int> type_pick(0, 2);
  for (int f = 0; f < n_features; ++f) m.feature_types.push_back(kTypes[type_pick(rng)]);

  const double item_density = std::uniform_real_distribution<double>(0.1, 0.7)(rng);
  for (int i = 0; i < n_items; ++i) m.item_features.push_back(random_subset(rng, n_features, item_density));

  const double rating_density = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
  const double explicit_density = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  for (int u = 0; u < n_users; ++u) {
    m.user_items.push_back(random_subset(rng, n_items, rating_density));
    m.user_explicit.push_back(random_subset(rng, n_features, explicit_density));
  }
  return m;
}

}  // namespace profbench::testing
