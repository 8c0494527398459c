#include "profbench/stats.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <stdexcept>

#include "profbench/catalog.hpp"

namespace profbench {

std::vector<FeaturePopularity> feature_popularity(const Dataset& dataset, const Catalog& catalog,
                                                  AttributeType type, const Cohort& cohort) {
  if (cohort.empty()) throw std::invalid_argument("feature popularity needs a nonempty cohort");

  std::map<std::string, FeaturePopularity> rows;
  auto row = [&](const std::string& fid) -> FeaturePopularity& {
    auto [it, inserted] = rows.try_emplace(fid);
    if (inserted) {
      it->second.feature_id = fid;
      const Feature* f = catalog.find_feature(fid);
      it->second.label = f ? f->label : fid;
    }
    return it->second;
  };

  for (const auto& user_id : cohort) {
    if (!dataset.has_user(user_id)) continue;
    std::set<std::string> explicit_features;
    std::set<std::string> implicit_features;
    for (const auto& fav : dataset.favourites_of(user_id)) {
      if (fav.kind == TargetKind::feature) {
        if (fav.attribute_type == type) explicit_features.insert(fav.target_id);
        continue;
      }
      const Item* item = catalog.find_item(fav.target_id);
      if (!item) continue;
      for (const auto& fid : item->features) {
        if (catalog.find_feature(fid)->type == type) implicit_features.insert(fid);
      }
    }
    for (const auto& fid : explicit_features) ++row(fid).r_exp;
    for (const auto& fid : implicit_features) ++row(fid).r_imp;
  }

  std::vector<FeaturePopularity> out;
  out.reserve(rows.size());
  for (auto& [fid, r] : rows) out.push_back(std::move(r));
  return out;
}

std::vector<FeaturePopularity> top_k(const std::vector<FeaturePopularity>& popularity, RankMode mode,
                                     std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  auto count = [mode](const FeaturePopularity& p) {
    return mode == RankMode::explicit_selection ? p.r_exp : p.r_imp;
  };
  std::vector<FeaturePopularity> ranked;
  std::copy_if(popularity.begin(), popularity.end(), std::back_inserter(ranked),
               [&](const FeaturePopularity& p) { return count(p) > 0; });
  std::sort(ranked.begin(), ranked.end(), [&](const FeaturePopularity& a, const FeaturePopularity& b) {
    if (count(a) != count(b)) return count(a) > count(b);
    return a.feature_id < b.feature_id;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

OverlapRow common_at_k(const std::vector<FeaturePopularity>& popularity, std::size_t k) {
  const auto explicit_top = top_k(popularity, RankMode::explicit_selection, k);
  const auto implicit_top = top_k(popularity, RankMode::implicit_selection, k);
  std::set<std::string> explicit_ids;
  for (const auto& p : explicit_top) explicit_ids.insert(p.feature_id);
  OverlapRow row;
  row.k = k;
  for (const auto& p : implicit_top) row.common += explicit_ids.count(p.feature_id);
  row.fraction = static_cast<double>(row.common) / static_cast<double>(k);
  return row;
}

std::size_t population_size(const std::vector<FeaturePopularity>& popularity) {
  return static_cast<std::size_t>(std::count_if(popularity.begin(), popularity.end(),
                                                [](const FeaturePopularity& p) { return p.r_exp || p.r_imp; }));
}

Cohort group_cohort(const Dataset& dataset, std::optional<Gender> gender, bool reliable_only,
                    const ReliabilityPolicy& policy) {
  Cohort cohort;
  for (const auto& user : dataset.users()) {
    if (gender && user.gender != *gender) continue;
    if (reliable_only && !is_reliable(user.id, dataset, policy)) continue;
    cohort.insert(user.id);
  }
  return cohort;
}

}  // namespace profbench
