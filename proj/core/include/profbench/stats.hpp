#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "profbench/attribute.hpp"
#include "profbench/interactions.hpp"

namespace profbench {

class Catalog;

/// How many cohort users picked a feature explicitly (r_exp) and how many
/// have it in at least one favourite item (r_imp).
struct FeaturePopularity {
  std::string feature_id;
  std::string label;
  std::size_t r_exp = 0;
  std::size_t r_imp = 0;
};

struct OverlapRow {
  std::size_t k = 0;
  std::size_t common = 0;
  /// common / k
  double fraction = 0.0;
};

enum class RankMode { explicit_selection, implicit_selection };

using Cohort = std::set<std::string>;

/// One row per feature of `type` with r_exp >= 1 or r_imp >= 1, ordered by
/// feature id. Throws std::invalid_argument on an empty cohort.
std::vector<FeaturePopularity> feature_popularity(const Dataset& dataset, const Catalog& catalog,
                                                  AttributeType type, const Cohort& cohort);

/// Features with a nonzero count in the chosen mode, top-k by that count
/// descending and feature id ascending.
std::vector<FeaturePopularity> top_k(const std::vector<FeaturePopularity>& popularity,
                                     RankMode mode, std::size_t k);

OverlapRow common_at_k(const std::vector<FeaturePopularity>& popularity, std::size_t k);

/// Count of features with a nonzero count in either mode; the "all" k.
std::size_t population_size(const std::vector<FeaturePopularity>& popularity);

Cohort group_cohort(const Dataset& dataset, std::optional<Gender> gender, bool reliable_only,
                    const ReliabilityPolicy& policy = {});

}  // namespace profbench
