#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "profbench/attribute.hpp"
#include "profbench/profiling.hpp"

namespace profbench {

class Catalog;
class Dataset;

enum class SimilarityMetric { cosine, jaccard };

inline constexpr SimilarityMetric kAllSimilarityMetrics[] = {SimilarityMetric::cosine,
                                                             SimilarityMetric::jaccard};

std::string_view to_string(SimilarityMetric metric);
std::optional<SimilarityMetric> parse_similarity_metric(std::string_view token);

/// Weights whose relative difference is within this bound rank as tied.
/// Keeps top-k selection stable when a log-base change perturbs the last
/// bits of mathematically equal weights.
inline constexpr double kRankTieTolerance = 1e-9;

using FeatureSet = std::set<std::string>;

/// dot(p, q) / (|p| |q|). Throws UndefinedSimilarity when either profile is
/// empty and std::invalid_argument on mismatched attribute types.
double cosine(const UserProfile& p, const UserProfile& q);

/// The min(k, nnz) heaviest features in rank order. Weights tied within
/// kRankTieTolerance order by feature id. Throws std::invalid_argument for k = 0.
std::vector<std::string> topk_ranked(const UserProfile& p, std::size_t k);
FeatureSet topk_binarize(const UserProfile& p, std::size_t k);

/// |A ∩ B| / |A ∪ B|. Throws UndefinedSimilarity when both sets are empty.
double jaccard(const FeatureSet& a, const FeatureSet& b);

FeatureSet support(const UserProfile& p);

/// Similarity between a user's implicit profile and explicit profile, or
/// nullopt (skip) when either is empty. Jaccard cuts the implicit profile
/// to its top-k with k the size of the explicit profile.
std::optional<double> pairwise_similarity(std::string_view user_id, ProfileMethod method,
                                          SimilarityMetric metric, const ProfileContext& ctx,
                                          const Dataset& dataset);

/// Same as above for profiles that are already built.
std::optional<double> profile_similarity(const UserProfile& implicit_profile,
                                         const UserProfile& explicit_profile,
                                         SimilarityMetric metric);

enum class EmptyProfilePolicy {
  /// Leave the user out of the cell average.
  skip,
  /// Score the user 0 and include them.
  zero,
};

struct SimilarityCell {
  SimilarityMetric metric = SimilarityMetric::cosine;
  AttributeType attribute_type = AttributeType::genre;
  ProfileMethod method = ProfileMethod::zhang;
  /// Fraction in [0, 1]; 0 when no users are included.
  double average = 0.0;
  std::size_t users_included = 0;
  std::size_t users_skipped = 0;
};

struct SimilarityReport {
  std::vector<SimilarityCell> cells;
};

struct EvaluationOptions {
  std::vector<ProfileMethod> methods{std::begin(kAllProfileMethods),
                                     std::end(kAllProfileMethods)};
  std::vector<AttributeType> types{AttributeType::genre, AttributeType::actor,
                                   AttributeType::director};
  std::vector<SimilarityMetric> metrics{std::begin(kAllSimilarityMetrics),
                                        std::end(kAllSimilarityMetrics)};
  LogBase log_base{};
  EmptyProfilePolicy empty_profiles = EmptyProfilePolicy::skip;
};

/// Mean pairwise similarity per (metric, type, method) over every user of
/// the dataset. Cells come out in metric, type, method order as given.
SimilarityReport evaluate(const Dataset& dataset, const Catalog& catalog,
                          const EvaluationOptions& options = {});

}  // namespace profbench
