#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "micro_instance.hpp"
#include "profbench/profiling.hpp"
#include "profbench/similarity.hpp"

namespace profbench::testing::oracle {

/// Brute-force evaluation of the profiling formulas straight from the index
/// lists: every count is recomputed by scanning users and items. Natural log
/// unless `log_base` is given.
using Weights = std::map<std::string, double>;

Weights profile(const MicroInstance& m, ProfileMethod method, int user, AttributeType type,
                std::optional<double> log_base = std::nullopt);
Weights explicit_weights(const MicroInstance& m, int user, AttributeType type);

/// Cosine by explicit summation; nullopt when either vector is zero.
std::optional<double> cosine(const Weights& a, const Weights& b);
/// Top-k by repeated extraction of the heaviest remaining feature; weights
/// within relative 1e-9 of the current maximum count as tied and the
/// smallest id wins.
std::vector<std::string> top_k(const Weights& w, std::size_t k);
std::optional<double> jaccard_topk(const Weights& implicit_w, const Weights& explicit_w);

/// Unweighted mean over users with both profiles nonempty.
std::optional<double> mean_similarity(const MicroInstance& m, ProfileMethod method, AttributeType type,
                                      SimilarityMetric metric);

}  // namespace profbench::testing::oracle
