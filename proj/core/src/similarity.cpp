#include "profbench/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "profbench/catalog.hpp"
#include "profbench/errors.hpp"
#include "profbench/interactions.hpp"

namespace profbench {

std::string_view to_string(SimilarityMetric metric) {
  return metric == SimilarityMetric::cosine ? "cosine" : "jaccard";
}

std::optional<SimilarityMetric> parse_similarity_metric(std::string_view token) {
  if (token == "cosine") return SimilarityMetric::cosine;
  if (token == "jaccard") return SimilarityMetric::jaccard;
  return std::nullopt;
}

double cosine(const UserProfile& p, const UserProfile& q) {
  if (p.attribute_type != q.attribute_type) {
    throw std::invalid_argument("cosine over profiles of different attribute types");
  }
  if (p.empty() || q.empty()) throw UndefinedSimilarity("cosine is undefined for an empty profile");

  double dot = 0.0;
  auto a = p.weights.begin();
  auto b = q.weights.begin();
  while (a != p.weights.end() && b != q.weights.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      dot += a->second * b->second;
      ++a;
      ++b;
    }
  }
  double pp = 0.0;
  for (const auto& [f, w] : p.weights) pp += w * w;
  double qq = 0.0;
  for (const auto& [f, w] : q.weights) qq += w * w;
  const double value = dot / (std::sqrt(pp) * std::sqrt(qq));
  return std::clamp(value, 0.0, 1.0);
}

std::vector<std::string> topk_ranked(const UserProfile& p, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<std::pair<std::string, double>> entries(p.weights.begin(), p.weights.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  // Near-equal runs, anchored at their heaviest member, reorder by id.
  for (std::size_t start = 0; start < entries.size();) {
    const double lead = entries[start].second;
    std::size_t end = start + 1;
    while (end < entries.size() && lead - entries[end].second <= kRankTieTolerance * lead) ++end;
    std::sort(entries.begin() + static_cast<std::ptrdiff_t>(start),
              entries.begin() + static_cast<std::ptrdiff_t>(end),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (end >= k) break;
    start = end;
  }

  std::vector<std::string> out;
  const std::size_t n = std::min(k, entries.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::move(entries[i].first));
  return out;
}

FeatureSet topk_binarize(const UserProfile& p, std::size_t k) {
  auto ranked = topk_ranked(p, k);
  return {ranked.begin(), ranked.end()};
}

double jaccard(const FeatureSet& a, const FeatureSet& b) {
  if (a.empty() && b.empty()) throw UndefinedSimilarity("jaccard is undefined for two empty sets");
  std::size_t common = 0;
  for (const auto& f : a) common += b.count(f);
  const std::size_t unioned = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(unioned);
}

FeatureSet support(const UserProfile& p) {
  FeatureSet out;
  for (const auto& [f, w] : p.weights) out.insert(out.end(), f);
  return out;
}

std::optional<double> profile_similarity(const UserProfile& implicit_profile,
                                         const UserProfile& explicit_profile, SimilarityMetric metric) {
  if (implicit_profile.empty() || explicit_profile.empty()) return std::nullopt;
  if (metric == SimilarityMetric::cosine) return cosine(implicit_profile, explicit_profile);
  return jaccard(topk_binarize(implicit_profile, explicit_profile.size()), support(explicit_profile));
}

std::optional<double> pairwise_similarity(std::string_view user_id, ProfileMethod method,
                                          SimilarityMetric metric, const ProfileContext& ctx,
                                          const Dataset& dataset) {
  const auto explicit_p = explicit_profile(user_id, dataset, ctx.attribute_type());
  const auto implicit_p = build_profile(method, user_id, ctx);
  return profile_similarity(implicit_p, explicit_p, metric);
}

SimilarityReport evaluate(const Dataset& dataset, const Catalog& catalog, const EvaluationOptions& options) {
  // [type][method][user] -> score, filled lazily per type.
  struct TypeScores {
    std::map<std::pair<SimilarityMetric, ProfileMethod>, std::vector<std::optional<double>>> scores;
  };
  std::map<AttributeType, TypeScores> by_type;

  for (const auto type : options.types) {
    if (by_type.count(type)) continue;
    const ProfileContext ctx(dataset, catalog, type, options.log_base);
    auto& entry = by_type[type];
    std::vector<UserProfile> explicit_profiles;
    explicit_profiles.reserve(dataset.users().size());
    for (const auto& user : dataset.users()) explicit_profiles.push_back(explicit_profile(user.id, dataset, type));

    for (const auto method : options.methods) {
      std::vector<UserProfile> implicit_profiles;
      implicit_profiles.reserve(dataset.users().size());
      for (const auto& user : dataset.users()) implicit_profiles.push_back(build_profile(method, user.id, ctx));
      for (const auto metric : options.metrics) {
        auto& column = entry.scores[{metric, method}];
        column.clear();
        for (std::size_t i = 0; i < implicit_profiles.size(); ++i) {
          column.push_back(profile_similarity(implicit_profiles[i], explicit_profiles[i], metric));
        }
      }
    }
  }

  SimilarityReport report;
  for (const auto metric : options.metrics) {
    for (const auto type : options.types) {
      for (const auto method : options.methods) {
        SimilarityCell cell;
        cell.metric = metric;
        cell.attribute_type = type;
        cell.method = method;
        double sum = 0.0;
        for (const auto& score : by_type.at(type).scores.at({metric, method})) {
          if (score) {
            sum += *score;
            ++cell.users_included;
          } else if (options.empty_profiles == EmptyProfilePolicy::zero) {
            ++cell.users_included;
          } else {
            ++cell.users_skipped;
          }
        }
        cell.average = cell.users_included ? sum / static_cast<double>(cell.users_included) : 0.0;
        report.cells.push_back(cell);
      }
    }
  }
  return report;
}

}  // namespace profbench
