#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "profbench/attribute.hpp"

namespace profbench {

class Catalog;
class Dataset;

/// Implicit profiling methods over binary item favourites. The rating
/// threshold is fixed at 0: every favourite counts as a relevant rating.
enum class ProfileMethod { zhang, li, symeonidis, tfidf };

inline constexpr ProfileMethod kAllProfileMethods[] = {
    ProfileMethod::zhang, ProfileMethod::li, ProfileMethod::symeonidis,
    ProfileMethod::tfidf};

std::string_view to_string(ProfileMethod method);
std::optional<ProfileMethod> parse_profile_method(std::string_view token);

/// Sparse nonnegative weight vector over the features of one attribute type.
/// Zero weights are never stored.
struct UserProfile {
  std::string user_id;
  AttributeType attribute_type = AttributeType::genre;
  /// nullopt for explicit profiles.
  std::optional<ProfileMethod> method;
  std::map<std::string, double> weights;

  bool is_explicit() const noexcept { return !method.has_value(); }
  bool empty() const noexcept { return weights.empty(); }
  std::size_t size() const noexcept { return weights.size(); }
};

/// Logarithm used by the frequency-weighted methods. Ratios of weights, and
/// therefore cosine and top-k rankings, do not depend on the base.
class LogBase {
 public:
  /// Natural logarithm.
  LogBase() = default;
  /// Throws std::invalid_argument unless base > 0 and base != 1.
  explicit LogBase(double base);

  double operator()(double x) const;
  bool is_natural() const noexcept { return !base_.has_value(); }
  /// "e" or the numeric base.
  std::string name() const;

 private:
  std::optional<double> base_;
  double inv_ln_base_ = 1.0;
};

/// Parses "e", "ln", "2", "10", or any positive number other than 1.
LogBase parse_log_base(std::string_view token);

/// Counting statistics over one attribute type for a user cohort.
class ProfileContext {
 public:
  struct UserCounts {
    /// Total resolved item favourites, over all attribute types.
    std::size_t rated_items = 0;
    /// Occurrences of each feature of the context type in the rated items.
    std::map<std::string, std::size_t, std::less<>> occurrences;
  };

  ProfileContext(const Dataset& dataset, const Catalog& catalog, AttributeType type,
                 LogBase log_base = {});

  AttributeType attribute_type() const noexcept { return type_; }
  const LogBase& log_base() const noexcept { return log_; }

  /// |U|: users in the cohort, including those without item favourites.
  std::size_t user_count() const noexcept { return users_.size(); }
  /// |I|: items in the catalog.
  std::size_t item_count() const noexcept;

  /// Counts for a user; an empty record for users outside the cohort.
  const UserCounts& counts(std::string_view user_id) const;
  std::size_t rated_items(std::string_view user_id) const { return counts(user_id).rated_items; }
  std::size_t occurrences(std::string_view user_id, std::string_view feature_id) const;

  /// UF(f): cohort users whose rated items contain the feature.
  std::size_t user_frequency(std::string_view feature_id) const;
  /// n_f, or nullopt when the feature is not in the catalog.
  std::optional<std::size_t> document_frequency(std::string_view feature_id) const;

  /// Item favourites that could not be resolved in the catalog.
  std::size_t unresolved_skipped() const noexcept { return unresolved_skipped_; }

  std::vector<std::string> user_ids() const;

 private:
  const Catalog* catalog_;
  AttributeType type_;
  LogBase log_;
  std::map<std::string, UserCounts, std::less<>> users_;
  std::map<std::string, std::size_t, std::less<>> user_frequency_;
  std::map<std::string, std::size_t, std::less<>> document_frequency_;
  std::size_t unresolved_skipped_ = 0;
};

/// Weight 1 for each feature of `type` the user explicitly favourited.
/// Throws NotFoundError for unknown users.
UserProfile explicit_profile(std::string_view user_id, const Dataset& dataset,
                             AttributeType type);

/// Weight 1 for each feature present in any rated item.
UserProfile zhang_profile(std::string_view user_id, const ProfileContext& ctx);
/// Share of rated items containing the feature: N(u,f) / M(u).
UserProfile li_profile(std::string_view user_id, const ProfileContext& ctx);
/// FF(u,f) * log(|U| / UF(f)).
UserProfile symeonidis_profile(std::string_view user_id, const ProfileContext& ctx);
/// TF(u,f) * log(|I| / n_f).
UserProfile tfidf_profile(std::string_view user_id, const ProfileContext& ctx);

UserProfile build_profile(ProfileMethod method, std::string_view user_id,
                          const ProfileContext& ctx);

struct ScoredItem {
  std::string item_id;
  double score = 0.0;
};

/// Ranks catalog items by cosine between the profile and each item's binary
/// feature indicator over the profile's attribute type. Zero scores are
/// dropped; ties resolve by item id. Throws UndefinedSimilarity on an empty
/// profile and std::invalid_argument when n is 0.
std::vector<ScoredItem> recommend_top_n(const UserProfile& profile, const Catalog& catalog,
                                        std::size_t n);

/// Rows of (user_id, attribute_type, origin, method, feature_id, weight) with
/// weights printed to 10 significant digits.
void write_profiles(std::ostream& out, std::span<const UserProfile> profiles);

}  // namespace profbench
