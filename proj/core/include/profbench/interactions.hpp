#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "profbench/attribute.hpp"

namespace profbench {

class Catalog;

enum class Source { volunteer, crowdsourced };
enum class Gender { male, female, unspecified };

std::string_view to_string(Source source);
std::optional<Source> parse_source(std::string_view token);
std::string_view to_string(Gender gender);
std::optional<Gender> parse_gender(std::string_view token);

struct User {
  std::string id;
  Source source = Source::volunteer;
  /// Empty means unspecified.
  std::string age_range;
  Gender gender = Gender::unspecified;
  /// ISO country code; empty means unspecified.
  std::string country;

  friend bool operator==(const User&, const User&) = default;
};

/// A binary positive selection. Favourites form a set per user.
struct Favourite {
  std::string user_id;
  TargetKind kind = TargetKind::item;
  std::string target_id;
  /// Feature favourites only: from the file's optional `attribute_type`
  /// column, otherwise resolved through the catalog.
  std::optional<AttributeType> attribute_type;
  /// Target exists in the paired catalog.
  bool resolved = false;

  friend bool operator==(const Favourite&, const Favourite&) = default;
};

struct ConsistencyTrial {
  std::string user_id;
  TargetKind kind = TargetKind::item;
  std::string target_id;
  bool is_true_favourite = false;
  bool selected = false;

  friend bool operator==(const ConsistencyTrial&, const ConsistencyTrial&) = default;
};

/// Users, favourites and consistency trials. Records are kept sorted by
/// (user, kind, target) so per-user lookups are contiguous ranges.
class Dataset {
 public:
  Dataset() = default;

  /// Validates references, collapses duplicate favourites (counted) and
  /// rejects duplicate users or trials with IntegrityError.
  Dataset(std::vector<User> users, std::vector<Favourite> favourites,
          std::vector<ConsistencyTrial> trials);

  const std::vector<User>& users() const noexcept { return users_; }
  const std::vector<Favourite>& favourites() const noexcept { return favourites_; }
  const std::vector<ConsistencyTrial>& trials() const noexcept { return trials_; }

  bool has_user(std::string_view id) const;
  /// Throws NotFoundError.
  const User& user(std::string_view id) const;

  std::span<const Favourite> favourites_of(std::string_view user_id) const;
  std::span<const ConsistencyTrial> trials_of(std::string_view user_id) const;

  std::size_t duplicate_favourites() const noexcept { return duplicate_favourites_; }
  std::size_t unresolved_favourites() const;

  const std::vector<std::string>& provenance() const noexcept { return provenance_; }
  void add_provenance(std::string note) { provenance_.push_back(std::move(note)); }

  /// Subset of users together with their favourites and trials.
  Dataset restricted_to(const std::set<std::string>& user_ids) const;

 private:
  std::vector<User> users_;
  std::vector<Favourite> favourites_;
  std::vector<ConsistencyTrial> trials_;
  std::vector<std::string> provenance_;
  std::size_t duplicate_favourites_ = 0;
};

/// Fills `resolved` and `attribute_type` from the catalog. A declared type
/// that disagrees with the catalog is an IntegrityError.
void resolve_favourites(std::vector<Favourite>& favourites, const Catalog& catalog);

struct InteractionPaths {
  std::filesystem::path users;
  std::filesystem::path favourites;
  /// Optional; empty path means no consistency trials.
  std::filesystem::path trials;
};

std::vector<User> parse_users(std::istream& in, const std::string& source_name);
std::vector<Favourite> parse_favourites(std::istream& in, const std::string& source_name);
std::vector<ConsistencyTrial> parse_trials(std::istream& in, const std::string& source_name);

Dataset load_interactions(const InteractionPaths& paths, const Catalog& catalog);

void write_users(std::ostream& out, std::span<const User> users, bool header);
void write_favourites(std::ostream& out, std::span<const Favourite> favourites, bool header);
void write_trials(std::ostream& out, std::span<const ConsistencyTrial> trials, bool header);

/// Key for minimum-favourite counts: items, or one attribute type.
using MinimumKey = std::optional<AttributeType>;  // nullopt = item

struct ReliabilityPolicy {
  double precision_threshold = 0.5;
  std::map<MinimumKey, std::size_t> minimums = {
      {std::nullopt, 5},
      {AttributeType::genre, 2},
      {AttributeType::actor, 3},
      {AttributeType::director, 1},
  };
  /// Also require minimums from crowdsourced users. Off by default: the
  /// reliability rule is a plain disjunction over the two sources.
  bool crowdsourced_requires_minimums = false;

  /// Throws std::invalid_argument when the threshold lies outside [0, 1].
  void validate() const;
};

bool minimum_favourites_met(std::string_view user_id, const Dataset& dataset,
                            const ReliabilityPolicy& policy);
/// Precision of the re-selection; nullopt when nothing was selected.
std::optional<double> consistency_precision(std::string_view user_id, const Dataset& dataset);
bool is_reliable(std::string_view user_id, const Dataset& dataset,
                 const ReliabilityPolicy& policy);
Dataset filter_reliable(const Dataset& dataset, const ReliabilityPolicy& policy);

struct DatasetSummary {
  std::size_t users = 0;
  std::map<std::string, std::size_t> users_by_source;
  std::map<std::string, std::size_t> users_by_gender;
  std::map<std::string, std::size_t> users_by_age;
  std::map<std::string, std::size_t> users_by_country;
  std::size_t users_meeting_minimums = 0;
  std::size_t reliable_users = 0;
  std::map<std::string, std::size_t> reliable_by_source;

  std::size_t favourites = 0;
  /// Distinct (kind, target) pairs.
  std::size_t unique_favourites = 0;
  std::size_t item_favourites = 0;
  /// Keyed by attribute type name; "unknown" for untyped unresolved features.
  std::map<std::string, std::size_t> feature_favourites;
  std::size_t unresolved_favourites = 0;
};

DatasetSummary summary_stats(const Dataset& dataset, const ReliabilityPolicy& policy);

}  // namespace profbench
