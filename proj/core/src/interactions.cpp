#include "profbench/interactions.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "profbench/catalog.hpp"
#include "profbench/csv.hpp"
#include "profbench/errors.hpp"

namespace profbench {
namespace {

auto favourite_key(const Favourite& f) { return std::tie(f.user_id, f.kind, f.target_id); }
auto trial_key(const ConsistencyTrial& t) { return std::tie(t.user_id, t.kind, t.target_id); }

struct UserIdLess {
  bool operator()(const User& u, std::string_view id) const { return u.id < id; }
  bool operator()(std::string_view id, const User& u) const { return id < u.id; }
};

template <class Record>
std::span<const Record> user_range(const std::vector<Record>& records, std::string_view user_id) {
  auto lo = std::lower_bound(records.begin(), records.end(), user_id,
                             [](const Record& r, std::string_view id) { return r.user_id < id; });
  auto hi = std::upper_bound(lo, records.end(), user_id,
                             [](std::string_view id, const Record& r) { return id < r.user_id; });
  return {lo, hi};
}

csv::Header read_header(csv::Reader& reader, const std::vector<std::string>& required,
                        const std::vector<std::string>& optional) {
  auto row = reader.next();
  if (!row) throw LoadError(reader.source(), 1, "-", "missing header row");
  csv::Header header(*row);
  for (const auto& name : required) {
    if (!header.has(name)) throw LoadError(reader.source(), reader.line(), name, "missing header column");
  }
  for (const auto& name : header.names()) {
    const bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                       std::find(optional.begin(), optional.end(), name) != optional.end();
    if (!known) throw LoadError(reader.source(), reader.line(), name, "unknown column");
  }
  return header;
}

const std::string& field(const csv::Reader& reader, const csv::Header& header,
                         const std::vector<std::string>& row, const std::string& name) {
  if (row.size() != header.size()) {
    throw LoadError(reader.source(), reader.line(), "-",
                    "expected " + std::to_string(header.size()) + " fields, got " +
                        std::to_string(row.size()));
  }
  return row[*header.index(name)];
}

bool parse_bool(const csv::Reader& reader, const std::string& name, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw LoadError(reader.source(), reader.line(), name, "expected true/false, got '" + text + "'");
}

TargetKind parse_kind(const csv::Reader& reader, const std::string& text) {
  auto kind = parse_target_kind(text);
  if (!kind) throw LoadError(reader.source(), reader.line(), "kind", "expected item/feature, got '" + text + "'");
  return *kind;
}

std::string sha256_of_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

std::string unspecified_if_empty(const std::string& value) {
  return value.empty() ? "unspecified" : value;
}

std::string optional_value(const std::string& text) {
  return text == "unspecified" ? std::string{} : text;
}

}  // namespace

std::string_view to_string(Source source) {
  return source == Source::volunteer ? "volunteer" : "crowdsourced";
}

std::optional<Source> parse_source(std::string_view token) {
  if (token == "volunteer") return Source::volunteer;
  if (token == "crowdsourced") return Source::crowdsourced;
  return std::nullopt;
}

std::string_view to_string(Gender gender) {
  switch (gender) {
    case Gender::male: return "male";
    case Gender::female: return "female";
    case Gender::unspecified: return "unspecified";
  }
  return "unspecified";
}

std::optional<Gender> parse_gender(std::string_view token) {
  if (token == "male") return Gender::male;
  if (token == "female") return Gender::female;
  if (token == "unspecified" || token.empty()) return Gender::unspecified;
  return std::nullopt;
}

Dataset::Dataset(std::vector<User> users, std::vector<Favourite> favourites,
                 std::vector<ConsistencyTrial> trials)
    : users_(std::move(users)), favourites_(std::move(favourites)), trials_(std::move(trials)) {
  std::sort(users_.begin(), users_.end(), [](const User& a, const User& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < users_.size(); ++i) {
    if (users_[i].id == users_[i - 1].id) throw IntegrityError("duplicate user '" + users_[i].id + "'");
  }

  std::stable_sort(favourites_.begin(), favourites_.end(),
                   [](const Favourite& a, const Favourite& b) { return favourite_key(a) < favourite_key(b); });
  auto last = std::unique(favourites_.begin(), favourites_.end(), [](const Favourite& a, const Favourite& b) {
    return favourite_key(a) == favourite_key(b);
  });
  duplicate_favourites_ = static_cast<std::size_t>(std::distance(last, favourites_.end()));
  favourites_.erase(last, favourites_.end());

  std::sort(trials_.begin(), trials_.end(),
            [](const ConsistencyTrial& a, const ConsistencyTrial& b) { return trial_key(a) < trial_key(b); });
  for (std::size_t i = 1; i < trials_.size(); ++i) {
    if (trial_key(trials_[i]) == trial_key(trials_[i - 1])) {
      throw IntegrityError("duplicate consistency trial for user '" + trials_[i].user_id + "' target '" +
                           trials_[i].target_id + "'");
    }
  }

  for (const auto& f : favourites_) {
    if (!has_user(f.user_id)) throw IntegrityError("favourite references unknown user '" + f.user_id + "'");
  }
  for (const auto& t : trials_) {
    if (!has_user(t.user_id)) throw IntegrityError("trial references unknown user '" + t.user_id + "'");
  }
}

bool Dataset::has_user(std::string_view id) const {
  return std::binary_search(users_.begin(), users_.end(), id, UserIdLess{});
}

const User& Dataset::user(std::string_view id) const {
  auto it = std::lower_bound(users_.begin(), users_.end(), id, UserIdLess{});
  if (it == users_.end() || it->id != id) throw NotFoundError("unknown user '" + std::string(id) + "'");
  return *it;
}

std::span<const Favourite> Dataset::favourites_of(std::string_view user_id) const {
  return user_range(favourites_, user_id);
}

std::span<const ConsistencyTrial> Dataset::trials_of(std::string_view user_id) const {
  return user_range(trials_, user_id);
}

std::size_t Dataset::unresolved_favourites() const {
  return static_cast<std::size_t>(
      std::count_if(favourites_.begin(), favourites_.end(), [](const Favourite& f) { return !f.resolved; }));
}

Dataset Dataset::restricted_to(const std::set<std::string>& user_ids) const {
  std::vector<User> users;
  std::copy_if(users_.begin(), users_.end(), std::back_inserter(users),
               [&](const User& u) { return user_ids.count(u.id) > 0; });
  std::vector<Favourite> favourites;
  std::copy_if(favourites_.begin(), favourites_.end(), std::back_inserter(favourites),
               [&](const Favourite& f) { return user_ids.count(f.user_id) > 0; });
  std::vector<ConsistencyTrial> trials;
  std::copy_if(trials_.begin(), trials_.end(), std::back_inserter(trials),
               [&](const ConsistencyTrial& t) { return user_ids.count(t.user_id) > 0; });
  Dataset out(std::move(users), std::move(favourites), std::move(trials));
  out.provenance_ = provenance_;
  return out;
}

void resolve_favourites(std::vector<Favourite>& favourites, const Catalog& catalog) {
  for (auto& f : favourites) {
    if (f.kind == TargetKind::item) {
      f.resolved = catalog.find_item(f.target_id) != nullptr;
      continue;
    }
    const Feature* feature = catalog.find_feature(f.target_id);
    f.resolved = feature != nullptr;
    if (!feature) continue;
    if (f.attribute_type && *f.attribute_type != feature->type) {
      throw IntegrityError("favourite feature '" + f.target_id + "' of user '" + f.user_id + "' declared as " +
                           std::string(to_string(*f.attribute_type)) + " but catalog has " +
                           std::string(to_string(feature->type)));
    }
    f.attribute_type = feature->type;
  }
}

std::vector<User> parse_users(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in, source_name);
  const auto header = read_header(reader, {"user_id", "source", "age_range", "gender", "country"}, {});
  std::vector<User> users;
  while (auto row = reader.next()) {
    User u;
    u.id = field(reader, header, *row, "user_id");
    if (u.id.empty()) throw LoadError(source_name, reader.line(), "user_id", "empty user id");
    const auto& source = field(reader, header, *row, "source");
    auto parsed_source = parse_source(source);
    if (!parsed_source) {
      throw LoadError(source_name, reader.line(), "source", "expected volunteer/crowdsourced, got '" + source + "'");
    }
    u.source = *parsed_source;
    const auto& gender = field(reader, header, *row, "gender");
    auto parsed_gender = parse_gender(gender);
    if (!parsed_gender) {
      throw LoadError(source_name, reader.line(), "gender", "expected male/female/unspecified, got '" + gender + "'");
    }
    u.gender = *parsed_gender;
    u.age_range = optional_value(field(reader, header, *row, "age_range"));
    u.country = optional_value(field(reader, header, *row, "country"));
    users.push_back(std::move(u));
  }
  return users;
}

std::vector<Favourite> parse_favourites(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in, source_name);
  const auto header = read_header(reader, {"user_id", "kind", "target_id"}, {"attribute_type"});
  const bool typed = header.has("attribute_type");
  std::vector<Favourite> favourites;
  while (auto row = reader.next()) {
    Favourite f;
    f.user_id = field(reader, header, *row, "user_id");
    f.kind = parse_kind(reader, field(reader, header, *row, "kind"));
    f.target_id = field(reader, header, *row, "target_id");
    if (f.target_id.empty()) throw LoadError(source_name, reader.line(), "target_id", "empty target id");
    if (typed) {
      const auto& type = field(reader, header, *row, "attribute_type");
      if (!type.empty()) {
        if (f.kind == TargetKind::item) {
          throw LoadError(source_name, reader.line(), "attribute_type", "item favourites carry no attribute type");
        }
        f.attribute_type = parse_attribute_type(type);
        if (!f.attribute_type) {
          throw LoadError(source_name, reader.line(), "attribute_type", "unknown attribute type '" + type + "'");
        }
      }
    }
    favourites.push_back(std::move(f));
  }
  return favourites;
}

std::vector<ConsistencyTrial> parse_trials(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in, source_name);
  const auto header =
      read_header(reader, {"user_id", "kind", "target_id", "is_true_favourite", "selected"}, {});
  std::vector<ConsistencyTrial> trials;
  while (auto row = reader.next()) {
    ConsistencyTrial t;
    t.user_id = field(reader, header, *row, "user_id");
    t.kind = parse_kind(reader, field(reader, header, *row, "kind"));
    t.target_id = field(reader, header, *row, "target_id");
    t.is_true_favourite =
        parse_bool(reader, "is_true_favourite", field(reader, header, *row, "is_true_favourite"));
    t.selected = parse_bool(reader, "selected", field(reader, header, *row, "selected"));
    trials.push_back(std::move(t));
  }
  return trials;
}

Dataset load_interactions(const InteractionPaths& paths, const Catalog& catalog) {
  auto users_in = open_input(paths.users);
  auto users = parse_users(users_in, paths.users.string());
  auto favourites_in = open_input(paths.favourites);
  auto favourites = parse_favourites(favourites_in, paths.favourites.string());
  std::vector<ConsistencyTrial> trials;
  if (!paths.trials.empty()) {
    auto trials_in = open_input(paths.trials);
    trials = parse_trials(trials_in, paths.trials.string());
  }
  resolve_favourites(favourites, catalog);

  Dataset dataset(std::move(users), std::move(favourites), std::move(trials));
  dataset.add_provenance("users sha256=" + sha256_of_file(paths.users));
  dataset.add_provenance("favourites sha256=" + sha256_of_file(paths.favourites));
  if (!paths.trials.empty()) dataset.add_provenance("trials sha256=" + sha256_of_file(paths.trials));
  return dataset;
}

void write_users(std::ostream& out, std::span<const User> users, bool header) {
  if (header) out << "user_id,source,age_range,gender,country\n";
  for (const auto& u : users) {
    out << csv::join({u.id, std::string(to_string(u.source)), unspecified_if_empty(u.age_range),
                      std::string(to_string(u.gender)), unspecified_if_empty(u.country)})
        << '\n';
  }
}

void write_favourites(std::ostream& out, std::span<const Favourite> favourites, bool header) {
  if (header) out << "user_id,kind,target_id\n";
  for (const auto& f : favourites) {
    out << csv::join({f.user_id, std::string(to_string(f.kind)), f.target_id}) << '\n';
  }
}

void write_trials(std::ostream& out, std::span<const ConsistencyTrial> trials, bool header) {
  if (header) out << "user_id,kind,target_id,is_true_favourite,selected\n";
  for (const auto& t : trials) {
    out << csv::join({t.user_id, std::string(to_string(t.kind)), t.target_id,
                      t.is_true_favourite ? "true" : "false", t.selected ? "true" : "false"})
        << '\n';
  }
}

void ReliabilityPolicy::validate() const {
  if (!(precision_threshold >= 0.0 && precision_threshold <= 1.0)) {
    throw std::invalid_argument("precision threshold must lie in [0, 1]");
  }
}

bool minimum_favourites_met(std::string_view user_id, const Dataset& dataset,
                            const ReliabilityPolicy& policy) {
  dataset.user(user_id);
  std::map<MinimumKey, std::size_t> counts;
  for (const auto& f : dataset.favourites_of(user_id)) {
    if (f.kind == TargetKind::item) {
      ++counts[std::nullopt];
    } else if (f.attribute_type) {
      ++counts[*f.attribute_type];
    }
  }
  for (const auto& [key, minimum] : policy.minimums) {
    if (counts[key] < minimum) return false;
  }
  return true;
}

std::optional<double> consistency_precision(std::string_view user_id, const Dataset& dataset) {
  dataset.user(user_id);
  std::size_t selected = 0;
  std::size_t correct = 0;
  for (const auto& t : dataset.trials_of(user_id)) {
    if (!t.selected) continue;
    ++selected;
    if (t.is_true_favourite) ++correct;
  }
  if (selected == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(selected);
}

bool is_reliable(std::string_view user_id, const Dataset& dataset, const ReliabilityPolicy& policy) {
  const User& user = dataset.user(user_id);
  if (user.source == Source::volunteer) return minimum_favourites_met(user_id, dataset, policy);
  if (policy.crowdsourced_requires_minimums && !minimum_favourites_met(user_id, dataset, policy)) {
    return false;
  }
  const auto precision = consistency_precision(user_id, dataset);
  return precision.has_value() && *precision >= policy.precision_threshold;
}

Dataset filter_reliable(const Dataset& dataset, const ReliabilityPolicy& policy) {
  std::set<std::string> keep;
  for (const auto& u : dataset.users()) {
    if (is_reliable(u.id, dataset, policy)) keep.insert(u.id);
  }
  return dataset.restricted_to(keep);
}

DatasetSummary summary_stats(const Dataset& dataset, const ReliabilityPolicy& policy) {
  DatasetSummary s;
  s.users = dataset.users().size();
  for (const auto& u : dataset.users()) {
    ++s.users_by_source[std::string(to_string(u.source))];
    ++s.users_by_gender[std::string(to_string(u.gender))];
    ++s.users_by_age[unspecified_if_empty(u.age_range)];
    ++s.users_by_country[unspecified_if_empty(u.country)];
    if (minimum_favourites_met(u.id, dataset, policy)) ++s.users_meeting_minimums;
    if (is_reliable(u.id, dataset, policy)) {
      ++s.reliable_users;
      ++s.reliable_by_source[std::string(to_string(u.source))];
    }
  }
  std::set<std::pair<TargetKind, std::string>> unique;
  for (const auto& f : dataset.favourites()) {
    ++s.favourites;
    unique.emplace(f.kind, f.target_id);
    if (!f.resolved) ++s.unresolved_favourites;
    if (f.kind == TargetKind::item) {
      ++s.item_favourites;
    } else {
      ++s.feature_favourites[f.attribute_type ? std::string(to_string(*f.attribute_type)) : "unknown"];
    }
  }
  s.unique_favourites = unique.size();
  return s;
}

}  // namespace profbench
