#include "profbench/service.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "profbench/errors.hpp"

namespace profbench {
namespace {

using nlohmann::json;

constexpr std::size_t kDefaultSearchLimit = 20;
constexpr std::size_t kMaxSearchLimit = 200;

/// Thrown inside handlers; converted to an error response.
struct HttpError {
  int status;
  std::string message;
};

HttpResponse respond(int status, const json& body) { return {status, body.dump()}; }

HttpResponse error_response(int status, const std::string& message) {
  return respond(status, json{{"error", message}, {"status", status}});
}

template <class Fn>
HttpResponse guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const HttpError& e) {
    return error_response(e.status, e.message);
  } catch (const json::exception& e) {
    return error_response(400, std::string("malformed request: ") + e.what());
  }
}

json parse_body(std::string_view body) {
  auto doc = json::parse(body.begin(), body.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw HttpError{400, "request body must be a JSON object"};
  return doc;
}

std::size_t parse_limit(std::string_view text) {
  if (text.empty()) return kDefaultSearchLimit;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw HttpError{400, "limit must be a positive integer"};
  }
  return std::min(value, kMaxSearchLimit);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Fisher-Yates driven by splitmix64 so sheets are reproducible everywhere.
template <class T>
void seeded_shuffle(std::vector<T>& values, std::uint64_t& state) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(splitmix64(state) % i);
    std::swap(values[i - 1], values[j]);
  }
}

std::string minimum_key_name(const MinimumKey& key) {
  return key ? std::string(to_string(*key)) : "item";
}

json minimums_json(const ReliabilityPolicy& policy) {
  json out = json::object();
  for (const auto& [key, n] : policy.minimums) out[minimum_key_name(key)] = n;
  return out;
}

std::map<std::string, std::size_t> favourite_counts(const std::vector<Favourite>& favourites) {
  std::map<std::string, std::size_t> counts;
  for (const auto& f : favourites) {
    if (f.kind == TargetKind::item) ++counts["item"];
    else if (f.attribute_type) ++counts[std::string(to_string(*f.attribute_type))];
  }
  return counts;
}

Dataset session_dataset(const Session& s) {
  return Dataset({s.user}, s.favourites, s.trials);
}

json sheet_json(const std::vector<SheetEntry>& sheet) {
  json entries = json::array();
  for (const auto& e : sheet) {
    json entry{{"kind", to_string(e.kind)}, {"target_id", e.target_id}, {"label", e.label}};
    if (e.attribute_type) entry["attribute_type"] = to_string(*e.attribute_type);
    entries.push_back(std::move(entry));
  }
  return entries;
}

json session_json(const Session& s, const ReliabilityPolicy& policy) {
  json favourites = json::array();
  for (const auto& f : s.favourites) favourites.push_back({{"kind", to_string(f.kind)}, {"target_id", f.target_id}});
  json out{{"session_id", s.id},
           {"state", to_string(s.state)},
           {"source", to_string(s.user.source)},
           {"favourites", std::move(favourites)},
           {"counts", favourite_counts(s.favourites)},
           {"minimums", minimums_json(policy)},
           {"minimums_met", minimum_favourites_met(s.id, session_dataset(s), policy)}};
  if (s.state != SessionState::collecting) {
    out["seed"] = s.sheet_seed;
    out["sheet"] = sheet_json(s.sheet);
  }
  if (s.state == SessionState::submitted) {
    out["precision"] = s.precision ? json(*s.precision) : json(nullptr);
    out["reliable"] = s.reliable;
  }
  return out;
}

std::string optional_string(const json& body, const char* key) {
  if (!body.contains(key) || body[key].is_null()) return {};
  if (!body[key].is_string()) throw HttpError{400, std::string("'") + key + "' must be a string"};
  return body[key].get<std::string>();
}

bool file_has_content(const std::filesystem::path& path) {
  std::error_code ec;
  return std::filesystem::exists(path, ec) && std::filesystem::file_size(path, ec) > 0;
}

std::ofstream open_append(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to '" + path.string() + "'");
  return out;
}

}  // namespace

std::string_view to_string(SessionState state) {
  switch (state) {
    case SessionState::collecting: return "collecting";
    case SessionState::testing: return "testing";
    case SessionState::submitted: return "submitted";
  }
  return "collecting";
}

CollectionService::CollectionService(const Catalog& catalog, ServiceConfig config)
    : catalog_(&catalog), config_(std::move(config)), id_state_(config_.seed) {
  config_.policy.validate();
  if (!(config_.decoy_ratio >= 0.0)) throw std::invalid_argument("decoy ratio must be nonnegative");
  if (file_has_content(config_.output.users)) {
    std::ifstream in(config_.output.users, std::ios::binary);
    for (const auto& u : parse_users(in, config_.output.users.string())) taken_ids_.insert(u.id);
  }
}

HttpResponse CollectionService::health() const { return respond(200, json{{"status", "ok"}}); }

HttpResponse CollectionService::config() const {
  return respond(200, json{{"minimums", minimums_json(config_.policy)},
                           {"precision_threshold", config_.policy.precision_threshold},
                           {"decoy_ratio", config_.decoy_ratio}});
}

HttpResponse CollectionService::search_features(std::string_view type, std::string_view query,
                                                std::string_view limit) const {
  return guarded([&] {
    const auto parsed = parse_attribute_type(type);
    if (!parsed) throw HttpError{400, "unknown attribute type '" + std::string(type) + "'"};
    json out = json::array();
    for (const auto& f : catalog_->search_features(*parsed, query, parse_limit(limit))) {
      out.push_back({{"feature_id", f.id}, {"label", f.label}, {"doc_freq", catalog_->document_frequency(f.id)}});
    }
    return respond(200, out);
  });
}

HttpResponse CollectionService::search_items(std::string_view query, std::string_view limit) const {
  return guarded([&] {
    json out = json::array();
    for (const auto& item : catalog_->search_items(query, parse_limit(limit))) {
      out.push_back({{"item_id", item.id}, {"title", item.title}, {"popularity", item.popularity}});
    }
    return respond(200, out);
  });
}

std::string CollectionService::next_session_id() {
  static constexpr char hex[] = "0123456789abcdef";
  while (true) {
    std::uint64_t value = splitmix64(id_state_);
    std::string id = "web-";
    for (int i = 0; i < 12; ++i, value >>= 4) id.push_back(hex[value & 0xF]);
    if (taken_ids_.insert(id).second) return id;
  }
}

std::shared_ptr<CollectionService::Slot> CollectionService::find(std::string_view id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw HttpError{404, "unknown session '" + std::string(id) + "'"};
  return it->second;
}

HttpResponse CollectionService::create_session(std::string_view body) {
  return guarded([&] {
    const auto doc = parse_body(body);
    const auto source_text = optional_string(doc, "source");
    const auto source = parse_source(source_text);
    if (!source) throw HttpError{400, "'source' must be volunteer or crowdsourced"};
    const auto gender_text = optional_string(doc, "gender");
    const auto gender = parse_gender(gender_text);
    if (!gender) throw HttpError{400, "'gender' must be male, female or unspecified"};

    auto slot = std::make_shared<Slot>();
    {
      std::lock_guard lock(sessions_mutex_);
      slot->session.id = next_session_id();
      slot->session.sheet_seed = splitmix64(id_state_);
    }
    Session& s = slot->session;
    s.user.id = s.id;
    s.user.source = *source;
    s.user.gender = *gender;
    s.user.age_range = optional_string(doc, "age_range");
    s.user.country = optional_string(doc, "country");
    if (s.user.age_range == "unspecified") s.user.age_range.clear();
    if (s.user.country == "unspecified") s.user.country.clear();

    json out = session_json(s, config_.policy);
    {
      std::lock_guard lock(sessions_mutex_);
      sessions_.emplace(s.id, slot);
    }
    return respond(201, out);
  });
}

HttpResponse CollectionService::get_session(std::string_view id) const {
  return guarded([&] {
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    return respond(200, session_json(slot->session, config_.policy));
  });
}

HttpResponse CollectionService::put_favourites(std::string_view id, std::string_view body) {
  return guarded([&] {
    auto slot = find(id);
    const auto doc = parse_body(body);
    if (!doc.contains("favourites") || !doc["favourites"].is_array()) {
      throw HttpError{400, "'favourites' must be an array"};
    }

    std::lock_guard lock(slot->mutex);
    Session& s = slot->session;
    if (s.state != SessionState::collecting) {
      throw HttpError{409, "favourites can only change while collecting (state is " +
                               std::string(to_string(s.state)) + ")"};
    }

    std::vector<Favourite> favourites;
    for (const auto& entry : doc["favourites"]) {
      if (!entry.is_object()) throw HttpError{400, "favourite entries must be objects"};
      const auto kind = parse_target_kind(optional_string(entry, "kind"));
      if (!kind) throw HttpError{400, "favourite 'kind' must be item or feature"};
      Favourite f;
      f.user_id = s.id;
      f.kind = *kind;
      f.target_id = optional_string(entry, "target_id");
      if (*kind == TargetKind::item) {
        if (!catalog_->find_item(f.target_id)) throw HttpError{422, "unknown item '" + f.target_id + "'"};
      } else {
        const Feature* feature = catalog_->find_feature(f.target_id);
        if (!feature) throw HttpError{422, "unknown feature '" + f.target_id + "'"};
        f.attribute_type = feature->type;
      }
      f.resolved = true;
      favourites.push_back(std::move(f));
    }
    std::sort(favourites.begin(), favourites.end(), [](const Favourite& a, const Favourite& b) {
      return std::tie(a.kind, a.target_id) < std::tie(b.kind, b.target_id);
    });
    favourites.erase(std::unique(favourites.begin(), favourites.end(),
                                 [](const Favourite& a, const Favourite& b) {
                                   return a.kind == b.kind && a.target_id == b.target_id;
                                 }),
                     favourites.end());
    s.favourites = std::move(favourites);
    return respond(200, session_json(s, config_.policy));
  });
}

std::vector<SheetEntry> CollectionService::make_sheet(const Session& s) const {
  std::uint64_t state = s.sheet_seed;
  std::vector<SheetEntry> sheet;

  auto add_kind = [&](std::optional<AttributeType> type) {
    std::vector<SheetEntry> truths;
    std::set<std::string> true_ids;
    for (const auto& f : s.favourites) {
      const bool matches = type ? (f.kind == TargetKind::feature && f.attribute_type == type)
                                : f.kind == TargetKind::item;
      if (!matches) continue;
      SheetEntry e{f.kind, f.target_id, {}, f.attribute_type, true};
      e.label = type ? catalog_->find_feature(f.target_id)->label : catalog_->find_item(f.target_id)->title;
      truths.push_back(std::move(e));
      true_ids.insert(f.target_id);
    }
    const auto needed = static_cast<std::size_t>(std::ceil(static_cast<double>(truths.size()) * config_.decoy_ratio));
    const std::size_t pool_size = true_ids.size() + needed * std::max<std::size_t>(1, config_.decoy_pool_factor);

    std::vector<SheetEntry> pool;
    if (needed > 0) {
      if (type) {
        for (const auto& f : catalog_->popular_features(*type, pool_size)) {
          if (!true_ids.count(f.id)) pool.push_back({TargetKind::feature, f.id, f.label, f.type, false});
        }
      } else {
        for (const auto& item : catalog_->popular_items(pool_size)) {
          if (!true_ids.count(item.id)) pool.push_back({TargetKind::item, item.id, item.title, std::nullopt, false});
        }
      }
    }
    if (pool.size() < needed) {
      throw HttpError{422, "catalog has too few " + (type ? std::string(to_string(*type)) : std::string("item")) +
                               " elements for a consistency sheet"};
    }
    seeded_shuffle(pool, state);
    pool.resize(needed);
    sheet.insert(sheet.end(), truths.begin(), truths.end());
    sheet.insert(sheet.end(), pool.begin(), pool.end());
  };

  add_kind(std::nullopt);
  add_kind(AttributeType::genre);
  add_kind(AttributeType::actor);
  seeded_shuffle(sheet, state);
  return sheet;
}

HttpResponse CollectionService::begin_test(std::string_view id) {
  return guarded([&] {
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    Session& s = slot->session;
    if (s.state == SessionState::submitted) throw HttpError{409, "session already submitted"};
    if (s.state == SessionState::collecting) {
      if (!minimum_favourites_met(s.id, session_dataset(s), config_.policy)) {
        throw HttpError{422, "favourite minimums not met"};
      }
      s.sheet = make_sheet(s);
      s.state = SessionState::testing;
    }
    return respond(200, json{{"session_id", s.id},
                             {"state", to_string(s.state)},
                             {"seed", s.sheet_seed},
                             {"sheet", sheet_json(s.sheet)}});
  });
}

HttpResponse CollectionService::submit_test(std::string_view id, std::string_view body) {
  return guarded([&] {
    auto slot = find(id);
    const auto doc = parse_body(body);
    if (!doc.contains("selections") || !doc["selections"].is_array()) {
      throw HttpError{400, "'selections' must be an array"};
    }

    std::lock_guard lock(slot->mutex);
    Session& s = slot->session;
    if (s.state != SessionState::testing) {
      throw HttpError{409, "consistency test is not in progress (state is " + std::string(to_string(s.state)) + ")"};
    }

    std::set<std::pair<TargetKind, std::string>> selected;
    for (const auto& entry : doc["selections"]) {
      if (!entry.is_object()) throw HttpError{400, "selection entries must be objects"};
      const auto kind = parse_target_kind(optional_string(entry, "kind"));
      if (!kind) throw HttpError{400, "selection 'kind' must be item or feature"};
      const auto target = optional_string(entry, "target_id");
      const bool on_sheet = std::any_of(s.sheet.begin(), s.sheet.end(), [&](const SheetEntry& e) {
        return e.kind == *kind && e.target_id == target;
      });
      if (!on_sheet) throw HttpError{422, "selection '" + target + "' is not on the consistency sheet"};
      selected.emplace(*kind, target);
    }

    std::vector<ConsistencyTrial> trials;
    for (const auto& e : s.sheet) {
      trials.push_back({s.id, e.kind, e.target_id, e.is_true_favourite, selected.count({e.kind, e.target_id}) > 0});
    }
    Session updated = s;
    updated.trials = std::move(trials);
    const Dataset data = session_dataset(updated);
    updated.precision = consistency_precision(updated.id, data);
    updated.reliable = is_reliable(updated.id, data, config_.policy);
    updated.state = SessionState::submitted;

    try {
      persist(updated);
    } catch (const std::exception& e) {
      throw HttpError{500, std::string("could not persist session: ") + e.what()};
    }
    s = std::move(updated);
    return respond(200, json{{"session_id", s.id},
                             {"state", to_string(s.state)},
                             {"precision", s.precision ? json(*s.precision) : json(nullptr)},
                             {"reliable", s.reliable}});
  });
}

void CollectionService::persist(const Session& s) {
  std::lock_guard lock(files_mutex_);
  const auto& out = config_.output;
  {
    const bool header = !file_has_content(out.users);
    auto file = open_append(out.users);
    write_users(file, std::span<const User>(&s.user, 1), header);
  }
  {
    const bool header = !file_has_content(out.favourites);
    auto file = open_append(out.favourites);
    write_favourites(file, s.favourites, header);
  }
  if (!out.trials.empty()) {
    const bool header = !file_has_content(out.trials);
    auto file = open_append(out.trials);
    write_trials(file, s.trials, header);
  }
}

}  // namespace profbench
