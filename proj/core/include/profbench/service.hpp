#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "profbench/catalog.hpp"
#include "profbench/interactions.hpp"

namespace profbench {

struct ServiceConfig {
  ReliabilityPolicy policy;
  /// Files the submitted sessions are appended to. Created with a header
  /// when missing.
  InteractionPaths output;
  /// Decoys per true favourite, per kind.
  double decoy_ratio = 1.0;
  /// Decoys are drawn at random from this many times the needed count of
  /// most popular elements.
  std::size_t decoy_pool_factor = 4;
  std::uint64_t seed = 0x5eed;
  std::string cors_origin = "*";
};

struct HttpResponse {
  int status = 200;
  /// JSON document.
  std::string body;
};

enum class SessionState { collecting, testing, submitted };

std::string_view to_string(SessionState state);

/// Element shown on a consistency sheet.
struct SheetEntry {
  TargetKind kind = TargetKind::item;
  std::string target_id;
  std::string label;
  /// Feature entries only.
  std::optional<AttributeType> attribute_type;
  bool is_true_favourite = false;
};

struct Session {
  std::string id;
  User user;
  std::vector<Favourite> favourites;
  std::uint64_t sheet_seed = 0;
  std::vector<SheetEntry> sheet;
  std::vector<ConsistencyTrial> trials;
  SessionState state = SessionState::collecting;
  std::optional<double> precision;
  bool reliable = false;
};

/// Request handling for the data-collection UI. Handlers take and return
/// JSON bodies so they can be exercised without a socket; http_server.hpp
/// binds them to routes.
class CollectionService {
 public:
  CollectionService(const Catalog& catalog, ServiceConfig config);

  HttpResponse health() const;
  HttpResponse config() const;
  HttpResponse search_features(std::string_view type, std::string_view query,
                               std::string_view limit) const;
  HttpResponse search_items(std::string_view query, std::string_view limit) const;

  HttpResponse create_session(std::string_view body);
  HttpResponse get_session(std::string_view id) const;
  HttpResponse put_favourites(std::string_view id, std::string_view body);
  HttpResponse begin_test(std::string_view id);
  HttpResponse submit_test(std::string_view id, std::string_view body);

  const ServiceConfig& settings() const noexcept { return config_; }
  const Catalog& catalog() const noexcept { return *catalog_; }

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> find(std::string_view id) const;
  std::vector<SheetEntry> make_sheet(const Session& session) const;
  void persist(const Session& session);
  std::string next_session_id();

  const Catalog* catalog_;
  ServiceConfig config_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>, std::less<>> sessions_;
  std::set<std::string> taken_ids_;
  std::uint64_t id_state_;

  std::mutex files_mutex_;
};

}  // namespace profbench
