#pragma once

#include <memory>
#include <string>

#include "profbench/service.hpp"

namespace profbench {

/// HTTP/JSON front end for CollectionService with CORS headers for the UI.
class HttpServer {
 public:
  explicit HttpServer(CollectionService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and serves until stop(); blocks. Returns false when binding fails.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port; returns it, or -1 on failure. Use with run().
  int bind_any_port(const std::string& host);
  bool run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace profbench
