#include "profbench/http_server.hpp"

#include <httplib.h>

namespace profbench {

struct HttpServer::Impl {
  explicit Impl(CollectionService& s) : service(s) {}

  CollectionService& service;
  httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace

HttpServer::HttpServer(CollectionService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  auto& svc = impl_->service;
  const std::string origin = svc.settings().cors_origin;

  server.set_default_headers({
      {"Access-Control-Allow-Origin", origin},
      {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/health", [&svc](const httplib::Request&, httplib::Response& res) { reply(res, svc.health()); });
  server.Get("/api/config", [&svc](const httplib::Request&, httplib::Response& res) { reply(res, svc.config()); });
  server.Get("/api/features", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.search_features(req.get_param_value("type"), req.get_param_value("q"),
                                   req.get_param_value("limit")));
  });
  server.Get("/api/items", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.search_items(req.get_param_value("q"), req.get_param_value("limit")));
  });
  server.Post("/api/sessions", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.create_session(req.body));
  });
  server.Get(R"(/api/sessions/([^/]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.get_session(req.matches[1].str()));
  });
  server.Put(R"(/api/sessions/([^/]+)/favourites)", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.put_favourites(req.matches[1].str(), req.body));
  });
  server.Post(R"(/api/sessions/([^/]+)/begin-test)", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.begin_test(req.matches[1].str()));
  });
  server.Post(R"(/api/sessions/([^/]+)/submit-test)", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.submit_test(req.matches[1].str(), req.body));
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content("{\"error\":\"not found\",\"status\":" + std::to_string(res.status) + "}", "application/json");
    }
  });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace profbench
