#pragma once

#include "arbiter/diagnostics.hpp"
#include "arbiter/registry.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace arbiter {

/// HTTP status and JSON body of one request.
struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Endpoint handlers, usable without a socket:
///
///   GET  /applications
///   PUT  /applications/{id}            {"name"?, "mode"?, "sbp" | "grg"}
///   GET  /applications/{id}/metadata
///   POST /applications/{id}/query      {"facts"?, "bindings"?, "abduce_for"?}
///
/// Errors carry {"error": {code, message}, "diagnostics": [...]}: 404 for an
/// unknown application, 400 for malformed JSON, 422 for an invalid context or
/// rejected sources, 500 for internal invariant failures.
class Service {
 public:
  explicit Service(Registry& registry) : registry_(registry) {}

  Response list_applications() const;
  Response metadata(const std::string& app_id) const;
  Response query(const std::string& app_id, std::string_view body) const;
  Response put_application(const std::string& app_id, std::string_view body);

  /// Routes the endpoints above on `server`.
  void mount(httplib::Server& server);

 private:
  Registry& registry_;
};

/// Decision for one application, shared by the HTTP query handler and the CLI.
nlohmann::json run_query(const ApplicationRecord& app, const nlohmann::json& request);

int status_for(Code code);

/// Owns an httplib server bound to a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port.
  /// Throws IoError.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  void run();
  void stop();

 private:
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace arbiter
