#include "arbiter/service.hpp"

#include "arbiter/codec.hpp"
#include "arbiter/decision.hpp"
#include "arbiter/diagnostics.hpp"
#include "arbiter/rule_lang.hpp"

#include <httplib.h>

namespace arbiter {

using codec::json;

namespace {

Response failure(const Error& e) { return Response{status_for(e.code()), codec::error_body(e)}; }

Response unknown_app(const std::string& app_id) {
  return failure(Error(Diagnostic{Severity::Error, Code::UnknownApplication,
                                  "no application '" + app_id + "'", 0, 0, app_id, {}}));
}

json parse_body(std::string_view body) {
  try {
    return json::parse(body.empty() ? std::string_view("{}") : body);
  } catch (const json::parse_error& e) {
    throw Error(Code::InvalidRequest, std::string("malformed JSON: ") + e.what());
  }
}

json summary(const ApplicationRecord& rec) {
  json j{{"app_id", rec.app_id}, {"name", rec.name}, {"revision", rec.revision}, {"created_at", rec.created_at}};
  j["mode"] = rec.mode ? json(std::string(to_string(*rec.mode))) : json(nullptr);
  return j;
}

}  // namespace

int status_for(Code code) {
  switch (code) {
    case Code::UnknownApplication: return 404;
    case Code::InvalidRequest: return 400;
    case Code::InconsistentInputs:
    case Code::UnboundVariable:
    case Code::IoError: return 500;
    default: return 422;
  }
}

json run_query(const ApplicationRecord& app, const json& request) {
  const auto req = codec::parse_query_request(request, app.metadata);
  const QueryContext ctx = codec::to_context(req);
  const Decision decision = decide(app.theory, ctx);
  json body;
  if (req.abduce_for) {
    const auto sets = abduce(app.theory, ctx, *req.abduce_for);
    body = codec::query_response(decision, &sets);
  } else {
    body = codec::query_response(decision);
  }
  body["app_id"] = app.app_id;
  body["revision"] = app.revision;
  return body;
}

Response Service::list_applications() const {
  json apps = json::array();
  for (const auto& rec : registry_.list()) apps.push_back(summary(*rec));
  return Response{200, json{{"applications", apps}}};
}

Response Service::metadata(const std::string& app_id) const {
  const auto rec = registry_.get(app_id);
  if (!rec) return unknown_app(app_id);
  return Response{200, codec::to_json(rec->metadata)};
}

Response Service::query(const std::string& app_id, std::string_view body) const {
  const auto rec = registry_.get(app_id);
  if (!rec) return unknown_app(app_id);
  try {
    return Response{200, run_query(*rec, parse_body(body))};
  } catch (const Error& e) {
    return failure(e);
  }
}

Response Service::put_application(const std::string& app_id, std::string_view body) {
  try {
    const json j = parse_body(body);
    if (!j.is_object()) throw Error(Code::InvalidRequest, "registration body must be a JSON object");
    RegistrationRequest req;
    req.name = j.value("name", "");
    if (j.contains("mode")) {
      const auto mode = parse_compile_mode(j["mode"].get<std::string>());
      if (!mode) throw Error(Code::InvalidRequest, "mode must be 'basic' or 'advanced'");
      req.mode = *mode;
    }
    if (j.contains("sbp")) req.sbp = j["sbp"].get<std::string>();
    if (j.contains("grg")) req.grg = j["grg"].get<std::string>();

    const bool existed = registry_.get(app_id) != nullptr;
    const auto rec = registry_.register_application(app_id, req);
    json out = summary(*rec);
    out["metadata"] = codec::to_json(rec->metadata);
    out["diagnostics"] = codec::to_json(validate_theory(rec->theory));
    return Response{existed ? 200 : 201, out};
  } catch (const Error& e) {
    return failure(e);
  } catch (const json::exception& e) {
    return failure(Error(Code::InvalidRequest, std::string("bad registration body: ") + e.what()));
  }
}

void Service::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  // Handlers turn escaped exceptions into 500 payloads rather than dropping
  // the connection.
  auto guarded = [send](httplib::Response& res, auto&& fn) {
    try {
      send(res, fn());
    } catch (const Error& e) {
      send(res, Response{500, codec::error_body(e)});
    } catch (const std::exception& e) {
      json body{{"error", {{"code", "Internal"}, {"message", e.what()}}}, {"diagnostics", json::array()}};
      send(res, Response{500, body});
    }
  };

  server.Get("/applications", [this, guarded](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return list_applications(); });
  });
  server.Put(R"(/applications/([^/]+))", [this, guarded](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return put_application(req.matches[1], req.body); });
  });
  server.Get(R"(/applications/([^/]+)/metadata)",
             [this, guarded](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return metadata(req.matches[1]); });
  });
  server.Post(R"(/applications/([^/]+)/query)",
              [this, guarded](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return query(req.matches[1], req.body); });
  });
}

HttpServer::HttpServer(Service& service) : server_(std::make_unique<httplib::Server>()) { service.mount(*server_); }

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(Code::IoError, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

}  // namespace arbiter
