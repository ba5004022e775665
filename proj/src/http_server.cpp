#include "rzg/http_server.hpp"

#include <fstream>

#include <httplib.h>

namespace rzg::service {

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const ServiceError& e) {
    send_json(res, e.status(), e.body());
  } catch (const std::bad_alloc&) {
    send_json(res, 503, json{{"code", "resource_exhausted"}, {"message", "out of memory"}});
  } catch (const std::exception& e) {
    send_json(res, 500, json{{"code", "internal"}, {"message", e.what()}});
  }
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body.empty() ? "{}" : req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(400, "bad_request", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

HttpServer::HttpServer(ServerOptions options)
    : options_(std::move(options)), store_(options_.config), server_(std::make_unique<httplib::Server>()) {
  if (options_.snapshot_path) {
    std::ifstream in(*options_.snapshot_path);
    if (in) store_.restore(json::parse(in));
  }
  install_routes();
}

HttpServer::~HttpServer() = default;

void HttpServer::install_routes() {
  auto& s = *server_;
  s.Post("/games", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 201, store_.create(parse_body(req))); });
  });
  s.Get(R"(/games/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, store_.get(req.matches[1])); });
  });
  s.Post(R"(/games/([0-9a-f]+)/moves)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, store_.post_move(req.matches[1], parse_body(req))); });
  });
  s.Get(R"(/games/([0-9a-f]+)/analysis)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, store_.analysis(req.matches[1])); });
  });
  s.Delete(R"(/games/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      store_.remove(req.matches[1]);
      res.status = 204;
    });
  });
  if (options_.static_dir) s.set_mount_point("/", *options_.static_dir);
}

int HttpServer::bind() {
  if (options_.port == 0) return server_->bind_to_any_port(options_.host);
  if (!server_->bind_to_port(options_.host, options_.port)) return -1;
  return options_.port;
}

void HttpServer::listen() {
  server_->listen_after_bind();
  save_snapshot();
}

void HttpServer::stop() { server_->stop(); }

void HttpServer::save_snapshot() const {
  if (!options_.snapshot_path) return;
  std::ofstream out(*options_.snapshot_path);
  out << store_.snapshot().dump(2) << '\n';
}

}  // namespace rzg::service
