#include "spot/server/http_server.hpp"

#include <stdexcept>

#include <httplib.h>

namespace spot {

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace

HttpServer::HttpServer(const Service& service, HttpServerOptions options)
    : service_(service), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.request_timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.request_timeout - secs);
  s.set_read_timeout(secs.count(), usecs.count());
  s.set_write_timeout(secs.count(), usecs.count());

  const std::string origin = options_.cors_origin;
  s.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  s.Post("/api/search", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.search(req.body));
  });
  s.Post("/api/translate", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.translate(req.body));
  });
  s.Get("/api/areas", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.areas(req.get_param_value("q")));
  });
  s.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) { reply(res, service_.health()); });

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string code = res.status == 404 ? "NotFound" : "HttpError";
    res.set_content(R"({"code":")" + code + R"(","message":"HTTP )" + std::to_string(res.status) + R"("})",
                    "application/json");
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    res.status = 500;
    res.set_content(R"({"code":"Internal","message":"unhandled exception"})", "application/json");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (options_.port == 0) {
    const int port = server_->bind_to_any_port(options_.host);
    if (port < 0) throw std::runtime_error("cannot bind " + options_.host);
    return port;
  }
  if (!server_->bind_to_port(options_.host, options_.port)) {
    throw std::runtime_error("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  }
  return options_.port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

}  // namespace spot
