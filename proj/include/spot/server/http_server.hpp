#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "spot/server/service.hpp"

namespace httplib {
class Server;
}

namespace spot {

struct HttpServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string cors_origin = "*";
  std::chrono::milliseconds request_timeout{10'000};
};

/// httplib front end for a Service: POST /api/search, POST /api/translate,
/// GET /api/areas?q=, GET /api/health, CORS preflight on every path.
class HttpServer {
 public:
  HttpServer(const Service& service, HttpServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns the bound port; throws std::runtime_error when binding fails.
  int bind();
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  const Service& service_;
  HttpServerOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace spot
