#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spot/error.hpp"

namespace spot {

inline constexpr std::chrono::milliseconds kDefaultHttpTimeout{10'000};

class TransportError : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "TransportError"; }
};

class TranslatorTimeout : public Error {
 public:
  using Error::Error;
  std::string_view code() const noexcept override { return "TranslatorTimeout"; }
};

/// Plain-http endpoint, e.g. http://localhost:9000/translate.
struct HttpEndpoint {
  std::string host;
  int port = 80;
  std::string path = "/";

  /// Throws std::invalid_argument for anything but http://host[:port][/path].
  static HttpEndpoint parse(std::string_view url);
  std::string url() const;
};

/// One blocking JSON POST, no retry. Non-2xx statuses and bodies that are not
/// JSON raise TransportError; connect or read timeouts raise TranslatorTimeout.
nlohmann::json post_json(const HttpEndpoint& endpoint, const nlohmann::json& body,
                         std::chrono::milliseconds timeout = kDefaultHttpTimeout);

}  // namespace spot
