#include "spot/nlq/translator.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <httplib.h>

#include "spot/imr/codec.hpp"
#include "spot/imr/validate.hpp"

namespace spot {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "translator output is not a valid IMR";
  for (const auto& e : errors) out += "; " + e;
  return out;
}

}  // namespace

HttpEndpoint HttpEndpoint::parse(std::string_view url) {
  constexpr std::string_view scheme = "http://";
  if (!url.starts_with(scheme)) throw std::invalid_argument("only http:// endpoints are supported: " + std::string(url));
  url.remove_prefix(scheme.size());
  HttpEndpoint ep;
  const auto slash = url.find('/');
  std::string_view authority = url.substr(0, slash);
  ep.path = slash == std::string_view::npos ? "/" : std::string(url.substr(slash));
  if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    const auto port_text = authority.substr(colon + 1);
    int port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 1 || port > 65535) {
      throw std::invalid_argument("bad port in endpoint: " + std::string(port_text));
    }
    ep.port = port;
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) throw std::invalid_argument("endpoint has no host");
  ep.host = std::string(authority);
  return ep;
}

std::string HttpEndpoint::url() const {
  return "http://" + host + ":" + std::to_string(port) + path;
}

nlohmann::json post_json(const HttpEndpoint& endpoint, const nlohmann::json& body,
                         std::chrono::milliseconds timeout) {
  httplib::Client client(endpoint.host, endpoint.port);
  const auto sec = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout - sec);
  client.set_connection_timeout(sec.count(), usec.count());
  client.set_read_timeout(sec.count(), usec.count());
  client.set_write_timeout(sec.count(), usec.count());

  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(endpoint.path, body.dump(), "application/json");
  if (!res) {
    const auto err = res.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && std::chrono::steady_clock::now() - started >= timeout);
    if (timed_out) throw TranslatorTimeout("request to " + endpoint.url() + " timed out");
    throw TransportError("request to " + endpoint.url() + " failed: " + httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError(endpoint.url() + " answered HTTP " + std::to_string(res->status));
  }
  auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded()) throw TransportError(endpoint.url() + " answered with a body that is not JSON");
  return parsed;
}

FormatInvalid::FormatInvalid(std::vector<std::string> errors)
    : Error(join_errors(errors)), errors_(std::move(errors)) {}

ImrQuery accept_model_output(const nlohmann::json& document) {
  auto v = validate(document);
  if (!v.valid()) throw FormatInvalid(std::move(v.errors));
  return std::move(*v.query);
}

ImrQuery BaselineTranslator::translate(std::string_view sentence) const {
  return parse_baseline(sentence, config_);
}

ImrQuery HttpTranslator::translate(std::string_view sentence) const {
  const nlohmann::json request = {{"sentence", std::string(sentence)}};
  return accept_model_output(post_json(endpoint_, request, timeout_));
}

void MockTranslator::add(std::string sentence, nlohmann::json imr) {
  table_.insert_or_assign(std::move(sentence), std::move(imr));
}

MockTranslator MockTranslator::parse(std::istream& in) {
  MockTranslator mock;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("sentence") || !rec["sentence"].is_string() ||
        !rec.contains("imr")) {
      throw std::runtime_error("mock fixture line " + std::to_string(line_no) + ": expected {\"sentence\",\"imr\"}");
    }
    mock.add(rec["sentence"].get<std::string>(), rec["imr"]);
  }
  return mock;
}

MockTranslator MockTranslator::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mock fixture " + path);
  return parse(in);
}

ImrQuery MockTranslator::translate(std::string_view sentence) const {
  auto it = table_.find(sentence);
  if (it == table_.end()) throw TransportError("mock has no entry for '" + std::string(sentence) + "'");
  return accept_model_output(it->second);
}

}  // namespace spot
