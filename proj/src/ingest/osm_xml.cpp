#include "spot/ingest/osm_xml.hpp"

#include <expat.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <exception>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>

namespace spot {

OsmXmlError::OsmXmlError(const std::string& what, std::int64_t byte_offset)
    : Error(what + " at byte " + std::to_string(byte_offset)), byte_offset_(byte_offset) {}

namespace {

const char* find_attr(const XML_Char** attrs, std::string_view name) {
  for (; attrs && *attrs; attrs += 2) {
    if (name == attrs[0]) return attrs[1];
  }
  return nullptr;
}

std::optional<std::int64_t> parse_int(const char* text) {
  if (!text) return std::nullopt;
  std::int64_t value = 0;
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

double parse_coord(const char* text) {
  if (!text) return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc{} || ptr != end) return std::numeric_limits<double>::quiet_NaN();
  return value;
}

class Handler {
 public:
  Handler(XML_Parser parser, const std::function<void(RawElement&&)>& sink)
      : parser_(parser), sink_(sink) {}

  void start(const XML_Char* name, const XML_Char** attrs) {
    ++depth_;
    if (failed()) return;
    const std::string_view tag(name);
    if (depth_ == 2) {
      if (tag == "node") {
        RawNode node;
        node.id = require_id(attrs);
        node.location = {parse_coord(find_attr(attrs, "lat")), parse_coord(find_attr(attrs, "lon"))};
        current_ = std::move(node);
      } else if (tag == "way") {
        current_ = RawWay{require_id(attrs), {}, {}};
      } else if (tag == "relation") {
        current_ = RawRelation{require_id(attrs), {}, {}};
      }
      return;
    }
    if (depth_ != 3 || !current_) return;
    if (tag == "tag") {
      const char* k = find_attr(attrs, "k");
      const char* v = find_attr(attrs, "v");
      if (!k || !v) return fail("<tag> without k or v");
      std::visit([&](auto& e) { e.tags.insert_or_assign(k, v); }, *current_);
    } else if (tag == "nd") {
      if (auto* way = std::get_if<RawWay>(&*current_)) {
        auto ref = parse_int(find_attr(attrs, "ref"));
        if (!ref) return fail("<nd> with missing or bad ref");
        way->refs.push_back(*ref);
      }
    } else if (tag == "member") {
      if (auto* rel = std::get_if<RawRelation>(&*current_)) {
        const char* type = find_attr(attrs, "type");
        auto kind = type ? parse_element_kind(type) : std::nullopt;
        auto ref = parse_int(find_attr(attrs, "ref"));
        if (!kind || !ref) return fail("<member> with missing or bad type/ref");
        const char* role = find_attr(attrs, "role");
        rel->members.push_back({*kind, *ref, role ? role : ""});
      }
    }
  }

  void end() {
    if (depth_ == 2 && current_ && !failed()) {
      // Exceptions must not unwind through expat's C frames.
      try {
        sink_(std::move(*current_));
      } catch (...) {
        pending_ = std::current_exception();
        fail("element sink failed");
      }
      current_.reset();
    }
    --depth_;
  }

  void rethrow_pending() const {
    if (pending_) std::rethrow_exception(pending_);
  }

  bool failed() const { return error_.has_value(); }
  const std::string& error() const { return *error_; }
  std::int64_t error_offset() const { return error_offset_; }

 private:
  std::int64_t require_id(const XML_Char** attrs) {
    auto id = parse_int(find_attr(attrs, "id"));
    if (!id) {
      fail("element without a valid id");
      return 0;
    }
    return *id;
  }

  void fail(const char* what) {
    if (error_) return;
    error_ = what;
    error_offset_ = XML_GetCurrentByteIndex(parser_);
    XML_StopParser(parser_, XML_FALSE);
  }

  XML_Parser parser_;
  const std::function<void(RawElement&&)>& sink_;
  int depth_ = 0;
  std::optional<RawElement> current_;
  std::optional<std::string> error_;
  std::int64_t error_offset_ = 0;
  std::exception_ptr pending_;
};

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

void parse_osm_xml(std::istream& in, const std::function<void(RawElement&&)>& sink) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("cannot allocate XML parser");
  Handler handler(parser.get(), sink);
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(
      parser.get(),
      [](void* data, const XML_Char* name, const XML_Char** attrs) {
        static_cast<Handler*>(data)->start(name, attrs);
      },
      [](void* data, const XML_Char*) { static_cast<Handler*>(data)->end(); });

  constexpr std::size_t kChunk = 1 << 16;
  std::vector<char> buffer(kChunk);
  bool done = false;
  while (!done) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = static_cast<int>(in.gcount());
    done = got == 0 || in.eof();
    if (XML_Parse(parser.get(), buffer.data(), got, done ? XML_TRUE : XML_FALSE) == XML_STATUS_ERROR) {
      handler.rethrow_pending();
      if (handler.failed()) throw OsmXmlError(handler.error(), handler.error_offset());
      throw OsmXmlError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                        XML_GetCurrentByteIndex(parser.get()));
    }
  }
}

std::vector<RawElement> parse_osm_xml(std::istream& in) {
  std::vector<RawElement> out;
  parse_osm_xml(in, [&](RawElement&& e) { out.push_back(std::move(e)); });
  return out;
}

}  // namespace spot
