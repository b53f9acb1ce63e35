#include "spot/geo/area.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

namespace spot {

std::vector<AreaGeometry> read_area_file(std::istream& in) {
  std::vector<AreaGeometry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "area file line " + std::to_string(line_no) + ": ";
    AreaGeometry area;
    try {
      const auto j = nlohmann::json::parse(line);
      area.name = j.at("name").get<std::string>();
      for (const auto& p : j.at("polygon")) {
        area.polygon.push_back({p.at(1).get<double>(), p.at(0).get<double>()});
      }
    } catch (const std::exception& e) {
      throw AreaFileError(where + e.what());
    }
    if (area.name.empty()) throw AreaFileError(where + "empty name");
    if (area.polygon.size() < 4 || area.polygon.front() != area.polygon.back()) {
      throw AreaFileError(where + "polygon must be a closed ring of at least 4 points");
    }
    if (!std::all_of(area.polygon.begin(), area.polygon.end(), [](GeoPoint p) { return p.valid(); })) {
      throw AreaFileError(where + "coordinate out of range");
    }
    area.bbox = BBox::of(area.polygon);
    out.push_back(std::move(area));
  }
  return out;
}

std::vector<AreaGeometry> read_area_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AreaFileError("cannot open area file " + path);
  return read_area_file(in);
}

AreaResolver::AreaResolver(std::span<const Feature> snapshot, std::vector<AreaGeometry> area_file)
    : explicit_(std::move(area_file)) {
  for (const auto& f : snapshot) {
    const auto* poly = std::get_if<PolygonGeometry>(&f.geometry);
    const auto* name = f.tag("name");
    if (!poly || !name || name->empty()) continue;
    const auto* boundary = f.tag("boundary");
    const bool admin = boundary && *boundary == "administrative";
    if (!admin && !f.tag("place")) continue;
    derived_.push_back({*name, poly->ring, BBox::of(poly->ring)});
  }
}

const AreaGeometry* AreaResolver::pick(const std::vector<AreaGeometry>& areas, std::string_view name) {
  const std::string wanted = ascii_lower(name);
  const AreaGeometry* best = nullptr;
  for (const auto& a : areas) {
    if (ascii_lower(a.name) != wanted) continue;
    if (!best || a.bbox.area_deg2() > best->bbox.area_deg2()) best = &a;
  }
  return best;
}

const AreaGeometry& AreaResolver::resolve(std::string_view name) const {
  if (const auto* a = pick(explicit_, name)) return *a;
  if (const auto* a = pick(derived_, name)) return *a;
  throw AreaNotFound(std::string(name));
}

std::vector<std::string> AreaResolver::names() const {
  std::set<std::string> seen;
  std::vector<std::pair<std::string, std::string>> keyed;
  for (const auto* list : {&explicit_, &derived_}) {
    for (const auto& a : *list) {
      auto lower = ascii_lower(a.name);
      if (seen.insert(lower).second) keyed.emplace_back(std::move(lower), a.name);
    }
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  out.reserve(keyed.size());
  for (auto& [lower, display] : keyed) out.push_back(std::move(display));
  return out;
}

std::vector<std::string> AreaResolver::suggest(std::string_view prefix, std::size_t limit) const {
  const std::string p = ascii_lower(prefix);
  std::vector<std::string> out;
  for (auto& n : names()) {
    if (out.size() >= limit) break;
    if (ascii_lower(n).starts_with(p)) out.push_back(std::move(n));
  }
  return out;
}

}  // namespace spot
