#include <stdexcept>

#include "spot/engine/output.hpp"
#include "spot/ingest/snapshot.hpp"

namespace spot {

using nlohmann::ordered_json;

nlohmann::ordered_json spots_to_geojson(std::span<const SpotMatch> matches, const FeatureStore& store,
                                        const ImrQuery& query) {
  ordered_json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = ordered_json::array();
  auto& out = fc["features"];

  for (std::size_t s = 0; s < matches.size(); ++s) {
    const auto& m = matches[s];
    double lat = 0.0;
    double lon = 0.0;
    for (const auto& [node_id, uid] : m.assignment) {
      const Feature* found = store.find(uid);
      if (!found) throw std::logic_error("spot references unknown feature " + uid.str());
      const Feature& f = *found;
      const ImrNode* node = query.node(node_id);

      ordered_json feat;
      feat["type"] = "Feature";
      feat["id"] = f.uid.str();
      feat["geometry"] = geometry_to_geojson(f.geometry);
      ordered_json props;
      props["spot_index"] = s;
      props["node_id"] = node_id;
      props["node_name"] = node ? node->name : std::string();
      props["tags"] = ordered_json::object();
      for (const auto& [k, v] : f.tags) props["tags"][k] = v;
      feat["properties"] = std::move(props);
      out.push_back(std::move(feat));

      lat += f.centroid.lat;
      lon += f.centroid.lon;
    }
    const auto count = static_cast<double>(std::max<std::size_t>(1, m.assignment.size()));
    ordered_json center;
    center["type"] = "Feature";
    center["geometry"] = geometry_to_geojson(PointGeometry{{lat / count, lon / count}});
    ordered_json props;
    props["spot_index"] = s;
    props["span_m"] = m.span_m;
    props["role"] = "spot_center";
    center["properties"] = std::move(props);
    out.push_back(std::move(center));
  }
  return fc;
}

}  // namespace spot
