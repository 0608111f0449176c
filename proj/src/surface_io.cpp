#include "ssl/surface_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ssl {

using nlohmann::ordered_json;

std::string surface_to_json(const MetricSurface& s) {
  ordered_json doc;
  ordered_json faces = ordered_json::array();
  for (const Face& f : s.faces()) faces.push_back({{"sides", {f.sides[0], f.sides[1], f.sides[2]}}});
  ordered_json pairs = ordered_json::array();
  for (const Pairing& p : s.pairings()) {
    ordered_json entry = {{p.a.face, p.a.side}, {p.b.face, p.b.side}};
    if (p.flipped) entry.push_back(true);
    pairs.push_back(entry);
  }
  doc["faces"] = std::move(faces);
  doc["pairings"] = std::move(pairs);
  return doc.dump(1) + "\n";
}

MetricSurface surface_from_json(const std::string& text) {
  try {
    ordered_json doc = ordered_json::parse(text);
    std::vector<Face> faces;
    for (const auto& f : doc.at("faces")) {
      const auto& sides = f.at("sides");
      if (sides.size() != 3) throw Error(ErrorCode::InvalidInput, "face needs three sides");
      faces.push_back(Face{{sides[0].get<double>(), sides[1].get<double>(), sides[2].get<double>()}});
    }
    std::vector<Pairing> pairs;
    if (doc.contains("pairings")) {
      for (const auto& p : doc.at("pairings")) {
        if (p.size() < 2 || p.size() > 3) throw Error(ErrorCode::InvalidInput, "pairing needs two slots");
        Pairing pr;
        pr.a = {p[0].at(0).get<int>(), p[0].at(1).get<int>()};
        pr.b = {p[1].at(0).get<int>(), p[1].at(1).get<int>()};
        if (p.size() == 3) pr.flipped = p[2].is_boolean() ? p[2].get<bool>() : p[2].get<int>() != 0;
        pairs.push_back(pr);
      }
    }
    return build_surface(std::move(faces), pairs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

void write_surface(const MetricSurface& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + path.string());
  out << surface_to_json(s);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot write " + path.string());
}

MetricSurface read_surface(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return surface_from_json(buf.str());
}

}  // namespace ssl
