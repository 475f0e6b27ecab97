#ifndef CORNERCUT_IO_HPP_
#define CORNERCUT_IO_HPP_

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cornercut/blocking.hpp"
#include "cornercut/bodies.hpp"
#include "cornercut/facets.hpp"
#include "cornercut/tilting.hpp"

namespace cornercut {

using Json = nlohmann::ordered_json;

// Output options: exact strings always, decimal companions on request.
struct JsonStyle {
  bool approx = false;
};

namespace io {

inline Json rational(const Rational& q) { return to_string(q); }

inline Json vec(const Vec2& v) { return Json::array({rational(v.x), rational(v.y)}); }

inline Json qvec(const QVec& g) {
  Json a = Json::array();
  for (const auto& x : g) a.push_back(rational(x));
  return a;
}

inline Json vecs(const std::vector<Vec2>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

inline Json approx(const QVec& g) {
  Json a = Json::array();
  for (const auto& x : g) a.push_back(to_double(x));
  return a;
}

inline Json approx(const Vec2& v) { return Json::array({to_double(v.x), to_double(v.y)}); }

// Adds key (exact) and, with approx, key_approx (decimal, non-authoritative).
inline void put(Json& j, const std::string& key, const QVec& g, const JsonStyle& st) {
  j[key] = qvec(g);
  if (st.approx) j[key + "_approx"] = approx(g);
}

inline void put(Json& j, const std::string& key, const Rational& q, const JsonStyle& st) {
  j[key] = rational(q);
  if (st.approx) j[key + "_approx"] = to_double(q);
}

// ---------------------------------------------------------------------------
// Parsing with field paths in the messages.

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + ": invalid JSON at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
}

inline Rational read_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) throw ParseError(path + ": expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Vec2 read_vec(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path + ": expected a pair of rationals");
  return {read_rational(j[0], path + "[0]"), read_rational(j[1], path + "[1]")};
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing field \"" + key + "\"");
  return *it;
}

inline std::vector<Vec2> read_vecs(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected a list of pairs");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(read_vec(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A command-line argument is either inline JSON or a path to a file.
inline std::string text_or_file(const std::string& arg) {
  std::size_t i = arg.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && (arg[i] == '{' || arg[i] == '[')) return arg;
  return slurp(arg);
}

}  // namespace io

struct InstanceFile {
  CornerInstance instance;
  std::vector<std::string> labels;
};

inline InstanceFile parse_instance_file(const std::string& text) {
  Json j = io::parse_json(text, "instance");
  InstanceFile out;
  Vec2 f = io::read_vec(io::field(j, "f", "instance"), "instance.f");
  auto rays = io::read_vecs(io::field(j, "rays", "instance"), "instance.rays");
  out.instance = CornerInstance(f, rays);
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array() || it->size() != rays.size())
      throw ParseError("instance.labels: expected one string per ray");
    for (const auto& l : *it) {
      if (!l.is_string()) throw ParseError("instance.labels: expected strings");
      out.labels.push_back(l.get<std::string>());
    }
  }
  return out;
}

inline CornerInstance parse_instance(const std::string& text) {
  return parse_instance_file(text).instance;
}

inline Json to_json(const CornerInstance& inst, const std::vector<std::string>& labels = {}) {
  Json j;
  j["f"] = io::vec(inst.f);
  j["rays"] = io::vecs(inst.rays);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

inline QVec parse_gamma(const std::string& text) {
  Json j = io::parse_json(text, "gamma");
  const Json& g = j.is_array() ? j : io::field(j, "gamma", "gamma");
  if (!g.is_array()) throw ParseError("gamma: expected a list of rationals");
  QVec out;
  for (std::size_t i = 0; i < g.size(); ++i)
    out.push_back(io::read_rational(g[i], "gamma[" + std::to_string(i) + "]"));
  return out;
}

inline Json gamma_json(const QVec& g, const JsonStyle& st = {}) {
  Json j;
  io::put(j, "gamma", g, st);
  return j;
}

// Body files hold rows relative to f ({"rows": ...}) or a V-representation
// ({"vertices": ..., "rays": ...}); an optional "f" overrides the instance's.
inline Body parse_body(const std::string& text, const std::optional<Vec2>& default_f) {
  Json j = io::parse_json(text, "body");
  if (!j.is_object()) throw ParseError("body: expected an object");
  if (!j.contains("f") && !default_f) throw UsageError("body: no \"f\" given and no instance");
  Vec2 f = j.contains("f") ? io::read_vec(j["f"], "body.f") : *default_f;
  if (j.contains("rows")) {
    auto rows = io::read_vecs(j["rows"], "body.rows");
    if (rows.empty()) throw ParseError("body.rows: at least one row is required");
    return Body(f, rows);
  }
  if (j.contains("vertices")) {
    auto vs = io::read_vecs(j["vertices"], "body.vertices");
    std::vector<Vec2> rs;
    if (j.contains("rays")) rs = io::read_vecs(j["rays"], "body.rays");
    if (vs.empty()) throw ParseError("body.vertices: at least one vertex is required");
    Polygon p = polygon_from_vrep(vs, rs);
    if (!p.contains_strict(f)) throw DomainError("body: f must lie in the interior");
    return Body(f, rows_from_polygon(p, f));
  }
  throw ParseError("body: expected \"rows\" or \"vertices\"");
}

inline Json to_json(const Body& b, const JsonStyle& st = {}) {
  Json j;
  j["f"] = io::vec(b.f());
  j["rows"] = io::vecs(b.rows());
  const Polygon& p = b.polygon();
  j["vertices"] = io::vecs(p.vertices);
  j["rays"] = io::vecs(p.rays);
  if (st.approx) {
    Json a = Json::array();
    for (const auto& v : p.vertices) a.push_back(io::approx(v));
    j["vertices_approx"] = a;
  }
  return j;
}

inline Json to_json(const BodyClass& c) {
  Json j;
  j["tag"] = to_string(c.tag);
  j["maximal"] = is_maximal_tag(c.tag);
  Json fp = Json::array();
  for (const auto& ys : c.facet_points) fp.push_back(io::vecs(ys));
  j["facet_points"] = fp;
  j["witness"] = c.witness ? io::vec(*c.witness) : Json(nullptr);
  if (c.tag == BodyTag::Split) {
    j["split_normal"] = io::vec(c.split_normal);
    j["split_offset"] = c.split_offset.get_str();
  }
  if (!c.anomaly.empty()) j["anomaly"] = c.anomaly;
  return j;
}

inline Json to_json(const Separation& s, const JsonStyle& st = {}) {
  Json j;
  j["valid"] = s.valid;
  if (!s.valid) {
    j["lattice_point"] = s.x ? io::vec(*s.x) : Json(nullptr);
    j["basis"] = Json::array({s.I.first + 1, s.I.second + 1});
    io::put(j, "value", s.value, st);
    j["row"] = s.row ? Json(*s.row) : Json(nullptr);
  }
  return j;
}

inline Json to_json(const TiltWitness& w, const JsonStyle& st = {},
                    const std::optional<std::pair<Body, Body>>& explicit_pair = std::nullopt) {
  Json j;
  io::put(j, "gamma", w.gamma, st);
  io::put(j, "gamma_plus", w.gamma_plus, st);
  io::put(j, "gamma_minus", w.gamma_minus, st);
  io::put(j, "epsilon", w.epsilon, st);
  j["direction"] = io::vecs(w.direction);
  Json bodies;
  bodies["plus"] = to_json(explicit_pair ? explicit_pair->first : w.plus, st);
  bodies["minus"] = to_json(explicit_pair ? explicit_pair->second : w.minus, st);
  bodies["explicit"] = explicit_pair.has_value();
  j["bodies"] = bodies;
  return j;
}

inline Json to_json(const FacetList& fl, const JsonStyle& st = {}) {
  Json list = Json::array();
  for (const auto& fc : fl.facets) {
    Json j;
    io::put(j, "gamma", fc.cut.gamma, st);
    j["family"] = to_string(fc.family);
    j["body_rows"] = fc.cut.body ? io::vecs(fc.cut.body->rows()) : Json(nullptr);
    j["certificate_rank"] = fc.rank;
    j["tight_rows"] = fc.tight_rows;
    Json src = Json::array();
    for (const auto& s : fc.sources)
      src.push_back({{"family", to_string(s.family)}, {"choices", s.choices}});
    j["sources"] = src;
    list.push_back(j);
  }
  Json counts;
  for (const auto& [fam, n] : fl.counts.tried) counts["tried"][to_string(fam)] = n;
  for (const auto& [fam, n] : fl.counts.kept) counts["kept"][to_string(fam)] = n;
  counts["distinct_cuts"] = fl.distinct_cuts;
  return Json{{"facets", list}, {"counts", counts}};
}

}  // namespace cornercut

#endif  // CORNERCUT_IO_HPP_
