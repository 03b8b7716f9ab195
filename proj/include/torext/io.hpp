#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "extension.hpp"

namespace torext {

using json = nlohmann::json;

// ---------------------------------------------------------------- encoding

inline json encode(const Rat& q) { return to_string(q); }

inline json encode(const Vec& v) {
  json a = json::array();
  for (const Rat& x : v) a.push_back(to_string(x));
  return a;
}

inline json encode(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const Vec& v : vs) a.push_back(encode(v));
  return a;
}

inline json encode(const Halfspace& h) { return {{"normal", encode(h.normal)}, {"offset", encode(h.offset)}}; }

inline json encode(const Lattice& l) { return {{"basis", encode(l.basis())}}; }

inline json encode(const Polyhedron& p) {
  json hrep = json::array();
  for (const Halfspace& h : p.hrep()) hrep.push_back(encode(h));
  return {{"ambient_dim", p.ambient_dim()}, {"empty", p.is_empty()}, {"vertices", encode(p.vertices())},
          {"rays", encode(p.rays())}, {"lineality", encode(p.lineality())}, {"hrep", hrep}};
}

inline json encode(const Fan& f) {
  json j = {{"rays", encode(f.rays())}, {"cones", f.maximal_cones()}};
  if (!f.lattice().is_standard()) j["lattice"] = encode(f.lattice());
  return j;
}

inline json encode(const ToricDivisor& d) {
  return {{"coefficients", encode(d.coefficients)}, {"text", to_string(d)}};
}

inline json encode(const Subspace& s) { return {{"dim", s.dim()}, {"basis", encode(s.basis())}}; }

inline json encode(const Filtration& f) {
  json rays = json::array();
  for (std::size_t i = 0; i < f.ray_count(); ++i) {
    json levels = json::array();
    for (const Subspace& s : f.ray(i).levels) levels.push_back(encode(s));
    rays.push_back({{"start", f.ray(i).start}, {"levels", levels}});
  }
  return {{"ambient_dim", f.ambient_dim()}, {"rays", rays}};
}

inline std::string degree_key(const Vec& m) { return to_string(m); }

inline json encode(const GradedTable& t) {
  json j = json::object();
  for (const auto& [m, d] : t.nonzero()) j[degree_key(m)] = {{"h0", d.h0}, {"h1", d.h1}};
  return j;
}

inline json encode(const ExtClass& c) {
  return {{"coordinates", c.coordinates}, {"component_count", c.component_count}};
}

inline json encode_matrix(const Matrix& m) {
  json a = json::array();
  for (const Vec& r : m) a.push_back(encode(r));
  return a;
}

inline json encode(const ComponentDecomposition& d) {
  json comps = json::array();
  for (std::size_t i = 0; i < d.count(); ++i) {
    const Component& c = d.components[i];
    json cells = json::array();
    for (std::size_t k : c.cells)
      cells.push_back({{"dim", d.complex.cells[k].dim}, {"vertices", encode(d.complex.cell_points(k))}});
    comps.push_back({{"index", i}, {"closure", encode(c.closure)}, {"nabla", encode(nabla_of(d, i))},
                     {"cells", cells}});
  }
  json j = {{"count", d.count()}, {"core", encode(d.core)}, {"components", comps}};
  j["truncation"] = d.truncation ? encode(*d.truncation) : json(nullptr);
  return j;
}

inline json encode(const ExactnessReport& r) {
  json w = json::array();
  for (const ExactnessWitness& x : r.witnesses)
    w.push_back({{"cone", x.cone}, {"point", encode(x.point)}, {"lattice", x.lattice}});
  return {{"exact", r.exact()},          {"lattice_exact", r.lattice_exact},   {"cells_exact", r.cells_exact},
          {"lattice_checks", r.lattice_checks}, {"cell_checks", r.cell_checks}, {"witnesses", w}};
}

/// Optional Picard labels: coordinates of each summand's divisor in a basis.
struct PicardBasis {
  std::vector<ToricDivisor> divisors;
  std::vector<std::string> names;
};

inline json encode(const Summand& s, const Fan& f, const PicardBasis* basis) {
  json j = {{"name", s.name}, {"divisor", encode(s.divisor)}, {"polytope", encode(s.polytope)}};
  if (basis && !basis->divisors.empty()) {
    std::optional<Vec> c = picard_coordinates(s.divisor, basis->divisors, f);
    if (c) {
      std::vector<long> k;
      for (const Rat& x : *c) k.push_back(to_ll(x));
      j["picard"] = k;
      j["label"] = to_string(*c);
    }
  }
  return j;
}

inline json encode(const ExtensionSequence& s, const PicardBasis* basis = nullptr) {
  json terms = json::array();
  for (const SheafTerm& t : s.terms) {
    json a = json::array();
    for (const Summand& x : t.summands) a.push_back(encode(x, s.fan, basis));
    terms.push_back(a);
  }
  json maps = json::array();
  for (const Matrix& m : s.maps) maps.push_back(encode_matrix(m));
  json classes = json::array();
  for (const ExtClass& c : s.classes) classes.push_back(encode(c));
  std::vector<long> stretch = s.stretch;
  json j = {{"kind", to_string(s.kind)}, {"ext_dim", s.ext_dim()},  {"general_position", s.general_position},
            {"fan", encode(s.fan)},      {"terms", terms},          {"maps", maps},
            {"classes", classes},        {"lattice", encode(s.lattice)}, {"stretch", stretch},
            {"note", s.note}};
  if (!s.core.is_empty() || s.core.ambient_dim() > 0) j["core"] = encode(s.core);
  j["middle"] = s.middle ? encode(*s.middle) : json(nullptr);
  if (s.middle) j["middle_split"] = is_split(*s.middle);
  return j;
}

// ---------------------------------------------------------------- decoding

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline Rat decode_rational(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) throw ValidationError("rational must be a string \"p/q\" or an integer");
  return parse_rational(j.get<std::string>());
}

inline Vec decode_vec(const json& j) {
  if (!j.is_array()) throw ValidationError("vector must be an array");
  Vec v;
  for (const json& x : j) v.push_back(decode_rational(x));
  return v;
}

inline std::vector<Vec> decode_vecs(const json& j, std::size_t dim) {
  if (!j.is_array()) throw ValidationError("expected an array of vectors");
  std::vector<Vec> vs;
  for (const json& x : j) {
    vs.push_back(decode_vec(x));
    require(vs.back().size() == dim, "vector has wrong dimension");
  }
  return vs;
}

inline Halfspace decode_halfspace(const json& j) {
  return {decode_vec(detail::field(j, "normal")), decode_rational(detail::field(j, "offset"))};
}

inline Lattice decode_lattice(const json& j) {
  const json& b = j.contains("basis") ? j.at("basis") : detail::field(j, "generators");
  require(b.is_array() && !b.empty(), "lattice needs generators");
  std::size_t r = decode_vec(b[0]).size();
  return Lattice::from_generators(r, decode_vecs(b, r));
}

/// Accepts vertices+rays(+lineality), an hrep, or both; with both, the two
/// descriptions must agree.
inline Polyhedron decode_polyhedron(const json& j) {
  std::optional<std::size_t> dim;
  if (j.contains("ambient_dim")) dim = j.at("ambient_dim").get<std::size_t>();
  else if (j.contains("vertices") && !j.at("vertices").empty()) dim = decode_vec(j.at("vertices")[0]).size();
  else if (j.contains("hrep") && !j.at("hrep").empty()) dim = decode_vec(j.at("hrep")[0].at("normal")).size();
  require(dim.has_value() && *dim > 0, "polyhedron: cannot determine ambient dimension");
  std::optional<Polyhedron> v, h;
  if (j.contains("vertices")) {
    std::vector<Vec> pts = decode_vecs(j.at("vertices"), *dim);
    std::vector<Vec> rays = j.contains("rays") ? decode_vecs(j.at("rays"), *dim) : std::vector<Vec>{};
    std::vector<Vec> lin = j.contains("lineality") ? decode_vecs(j.at("lineality"), *dim) : std::vector<Vec>{};
    v = pts.empty() ? Polyhedron::empty(*dim) : Polyhedron::hull(*dim, pts, rays, lin);
  }
  if (j.contains("hrep")) {
    std::vector<Halfspace> hs;
    for (const json& x : j.at("hrep")) {
      hs.push_back(decode_halfspace(x));
      require(hs.back().normal.size() == *dim, "halfspace has wrong dimension");
    }
    h = Polyhedron::from_hrep(*dim, hs);
  }
  require(v || h, "polyhedron needs vertices or hrep");
  if (v && h && !(*v == *h)) throw ValidationError("polyhedron: hrep and vrep disagree");
  if (j.contains("empty") && j.at("empty").get<bool>() != (v ? *v : *h).is_empty())
    throw ValidationError("polyhedron: emptiness flag disagrees");
  return v ? *v : *h;
}

inline Subspace decode_subspace(const json& j, std::size_t n) {
  Subspace s = Subspace::span(n, decode_vecs(detail::field(j, "basis"), n));
  if (j.contains("dim")) require(j.at("dim").get<std::size_t>() == s.dim(), "subspace: dim disagrees with basis");
  return s;
}

inline Filtration decode_filtration(const json& j) {
  std::size_t n = detail::field(j, "ambient_dim").get<std::size_t>();
  std::vector<RayFiltration> rays;
  for (const json& r : detail::field(j, "rays")) {
    RayFiltration rf;
    rf.start = detail::field(r, "start").get<long>();
    for (const json& s : detail::field(r, "levels")) rf.levels.push_back(decode_subspace(s, n));
    rays.push_back(std::move(rf));
  }
  return Filtration(n, std::move(rays));
}

inline GradedTable decode_graded_table(const json& j) {
  require(j.is_object(), "graded table must be an object");
  GradedTable t;
  for (const auto& [k, d] : j.items()) {
    require(k.size() >= 2 && k.front() == '(' && k.back() == ')', "graded table key must look like (a,b)");
    Vec m;
    std::size_t pos = 1;
    while (pos < k.size() - 1) {
      std::size_t comma = k.find(',', pos);
      if (comma == std::string::npos) comma = k.size() - 1;
      m.push_back(parse_rational(k.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    t.entries[m] = {detail::field(d, "h0").get<long>(), detail::field(d, "h1").get<long>()};
  }
  return t;
}

inline ExtClass decode_ext_class(const json& j) {
  return {detail::field(j, "coordinates").get<std::vector<long>>(),
          detail::field(j, "component_count").get<std::size_t>()};
}

inline ToricDivisor decode_divisor(const json& j) { return {decode_vec(detail::field(j, "coefficients"))}; }

// ---------------------------------------------------------------- documents

struct Job {
  std::string name;
  std::string command;
  json spec;
};

/// Named lattices, polyhedra and fans plus a job list.
struct InputDocument {
  std::map<std::string, Lattice> lattices;
  std::map<std::string, Polyhedron> polyhedra;
  std::map<std::string, Fan> fans;
  std::vector<Job> jobs;

  const Polyhedron& polyhedron(const std::string& name) const {
    auto it = polyhedra.find(name);
    if (it == polyhedra.end()) throw ValidationError("unknown polyhedron \"" + name + "\"");
    return it->second;
  }
  const Fan& fan(const std::string& name) const {
    auto it = fans.find(name);
    if (it == fans.end()) throw ValidationError("unknown fan \"" + name + "\"");
    return it->second;
  }
  const Lattice& lattice(const std::string& name) const {
    auto it = lattices.find(name);
    if (it == lattices.end()) throw ValidationError("unknown lattice \"" + name + "\"");
    return it->second;
  }
};

/// Fans are given by rays and cones, or as {"normal_fan_of": name}; an
/// optional "lattice" is a name or an inline basis for N.
inline Fan decode_fan(const json& j, const InputDocument& doc) {
  std::optional<Lattice> N;
  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    N = l.is_string() ? doc.lattice(l.get<std::string>()) : decode_lattice(l);
  }
  if (j.contains("normal_fan_of")) {
    const Polyhedron& p = doc.polyhedron(j.at("normal_fan_of").get<std::string>());
    return N ? normal_fan(p, *N) : normal_fan(p);
  }
  const json& r = detail::field(j, "rays");
  require(r.is_array() && !r.empty(), "fan needs rays");
  std::size_t n = decode_vec(r[0]).size();
  std::vector<Vec> rays = decode_vecs(r, n);
  std::vector<RaySet> cones = detail::field(j, "cones").get<std::vector<RaySet>>();
  for (const RaySet& c : cones)
    for (std::size_t i : c) require(i < rays.size(), "fan cone references a missing ray");
  return N ? Fan::make(rays, cones, *N) : Fan::make(rays, cones);
}

inline Fan decode_fan(const json& j) { return decode_fan(j, InputDocument{}); }

inline InputDocument parse_document(const json& j) {
  require(j.is_object(), "input must be a JSON object");
  InputDocument doc;
  if (j.contains("lattices"))
    for (const auto& [k, v] : j.at("lattices").items()) doc.lattices.emplace(k, decode_lattice(v));
  if (j.contains("polyhedra"))
    for (const auto& [k, v] : j.at("polyhedra").items()) doc.polyhedra.emplace(k, decode_polyhedron(v));
  if (j.contains("fans")) {
    // normal fans may refer to polyhedra only, so one pass suffices
    for (const auto& [k, v] : j.at("fans").items()) doc.fans.emplace(k, decode_fan(v, doc));
  }
  if (j.contains("jobs")) {
    std::size_t i = 0;
    for (const json& x : j.at("jobs")) {
      Job job;
      job.command = detail::field(x, "command").get<std::string>();
      job.name = x.contains("name") ? x.at("name").get<std::string>() : "job" + std::to_string(i);
      job.spec = x;
      doc.jobs.push_back(std::move(job));
      ++i;
    }
  }
  return doc;
}

inline json encode(const InputDocument& doc) {
  json j = json::object();
  json ls = json::object(), ps = json::object(), fs = json::object(), js = json::array();
  for (const auto& [k, v] : doc.lattices) ls[k] = encode(v);
  for (const auto& [k, v] : doc.polyhedra) ps[k] = encode(v);
  for (const auto& [k, v] : doc.fans) fs[k] = encode(v);
  for (const Job& x : doc.jobs) js.push_back(x.spec);
  j["lattices"] = ls;
  j["polyhedra"] = ps;
  j["fans"] = fs;
  j["jobs"] = js;
  return j;
}

inline bool operator==(const InputDocument& a, const InputDocument& b) {
  if (a.jobs.size() != b.jobs.size()) return false;
  for (std::size_t i = 0; i < a.jobs.size(); ++i)
    if (a.jobs[i].spec != b.jobs[i].spec) return false;
  return a.lattices == b.lattices && a.polyhedra == b.polyhedra && a.fans == b.fans;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace torext
