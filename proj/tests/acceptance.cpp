#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace torext;
using fixtures::poly;

namespace {

struct Check {
  std::ostringstream failures;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) failures << "; ";
    failures << what;
    ok = false;
  }
};

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(TOREXT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int raw = pclose(p);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

std::vector<std::string> labels(const ExtensionSequence& s, std::size_t term, const std::vector<ToricDivisor>& basis) {
  std::vector<std::string> out;
  for (const Summand& x : s.terms[term].summands) {
    auto c = picard_coordinates(x.divisor, basis, s.fan);
    out.push_back(c ? to_string(*c) : "?");
  }
  return out;
}

void f1_extension(Check& c) {
  Fan f = fixtures::f1_fan();
  Polyhedron plus = fixtures::delta(1, 0).translate(ivec({0, 1})), minus = fixtures::delta(0, 2);
  ExtensionSequence s = universal_extension(plus, minus, f);
  std::vector<ToricDivisor> basis = {divisor_of(fixtures::delta(1, 0), f), divisor_of(fixtures::delta(0, 1), f)};
  c.expect(s.ext_dim() == 1, "ext_dim");
  c.expect(s.terms.size() == 3, "three terms");
  if (s.terms.size() == 3) {
    c.expect(labels(s, 0, basis) == std::vector<std::string>{"(1,0)"}, "left term O(1,0)");
    c.expect(labels(s, 1, basis) == std::vector<std::string>{"(0,1)", "(1,1)"}, "middle O(0,1)+O(1,1)");
    c.expect(labels(s, 2, basis) == std::vector<std::string>{"(0,2)"}, "right term O(0,2)");
  }
  c.expect(s.maps == std::vector<Matrix>{Matrix{ivec({-1}), ivec({1})}, Matrix{ivec({1, 1})}}, "maps (-1;1), (1 1)");
  GradedTable t = graded_table(fixtures::delta(1, 0), minus, f);
  c.expect(t.nonzero() == std::map<Vec, Dims>{{ivec({0, -1}), Dims{0, 1}}}, "graded h1 = {(0,-1): 1}");

  int status = 0;
  std::string out = run_cli("ext --in " + fixtures::sample("f1.json") + " --job f1-ext", status);
  c.expect(status == 0, "cli exit status");
  if (status == 0) {
    json j = json::parse(out);
    std::vector<std::string> mid;
    for (const json& x : j["terms"][1]) mid.push_back(x.value("label", "?"));
    c.expect(mid == std::vector<std::string>{"(0,1)", "(1,1)"}, "cli middle labels");
    c.expect(j["terms"][0][0].value("label", "?") == "(1,0)" && j["terms"][2][0].value("label", "?") == "(0,2)",
             "cli outer labels");
    c.expect(j["ext_dim"] == 1, "cli ext_dim");
  }
}

void cremona(Check& c) {
  Fan f = fixtures::cremona_fan();
  Polyhedron plus = fixtures::cremona_a(), minus = fixtures::cremona_minus();
  c.expect(components(minus, plus).count() == 3, "3 components");
  ExtensionSequence s = universal_extension(plus, minus, f);
  auto order = fixtures::cremona_rays();
  c.expect(s.terms.size() == 3 && s.terms[1].size() == 3, "three middle summands");
  if (s.terms.size() == 3 && s.terms[1].size() == 3) {
    c.expect(s.terms[1].summands[0].divisor == fixtures::divisor_in_order(f, order, {1, 1, 1, 1, 0, 0}),
             "D_nabla0 = D1+D2+D3+D4");
    c.expect(s.terms[1].summands[1].divisor == fixtures::divisor_in_order(f, order, {0, 1, 2, 1, 0, 0}),
             "D_nabla1 = D2+2D3+D4");
    c.expect(s.terms[1].summands[2].divisor == fixtures::divisor_in_order(f, order, {0, 1, 1, 1, 1, 0}),
             "D_nabla2 = D2+D3+D4+D5");
  }
  c.expect(s.maps == std::vector<Matrix>{Matrix{ivec({-1, -1}), ivec({1, 0}), ivec({0, 1})}, Matrix{ivec({1, 1, 1})}},
           "universal matrices");
  ExtClass c1 = ExtClass::of_component(1, 3), c2 = ExtClass::of_component(2, 3);
  c.expect(s.classes == std::vector<ExtClass>{c1, c2}, "class ([C1],[C2])");
  PushoutResult p0 = pushout_single(s, 0), p1 = pushout_single(s, 1), p2 = pushout_single(s, 2);
  c.expect(p1.ext_class == c1 && p2.ext_class == c2, "pushout classes");
  c.expect(p0.ext_class == -class_sum({p1.ext_class, p2.ext_class}), "[C0] = -[C1]-[C2]");
  GradedTable t = graded_table(plus, minus, f);
  c.expect(t.nonzero() == std::map<Vec, Dims>{{ivec({0, 0}), Dims{0, 2}}}, "h1 table = {0: 2}");
}

void half_integral(Check& c) {
  Fan f = fixtures::gp_fan();
  auto order = fixtures::gp_rays();
  LatticeRefinement r = refine_lattice_for_intersection(fixtures::gp_plus(), fixtures::gp_minus(),
                                                        Lattice::standard(2), f);
  c.expect(r.m_tilde == lattice_join(Lattice::standard(2), {Vec{Rat(1, 2), Rat(0)}}), "M~ = (1/2)Z + Z");
  std::vector<long> d;
  for (const Vec& v : order) d.push_back(r.d[f.ray_index(v)]);
  c.expect(d == std::vector<long>{2, 1, 2, 1, 2, 1}, "d = 2 at rho1, rho3, rho5");
  ExtensionSequence s = universal_extension(fixtures::gp_plus(), fixtures::gp_minus(), f);
  c.expect(s.middle.has_value(), "middle filtration present");
  if (!s.middle) return;
  const Filtration& h = *s.middle;
  std::vector<std::vector<std::size_t>> want = {{2, 0, 0, 0}, {2, 1, 0, 0}, {2, 2, 0, 0},
                                                {2, 2, 1, 0}, {2, 2, 0, 0}, {2, 1, 0, 0}};
  for (std::size_t k = 0; k < 6; ++k)
    c.expect(h.dims(f.ray_index(order[k]), 0, 3) == want[k], "profile of rho" + std::to_string(k + 1));
  PushoutSpace space(identity(1), kernel_embedding(1));
  c.expect(h.at(f.ray_index(order[1]), 1) == space.image_of_nabla(1), "rho2 level 1 = C1");
  c.expect(h.at(f.ray_index(order[5]), 1) == space.image_of_nabla(0), "rho6 level 1 = C0");
  c.expect(h.at(f.ray_index(order[3]), 2) == space.image_of_plus(), "rho4 level 2 = C+");
  c.expect(!is_split(h), "H does not split");
}

void p1_counterexample(Check& c) {
  PolyFunctor F = fixtures::p1_functor();
  ExactnessReport r = verify_exactness_everywhere(F);
  c.expect(!r.exact(), "flagged non-exact");
  bool open_cell = false;
  for (const ExactnessWitness& w : r.witnesses)
    open_cell = open_cell || (w.cone.empty() && !w.lattice && w.point[0] > 0 && w.point[0] < 1);
  c.expect(open_cell, "witness in the open cell (0,1)");
  c.expect(lattice_exact_globally(F), "all lattice evaluations exact");
}

void oracle_equivalence(Check& c) {
  struct Pair {
    Polyhedron plus, minus;
    Fan fan;
  };
  std::vector<Pair> pairs = {
      {fixtures::delta(1, 0), fixtures::delta(0, 2), fixtures::f1_fan()},
      {fixtures::delta(1, 0).translate(ivec({0, 1})), fixtures::delta(0, 2), fixtures::f1_fan()},
      {fixtures::delta(0, 2), Polyhedron::point(ivec({0, 0})), fixtures::f1_fan()},
      {fixtures::delta(1, 1), fixtures::delta(0, 2), fixtures::f1_fan()},
      {fixtures::cremona_a(), fixtures::cremona_minus(), fixtures::cremona_fan()},
      {fixtures::cremona_b(), fixtures::cremona_a(), fixtures::cremona_fan()},
      {fixtures::gp_plus(), fixtures::gp_minus(), fixtures::gp_fan()},
  };
  std::mt19937 rng(2024);
  for (int t = 0; t < 6; ++t) {
    Polyhedron plus = gen::polytope(rng, 2, -4, 4, 4), minus = gen::polytope(rng, 2, -4, 4, 4);
    Fan f = common_refinement(normal_fan(plus), normal_fan(minus));
    pairs.push_back({plus, minus, f});
  }
  std::size_t cases = 0, flood = 0;
  for (const Pair& p : pairs) {
    CechCover cover(p.fan);
    CartierData cp = cartier_data(p.plus, p.fan), cm = cartier_data(p.minus, p.fan);
    GradedTable g = graded_table(p.plus, p.minus, p.fan);
    bool bounded = p.plus.is_bounded() && p.minus.is_bounded();
    for (const auto& [m, d] : g.entries) {
      if (cech_h_degree(p.fan, cover, cp, cm, m) != d) c.expect(false, "cech != formula at " + to_string(m));
      if (bounded) {
        if (oracle::flood_fill_h1(p.plus, p.minus, m) != d.h1)
          c.expect(false, "flood fill != formula at " + to_string(m));
        ++flood;
      }
      ++cases;
    }
  }
  c.expect(cases >= 200, "at least 200 (pair, degree) cases, got " + std::to_string(cases));
  c.expect(flood >= 200, "at least 200 flood-fill cases, got " + std::to_string(flood));
}

PolyFunctor family_of(const Polyhedron& plus, const Polyhedron& minus, const Fan& f) {
  ComponentDecomposition d = components(minus, plus);
  std::vector<Polyhedron> ns;
  for (std::size_t i = 0; i < d.count(); ++i) ns.push_back(nabla_of(d, i));
  return validate_sigma_family(ns, f);
}

void exactness_suite(Check& c) {
  std::vector<std::pair<std::string, PolyFunctor>> fams = {
      {"F1", family_of(fixtures::delta(1, 0).translate(ivec({0, 1})), fixtures::delta(0, 2), fixtures::f1_fan())},
      {"Cremona", family_of(fixtures::cremona_a(), fixtures::cremona_minus(), fixtures::cremona_fan())}};
  for (const auto& [name, F] : fams) {
    ExactnessReport r = verify_exactness_everywhere(F);
    c.expect(r.exact(), name + " exact on every chart, lattice point and cell");
    c.expect(r.lattice_checks > 0 && r.cell_checks > 0, name + " checks ran");
    KoszulComplex K = koszul_complex(F);
    c.expect(d_squared_zero(K), name + " d o d = 0");
    for (const RaySet& sigma : F.fan.all_cones()) {
      PolyFunctor L = localize(F, sigma);
      KoszulComplex KL = koszul_complex(L);
      for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y)
          if (!d_squared_zero(evaluation_subcomplex(KL, L, ivec({x, y})))) c.expect(false, name + " d o d != 0");
    }
  }
}

void round_trips(Check& c) {
  std::mt19937 rng(7);
  int cones = 0, polys = 0, filts = 0;
  for (int t = 0; t < 50; ++t) {
    Cone k = gen::cone(rng, gen::uniform(rng, 1, 4));
    cones += k.dual().dual() == k;
  }
  for (int t = 0; t < 50; ++t) {
    std::size_t n = gen::uniform(rng, 1, 3);
    Polyhedron p = gen::polytope(rng, n, -4, 4, 6);
    polys += Polyhedron::hull(n, p.vertices()) == p;
  }
  for (int t = 0; t < 30; ++t) {
    std::size_t rays = gen::uniform(rng, 1, 4);
    Filtration f = gen::filtration(rng, gen::uniform(rng, 1, 3), rays);
    std::vector<long> d;
    for (std::size_t i = 0; i < rays; ++i) d.push_back(gen::uniform(rng, 1, 4));
    filts += squish(stretch(f, d), d) == f;
  }
  c.expect(cones == 50, "dual o dual on 50 cones: " + std::to_string(cones));
  c.expect(polys == 50, "hull o vertices on 50 polytopes: " + std::to_string(polys));
  c.expect(filts == 30, "squish o stretch on 30 filtrations: " + std::to_string(filts));
  for (const char* name : {"f1.json", "cremona.json", "halfint.json", "p1.json", "equal.json"}) {
    std::ifstream in(fixtures::sample(name));
    InputDocument doc = parse_document(json::parse(in));
    json once = encode(doc);
    InputDocument again = parse_document(json::parse(once.dump()));
    c.expect(again == doc && encode(again) == once, std::string("JSON round trip of ") + name);
  }
}

void refinement_invariance(Check& c) {
  std::mt19937 rng(99);
  struct Pair {
    std::string name;
    Polyhedron plus, minus;
    Fan fan;
  };
  std::vector<Pair> pairs = {
      {"F1", fixtures::delta(1, 0), fixtures::delta(0, 2), normal_fan(fixtures::delta(1, 1))},
      {"Cremona", fixtures::cremona_a(), fixtures::cremona_minus(), normal_fan(fixtures::cremona_h())}};
  for (const Pair& p : pairs) {
    GradedTable base = graded_table(p.plus, p.minus, p.fan);
    for (int t = 0; t < 3; ++t) {
      Fan r = common_refinement(p.fan, normal_fan(gen::polytope(rng, 2, -3, 3, 5)));
      c.expect(graded_table(p.plus, p.minus, r) == base, p.name + " table changes under refinement");
      c.expect(cech_table(p.plus, p.minus, r) == base, p.name + " Cech table changes under refinement");
    }
  }
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"F1 extension", f1_extension},
      {"Cremona universal extension", cremona},
      {"general position filtration table", half_integral},
      {"P1 counterexample", p1_counterexample},
      {"oracle equivalence", oracle_equivalence},
      {"exactness suite", exactness_suite},
      {"round trips", round_trips},
      {"refinement invariance", refinement_invariance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 10.0, "took longer than 10 s");
    std::printf("%s %zu %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                c.ok ? "" : ": ", c.failures.str().c_str());
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
