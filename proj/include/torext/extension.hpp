#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "filtration.hpp"
#include "koszul.hpp"

namespace torext {

struct Summand {
  std::string name;
  Polyhedron polytope;
  ToricDivisor divisor;
  Lattice lattice;
};

struct SheafTerm {
  std::vector<Summand> summands;
  std::size_t size() const { return summands.size(); }
};

/// An extension class in the basis [C_1], ..., [C_n]; [C_0] is the negated
/// coordinate sum.
struct ExtClass {
  std::vector<long> coordinates;
  std::size_t component_count = 0;  // n + 1

  static ExtClass of_component(std::size_t i, std::size_t count) {
    require(count >= 1 && i < count, "component index out of range");
    ExtClass c{std::vector<long>(count - 1, 0), count};
    if (i == 0)
      for (long& x : c.coordinates) x = -1;
    else
      c.coordinates[i - 1] = 1;
    return c;
  }
  ExtClass operator-() const {
    ExtClass c = *this;
    for (long& x : c.coordinates) x = -x;
    return c;
  }
  bool operator==(const ExtClass& o) const {
    return coordinates == o.coordinates && component_count == o.component_count;
  }
  bool operator!=(const ExtClass& o) const { return !(*this == o); }
};

inline ExtClass class_sum(const std::vector<ExtClass>& classes) {
  require(!classes.empty(), "class_sum: no classes");
  ExtClass s = classes[0];
  for (std::size_t k = 1; k < classes.size(); ++k) {
    require(classes[k].component_count == s.component_count, "class_sum: mismatched counts");
    for (std::size_t i = 0; i < s.coordinates.size(); ++i) s.coordinates[i] += classes[k].coordinates[i];
  }
  return s;
}

enum class SequenceKind { LongKoszul, ShortUniversal, SinglePushout, Trivial };

inline std::string to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::LongKoszul: return "long-koszul";
    case SequenceKind::ShortUniversal: return "short-universal";
    case SequenceKind::SinglePushout: return "single-pushout";
    case SequenceKind::Trivial: return "trivial";
  }
  return "";
}

/// Rank-one filtrations on the cover X~ needed to build pushout middles.
struct KlyachkoData {
  Fan cover_fan;            // working fan over the refined lattice N~
  std::vector<long> d;      // stretch factor per ray
  Filtration core, plus, minus;
  std::vector<Filtration> nablas;

  /// Middle sheaf of the pushout along phi, squished back to X.
  Filtration middle(const Matrix& phi) const {
    Matrix iota = kernel_embedding(nablas.size() - 1);
    return squish(pushout_filtration(core, plus, nablas, iota, phi), d);
  }
};

struct ExtensionSequence {
  SequenceKind kind = SequenceKind::Trivial;
  Fan fan;
  std::vector<SheafTerm> terms;
  std::vector<Matrix> maps;          // maps[i]: terms[i] -> terms[i+1]
  std::vector<ExtClass> classes;     // the n-tuple a universal sequence corresponds to
  bool general_position = false;
  Polyhedron core;
  Lattice lattice;                   // M, or the refinement M~
  std::vector<long> stretch;         // d_rho per ray
  std::optional<Filtration> middle;  // set when the middle sheaf is not split by construction
  std::optional<KlyachkoData> klyachko;
  std::string note;

  std::size_t ext_dim() const { return classes.size(); }
};

inline Summand make_summand(const std::string& name, const Polyhedron& p, const Fan& f, const Lattice& M) {
  return {name, p, divisor_of(p, f), M};
}

struct LatticeRefinement {
  Lattice m_tilde;
  Lattice n_tilde;
  std::vector<long> d;  // per ray of the fan
};

/// Joins M with the vertices of plus ∩ minus and reports d_rho, the order of
/// v_rho in N / N~.
inline LatticeRefinement refine_lattice_for_intersection(const Polyhedron& plus, const Polyhedron& minus,
                                                         const Lattice& M, const Fan& f) {
  Polyhedron core = intersect(plus, minus);
  require(!core.is_empty(), "refine_lattice_for_intersection: plus and minus are disjoint");
  LatticeRefinement r;
  r.m_tilde = is_lattice_polyhedron(core, M) ? M : lattice_join(M, core.vertices());
  r.n_tilde = r.m_tilde.dual();
  Lattice N = M.dual();
  for (std::size_t i = 0; i < f.rays().size(); ++i)
    r.d.push_back(to_ll(order_in_quotient(f.ray_generator(i), r.n_tilde, N)));
  return r;
}

/// Terms ⊕_{#I'=p} O(F(I')) for p = |I| .. 0 with Koszul boundary maps.
inline ExtensionSequence long_koszul_sequence(const PolyFunctor& F) {
  ExactnessReport rep = verify_exactness_everywhere(F);
  if (!rep.exact()) throw ValidationError("long Koszul sequence is not exact on every chart");
  KoszulComplex K = koszul_complex(F);
  ExtensionSequence s;
  s.kind = SequenceKind::LongKoszul;
  s.fan = F.fan;
  s.lattice = F.fan.lattice().dual();
  for (std::size_t p = K.labels.size(); p-- > 0;) {
    SheafTerm t;
    for (Mask m : K.labels[p]) {
      std::string name = "{";
      auto idx = mask_indices(m);
      for (std::size_t j = 0; j < idx.size(); ++j) name += (j ? "," : "") + std::to_string(idx[j]);
      t.summands.push_back(make_summand(name + "}", F.at(m), F.fan, s.lattice));
    }
    if (t.summands.empty()) continue;
    if (!s.terms.empty()) s.maps.push_back(K.d[p + 1]);
    s.terms.push_back(std::move(t));
  }
  return s;
}

namespace detail {

inline Matrix ones_row(std::size_t n) { return Matrix{Vec(n, Rat(1))}; }

/// Window of degrees for chart-wise checks: lattice points of a box one unit
/// beyond every vertex involved.
inline std::vector<Vec> chart_window(const std::vector<Polyhedron>& ps, const Lattice& M) {
  std::size_t n = M.rank();
  Rat r = 0;
  for (const Polyhedron& p : ps)
    if (!p.is_empty())
      for (const Vec& v : p.vertices())
        for (const Rat& x : v) r = std::max(r, x < 0 ? Rat(-x) : x);
  return lattice_points(box(n, ceil_rat(r) + 1), M);
}

/// Chart-wise exactness of 0 -> A -> B -> C -> 0 given as summand lists
/// and integer maps: in every degree and on every maximal chart the
/// restricted maps have the ranks of an exact sequence.
inline void verify_short_exact(const ExtensionSequence& s, const Fan& f, const Lattice& M) {
  std::vector<Polyhedron> all;
  for (const SheafTerm& t : s.terms)
    for (const Summand& x : t.summands) all.push_back(x.polytope);
  std::vector<Vec> window = chart_window(all, M);
  for (std::size_t k = 0; k < f.maximal_cones().size(); ++k) {
    Cone dual = f.cone(k).dual();
    std::vector<std::vector<Polyhedron>> local;
    for (const SheafTerm& t : s.terms) {
      std::vector<Polyhedron> ps;
      for (const Summand& x : t.summands) ps.push_back(minkowski_sum(x.polytope, dual));
      local.push_back(std::move(ps));
    }
    for (const Vec& u : window) {
      std::vector<std::vector<std::size_t>> live(local.size());
      for (std::size_t t = 0; t < local.size(); ++t)
        for (std::size_t i = 0; i < local[t].size(); ++i)
          if (local[t][i].contains(u)) live[t].push_back(i);
      std::vector<std::size_t> ranks;
      for (std::size_t t = 0; t + 1 < local.size(); ++t) {
        Matrix m;
        for (std::size_t r : live[t + 1]) {
          Vec row;
          for (std::size_t c : live[t]) row.push_back(s.maps[t][r][c]);
          m.push_back(std::move(row));
        }
        ranks.push_back(live[t].empty() ? 0 : rank(m));
      }
      for (std::size_t t = 0; t < local.size(); ++t) {
        std::size_t in = t == 0 ? 0 : ranks[t - 1];
        std::size_t out = t < ranks.size() ? ranks[t] : 0;
        if (in + out != live[t].size())
          throw InvariantError("sequence not exact on chart " + std::to_string(k) + " in degree " +
                               to_string(u));
      }
    }
  }
}

}  // namespace detail

/// Certifies universality in the inclusion case with the Cech complex of
/// L = O(plus - minus) in degree 0: lift 1 on each chart to some e_i, take
/// overlap differences in the basis e_i - e_0, and check that the n
/// resulting cocycles are independent modulo coboundaries.
inline bool certify_universal(const Polyhedron& plus, const Polyhedron& minus,
                              const std::vector<Polyhedron>& nablas, const Fan& f) {
  std::size_t n = nablas.size() - 1;
  CechCover cover(f);
  CartierData cp = cartier_data(plus, f), cm = cartier_data(minus, f);
  std::vector<CartierData> cn;
  for (const Polyhedron& p : nablas) cn.push_back(cartier_data(p, f));
  auto section = [&](const CartierData& a, const CartierData& b, std::size_t chart, const RaySet& rays) {
    // degree-0 section of O(a - b) on the chart
    Vec shift = b.m[chart] - a.m[chart];
    for (std::size_t r : rays)
      if (dot(shift, f.ray_generator(r)) < 0) return false;
    return true;
  };
  std::vector<std::size_t> lift(cover.charts);
  for (std::size_t a = 0; a < cover.charts; ++a) {
    std::size_t i = 0;
    while (i <= n && !section(cn[i], cm, a, cover.single[a])) ++i;
    ensure(i <= n, "universal: no lift of 1 on a chart");
    lift[a] = i;
  }
  std::vector<long> c0(cover.charts, -1);
  long n0 = 0;
  for (std::size_t a = 0; a < cover.charts; ++a)
    if (section(cp, cm, a, cover.single[a])) c0[a] = n0++;
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (const auto& [ab, rays] : cover.pairs)
    if (section(cp, cm, ab.first, rays)) rows.push_back(ab);
  Matrix cols;  // columns of [d0 | cocycles], stored as rows
  for (std::size_t a = 0; a < cover.charts; ++a) {
    if (c0[a] < 0) continue;
    Vec col = zeros(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].second == a) col[r] += 1;
      if (rows[r].first == a) col[r] -= 1;
    }
    cols.push_back(std::move(col));
  }
  std::size_t base = rank(cols);
  Matrix cocycles;
  for (std::size_t k = 1; k <= n; ++k) {
    Vec col = zeros(rows.size());
    for (const auto& [ab, rays] : cover.pairs) {
      long v = (lift[ab.second] == k) - (lift[ab.first] == k);
      if (v == 0) continue;
      auto it = std::find(rows.begin(), rows.end(), ab);
      ensure(it != rows.end(), "universal: cocycle outside the sections of L");
      col[it - rows.begin()] = v;
    }
    cocycles.push_back(col);
    cols.push_back(std::move(col));
  }
  std::size_t dim_h1 = static_cast<std::size_t>(cech_h_degree(f, cover, cp, cm, zeros(f.dim())).h1);
  return rank(cols) - base == n && dim_h1 == n;
}

inline KlyachkoData make_klyachko_data(const Polyhedron& core, const Polyhedron& plus, const Polyhedron& minus,
                                       const std::vector<Polyhedron>& nablas, const Fan& f,
                                       const LatticeRefinement& r) {
  KlyachkoData k;
  k.cover_fan = Fan::make(f.rays(), f.maximal_cones(), r.n_tilde);
  k.d = r.d;
  k.core = line_bundle_filtration(divisor_of(core, k.cover_fan));
  k.plus = stretch(line_bundle_filtration(divisor_of(plus, f)), r.d);
  k.minus = stretch(line_bundle_filtration(divisor_of(minus, f)), r.d);
  ensure(k.plus == line_bundle_filtration(divisor_of(plus, k.cover_fan)), "stretch disagrees with pullback");
  for (const Polyhedron& p : nablas) k.nablas.push_back(line_bundle_filtration(divisor_of(p, k.cover_fan)));
  return k;
}

/// Chart sections of the middle filtration against the outer terms:
/// dim ∩_rho H^{-<u,v_rho>} = q [u ∈ plus + σ^∨] + [u ∈ minus + σ^∨].
inline void verify_middle_sections(const Filtration& h, std::size_t q, const Polyhedron& plus,
                                   const Polyhedron& minus, const Fan& f) {
  Lattice M = f.lattice().dual();
  for (std::size_t k = 0; k < f.maximal_cones().size(); ++k) {
    Cone dual = f.cone(k).dual();
    Polyhedron pl = minkowski_sum(plus, dual), mi = minkowski_sum(minus, dual);
    for (const Vec& u : detail::chart_window({plus, minus}, M)) {
      Subspace s = Subspace::full(h.ambient_dim());
      for (std::size_t i : f.maximal_cones()[k]) {
        Rat pairing = dot(u, f.ray_generator(i));
        s = s.intersect(h.at(i, -to_ll(pairing)));
      }
      std::size_t want = q * pl.contains(u) + mi.contains(u);
      if (s.dim() != want)
        throw InvariantError("middle sheaf sections do not match on chart " + std::to_string(k) +
                             " in degree " + to_string(u));
    }
  }
}

/// Universal extension 0 -> O(plus)^n -> middle -> O(minus) -> 0 for the
/// degree-0 Ext space, n + 1 being the number of components of minus \ plus.
inline ExtensionSequence universal_extension(const Polyhedron& plus, const Polyhedron& minus, const Fan& f) {
  require_compatible(plus, f);
  require_compatible(minus, f);
  Lattice M = f.lattice().dual();
  ComponentDecomposition comps = components(minus, plus);
  ExtensionSequence s;
  s.fan = f;
  s.lattice = M;
  s.core = comps.core;
  std::size_t count = comps.count();
  if (count <= 1) {
    s.kind = SequenceKind::Trivial;
    s.note = "zero Ext space";
    s.terms = {SheafTerm{{make_summand("minus", minus, f, M)}}, SheafTerm{{make_summand("minus", minus, f, M)}}};
    s.maps = {Matrix{Vec{Rat(1)}}};
    return s;
  }
  std::size_t n = count - 1;
  std::vector<Polyhedron> nablas;
  for (std::size_t i = 0; i < count; ++i) nablas.push_back(nabla_of(comps, i));

  Fan work = f;
  for (const Polyhedron& p : nablas)
    if (!is_compatible(p, work)) work = refine_for(work, p);
  if (!is_compatible(comps.core, work)) work = refine_for(work, comps.core);
  s.fan = work;
  for (std::size_t i = 1; i <= n; ++i) s.classes.push_back(ExtClass::of_component(i, count));
  s.kind = SequenceKind::ShortUniversal;

  bool inclusion = minus.contains(plus);
  s.general_position = !inclusion;
  LatticeRefinement ref = inclusion ? LatticeRefinement{M, M.dual(), std::vector<long>(work.rays().size(), 1)}
                                    : refine_lattice_for_intersection(plus, minus, M, work);
  s.stretch = ref.d;
  s.klyachko = make_klyachko_data(comps.core, plus, minus, nablas, work, ref);

  SheafTerm left, right;
  for (std::size_t i = 0; i < n; ++i) left.summands.push_back(make_summand("plus", plus, work, M));
  right.summands.push_back(make_summand("minus", minus, work, M));

  if (inclusion) {
    SheafTerm mid;
    for (std::size_t i = 0; i < count; ++i)
      mid.summands.push_back(make_summand("nabla" + std::to_string(i), nablas[i], work, M));
    s.terms = {left, mid, right};
    s.maps = {kernel_embedding(n), detail::ones_row(count)};
    detail::verify_short_exact(s, work, M);
    if (!certify_universal(plus, minus, nablas, work))
      throw InvariantError("universal extension failed the Cech certification");
    return s;
  }

  s.lattice = ref.m_tilde;
  s.middle = s.klyachko->middle(identity(n));
  verify_middle_sections(*s.middle, n, plus, minus, work);
  SheafTerm mid;
  s.terms = {left, mid, right};
  s.note = "middle sheaf given by its filtration";
  return s;
}

struct PushoutResult {
  ExtensionSequence sequence;
  ExtClass ext_class;
  Filtration filtration;
};

/// Pushout of a universal sequence along a functional phi : C^n -> C.
inline PushoutResult pushout_along(const ExtensionSequence& seq, const Vec& phi) {
  require(seq.kind == SequenceKind::ShortUniversal && seq.klyachko, "pushout needs a short universal sequence");
  std::size_t n = seq.ext_dim();
  require(phi.size() == n, "pushout: functional has wrong length");
  PushoutResult r;
  r.filtration = seq.klyachko->middle(Matrix{phi});
  r.ext_class.component_count = n + 1;
  for (const Rat& x : phi) r.ext_class.coordinates.push_back(to_ll(x));
  ExtensionSequence& s = r.sequence;
  s.kind = SequenceKind::SinglePushout;
  s.fan = seq.fan;
  s.lattice = seq.lattice;
  s.core = seq.core;
  s.general_position = seq.general_position;
  s.stretch = seq.stretch;
  s.terms = {SheafTerm{{seq.terms[0].summands.at(0)}}, SheafTerm{}, seq.terms[2]};
  s.classes = {r.ext_class};
  s.middle = r.filtration;
  verify_middle_sections(r.filtration, 1, seq.terms[0].summands[0].polytope, seq.terms[2].summands[0].polytope,
                         seq.fan);
  return r;
}

/// Pushout along pr_i (i = 1..n), or along (-1, ..., -1) for i = 0.
inline PushoutResult pushout_single(const ExtensionSequence& seq, std::size_t i) {
  std::size_t n = seq.ext_dim();
  require(i <= n, "pushout index out of range");
  Vec phi = i == 0 ? Vec(n, Rat(-1)) : unit(n, i - 1);
  return pushout_along(seq, phi);
}

}  // namespace torext
