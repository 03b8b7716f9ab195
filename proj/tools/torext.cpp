#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "torext/torext.hpp"

using namespace torext;

namespace {

struct Options {
  std::string command;
  std::string in;
  std::string out;
  std::string svg;
  std::string degree;
  std::string job;
  bool verify_oracle = false;
};

Fan job_fan(const Job& job, const InputDocument& doc, const Polyhedron& plus, const Polyhedron& minus) {
  if (job.spec.contains("fan")) {
    const json& f = job.spec.at("fan");
    return f.is_string() ? doc.fan(f.get<std::string>()) : decode_fan(f, doc);
  }
  Polyhedron sum = minkowski_sum(plus, minus);
  require(sum.is_full_dim(), "job \"" + job.name + "\" needs a fan: plus + minus is not full-dimensional");
  return normal_fan(sum);
}

const Polyhedron& named(const Job& job, const InputDocument& doc, const char* key) {
  return doc.polyhedron(detail::field(job.spec, key).get<std::string>());
}

Vec parse_degree(const std::string& text) {
  Vec m;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) m.push_back(parse_rational(part));
  require(!m.empty(), "empty degree");
  return m;
}

PicardBasis picard_basis(const Job& job, const InputDocument& doc, const Fan& f) {
  PicardBasis b;
  if (!job.spec.contains("picard_basis")) return b;
  for (const json& x : job.spec.at("picard_basis")) {
    std::string name = x.get<std::string>();
    b.names.push_back(name);
    b.divisors.push_back(divisor_of(doc.polyhedron(name), f));
  }
  return b;
}

json profiles(const Filtration& h) {
  json a = json::array();
  for (std::size_t i = 0; i < h.ray_count(); ++i) {
    long from = std::min(0L, h.ray(i).start - 1), to = std::max(3L, h.ray(i).end());
    a.push_back({{"from", from}, {"dims", h.dims(i, from, to)}});
  }
  return a;
}

json run_job(const Job& job, const InputDocument& doc, const Options& opt, std::string& svg_out) {
  const std::string& cmd = opt.command;
  if (!opt.degree.empty() && cmd != "cohomology") throw ValidationError("--degree is only valid for cohomology");

  if (cmd == "components") return encode(components(named(job, doc, "minus"), named(job, doc, "plus")));

  if (cmd == "cohomology") {
    const Polyhedron &plus = named(job, doc, "plus"), &minus = named(job, doc, "minus");
    Fan f = job_fan(job, doc, plus, minus);
    std::optional<Vec> degree;
    if (!opt.degree.empty()) degree = parse_degree(opt.degree);
    else if (job.spec.contains("degree")) degree = decode_vec(job.spec.at("degree"));
    json table;
    bool agree = true;
    if (degree) {
      require(degree->size() == f.dim(), "degree has wrong dimension");
      require(is_integral(*degree), "degree must be a lattice point");
      Dims d = difference_dims(plus, minus, *degree);
      if (opt.verify_oracle) agree = cech_h_degree(plus, minus, f, *degree) == d;
      table[degree_key(*degree)] = {{"h0", d.h0}, {"h1", d.h1}};
    } else {
      GradedTable t = graded_table(plus, minus, f);
      if (opt.verify_oracle) agree = t == cech_table(plus, minus, f);
      table = encode(t);
    }
    if (!agree) throw InvariantError("component formula and Cech oracle disagree");
    if (!opt.verify_oracle) return table;
    return {{"table", table}, {"oracle_agrees", agree}};
  }

  if (cmd == "ext" || cmd == "klyachko") {
    if (cmd == "klyachko" && job.spec.contains("bundle")) {
      std::string kind = job.spec.at("bundle").get<std::string>();
      const json& fj = detail::field(job.spec, "fan");
      Fan f = fj.is_string() ? doc.fan(fj.get<std::string>()) : decode_fan(fj, doc);
      Filtration h;
      if (kind == "tangent") h = tangent_filtration(f);
      else if (kind == "line") h = line_bundle_filtration(divisor_of(named(job, doc, "polyhedron"), f));
      else throw ValidationError("unknown bundle \"" + kind + "\"");
      return {{"filtration", encode(h)}, {"profiles", profiles(h)}, {"split", is_split(h)},
              {"compatible", check_compatibility(h, f)}};
    }
    const Polyhedron &plus = named(job, doc, "plus"), &minus = named(job, doc, "minus");
    Fan f = job_fan(job, doc, plus, minus);
    ExtensionSequence s = universal_extension(plus, minus, f);
    PicardBasis basis = picard_basis(job, doc, s.fan);
    std::optional<PushoutResult> p;
    if (job.spec.contains("pushout")) p = pushout_single(s, job.spec.at("pushout").get<std::size_t>());
    if (cmd == "ext") {
      json j = encode(s, &basis);
      if (p) j["pushout"] = {{"class", encode(p->ext_class)}, {"filtration", encode(p->filtration)}};
      return j;
    }
    require(s.kind == SequenceKind::ShortUniversal, "klyachko: the Ext space is zero");
    Filtration h = p ? p->filtration : s.klyachko->middle(identity(s.ext_dim()));
    return {{"filtration", encode(h)}, {"profiles", profiles(h)}, {"split", is_split(h)},
            {"compatible", check_compatibility(h, s.fan)}};
  }

  if (cmd == "verify") {
    const json& fj = detail::field(job.spec, "fan");
    Fan f = fj.is_string() ? doc.fan(fj.get<std::string>()) : decode_fan(fj, doc);
    std::vector<Polyhedron> values;
    std::optional<PolyFunctor> F;
    if (job.spec.contains("functor")) {
      // raw values indexed by subset bitmask, no convexity requirement on the union
      for (const json& x : job.spec.at("functor")) values.push_back(doc.polyhedron(x.get<std::string>()));
      std::size_t size = 0;
      while ((std::size_t{1} << size) < values.size()) ++size;
      require((std::size_t{1} << size) == values.size(), "functor needs 2^k values");
      F = PolyFunctor::make(size, values, f);
    } else {
      for (const json& x : detail::field(job.spec, "family")) values.push_back(doc.polyhedron(x.get<std::string>()));
      F = validate_sigma_family(values, f);
    }
    json j = encode(verify_exactness_everywhere(*F));
    j["d_squared_zero"] = d_squared_zero(koszul_complex(*F));
    j["lattice_exact_globally"] = lattice_exact_globally(*F);
    return j;
  }

  if (cmd == "plot") {
    const Polyhedron &plus = named(job, doc, "plus"), &minus = named(job, doc, "minus");
    std::optional<Fan> f;
    if (job.spec.contains("fan")) f = job_fan(job, doc, plus, minus);
    svg_out = plot_svg(plus, minus, f ? &*f : nullptr);
    return {{"svg_bytes", svg_out.size()}};
  }
  throw ValidationError("unknown command \"" + cmd + "\"");
}

void write(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
}

int run(const Options& opt) {
  std::ifstream in(opt.in);
  if (!in) throw ValidationError("cannot read " + opt.in);
  json raw;
  try {
    raw = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  InputDocument doc = parse_document(raw);
  std::vector<const Job*> selected;
  for (const Job& j : doc.jobs)
    if (opt.job.empty() ? j.command == opt.command : j.name == opt.job) selected.push_back(&j);
  if (selected.empty()) throw ValidationError("no job selected for \"" + opt.command + "\"");

  json result = json::object();
  std::string svg;
  for (const Job* j : selected) {
    std::string one;
    result[j->name] = run_job(*j, doc, opt, one);
    svg += one;
  }
  json out = selected.size() == 1 ? result[selected[0]->name] : result;
  if (opt.command == "plot") {
    write(opt.svg.empty() ? opt.out : opt.svg, svg);
    if (!opt.svg.empty() && !opt.out.empty()) write(opt.out, dump(out));
    return 0;
  }
  write(opt.out, dump(out));
  if (!opt.svg.empty()) {
    std::string pic;
    for (const Job* j : selected)
      if (j->spec.contains("plus") && j->spec.contains("minus"))
        pic += plot_svg(named(*j, doc, "plus"), named(*j, doc, "minus"));
    write(opt.svg, pic);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant extensions of nef toric line bundles"};
  app.require_subcommand(1);
  Options opt;
  for (const char* name : {"components", "cohomology", "ext", "klyachko", "verify", "plot"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--in", opt.in, "input JSON document")->required();
    sub->add_option("--out", opt.out, "output file (default stdout)");
    sub->add_option("--svg", opt.svg, "SVG output file");
    sub->add_option("--degree", opt.degree, "single degree \"a,b\"");
    sub->add_option("--job", opt.job, "run the named job only");
    sub->add_flag("--verify-oracle", opt.verify_oracle, "cross-check against the Cech oracle");
    sub->callback([&opt, sub] { opt.command = sub->get_name(); });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    return run(opt);
  } catch (const ParseError& e) {
    std::cout << dump(error_json("parse", e.what()));
    return 2;
  } catch (const ValidationError& e) {
    std::cout << dump(error_json("validation", e.what()));
    return 2;
  } catch (const json::exception& e) {
    std::cout << dump(error_json("validation", e.what()));
    return 2;
  } catch (const InvariantError& e) {
    std::cout << dump(error_json("invariant", e.what()));
    return 3;
  } catch (const std::exception& e) {
    std::cout << dump(error_json("internal", e.what()));
    return 3;
  }
}
