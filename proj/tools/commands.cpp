#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "pcqg/antipode.hpp"
#include "pcqg/cset.hpp"
#include "pcqg/decoupling.hpp"
#include "pcqg/dynsu2.hpp"
#include "pcqg/fdpcqg.hpp"
#include "pcqg/groupoid.hpp"
#include "pcqg/rewrite.hpp"
#include "pcqg/spectrum.hpp"
#include "pcqg/uqsu11.hpp"

namespace pcqg::cli {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kNormSlack = 1e-12;

struct Params {
  double q = 0.5, x = 1.0, c = 0.0, y = 1.0;
  double c1 = 0.0, c2 = 1.0;
  std::vector<double> qs{0.3, 0.5, 0.8};
  std::vector<double> cs{0.0, 1.3};
  int window = 21, coproduct_window = 11, truncation = 24, grid = 400, cset_grid = 200, K = 12, N = 12, index = -1;
  double anchor = 1.0;
  double lattice_base = 0;
  int lattice_step = 1;
  std::string word, file, form = "functions", dir = "fixtures";
  bool matrices = false;
  // global
  std::string out, format = "json";
  double tol = kDefaultTolerance;
  unsigned seed = 7;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

void check_q(double q) { require(q > 0 && q < 1, "--q must lie in (0, 1)"); }

long half_width(int window) {
  require(window >= 3 && window % 2 == 1, "--window must be odd and >= 3");
  return window / 2;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

json residuals_json(const std::vector<RelationResidual>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(r.to_json());
  return a;
}

void add_rows(Report& rep, const std::string& group, const std::vector<RelationResidual>& rs) {
  if (rep.header.empty()) rep.header = {"group", "label", "residual", "abs_residual", "pass"};
  for (const auto& r : rs)
    rep.rows.push_back({group, r.label, fmt(r.residual), fmt(r.abs_residual), r.pass() ? "true" : "false"});
}

json set_json(const CSetDescriptor& d) {
  return {{"kind", to_string(d.kind)}, {"z", d.z}, {"c", d.c}, {"label", d.label}};
}

json window_sets_json(const std::vector<WindowSet>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back({{"ks", w.ks}, {"window_limited", w.window_limited}});
  return a;
}

// ---- csets

Report csets_classify(const Params& p) {
  check_q(p.q);
  std::optional<LatticeSpec> L;
  if (p.lattice_base > 0) L = LatticeSpec(p.q, p.lattice_base, p.lattice_step);
  auto cl = classify_irreducible_csets(p.c, p.q, L);
  Report r;
  json sets = json::array();
  for (const auto& d : cl.sets) sets.push_back(set_json(d));
  r.result = {{"c", cl.c}, {"q", cl.q}, {"sets", sets}, {"family", nullptr}};
  if (cl.family)
    r.result["family"] = {{"lo", cl.family->lo},
                          {"hi", cl.family->hi},
                          {"lo_closed", cl.family->lo_closed},
                          {"hi_closed", cl.family->hi_closed},
                          {"label", cl.family->label}};
  return r;
}

Report csets_brute(const Params& p) {
  check_q(p.q);
  require(p.anchor > 0, "--anchor must be positive");
  Report r;
  r.result = {{"sets", window_sets_json(brute_force_csets(p.c, p.q, p.N, p.anchor))}};
  return r;
}

Report csets_compare(const Params& p) {
  Report r;
  r.header = {"q", "c", "anchor", "match"};
  json per_q = json::array();
  for (double q : p.qs) {
    check_q(q);
    auto grid = cset_c_grid(q, p.cset_grid, p.K);
    std::size_t total = 0;
    json bad = json::array();
    for (double c : grid)
      for (double a : {1.0, q, std::pow(q, 0.37), std::pow(q, 1.37)}) {
        auto cmp = compare_csets(c, q, p.N, a);
        ++total;
        r.rows.push_back({fmt(q), fmt(c), fmt(a), cmp.match ? "true" : "false"});
        if (!cmp.match) {
          r.pass = false;
          bad.push_back({{"c", c},
                         {"anchor", a},
                         {"classified", window_sets_json(cmp.classified)},
                         {"brute", window_sets_json(cmp.brute)}});
        }
      }
    per_q.push_back({{"q", q}, {"c_values", grid.size()}, {"comparisons", total}, {"mismatches", bad}});
  }
  r.result = {{"window_exponent", p.N}, {"per_q", per_q}};
  return r;
}

// ---- uq

Report uq_reps(const Params& p) {
  check_q(p.q);
  require(p.y > 0, "--y must be positive");
  Report r;
  json a = json::array();
  for (const auto& cs : compatible_sets(p.y, p.c, p.q)) a.push_back(cs.to_json());
  r.result = {{"compatible_sets", a}};
  return r;
}

Report uq_verify(const Params& p) {
  check_q(p.q);
  require(p.y > 0, "--y must be positive");
  require(p.truncation >= 8, "--truncation must be >= 8");
  Report r;
  json a = json::array();
  for (const auto& cs : compatible_sets(p.y, p.c, p.q)) {
    auto rep = build_pi_T(cs, p.truncation);
    auto rs = verify_uqsu11_relations(rep, p.tol);
    rs.push_back(casimir_scalarity(rep, p.tol));
    r.pass = r.pass && all_pass(rs);
    add_rows(r, cs.desc.label, rs);
    a.push_back({{"set", cs.to_json()}, {"relations", residuals_json(rs)}, {"pass", all_pass(rs)}});
  }
  r.result = {{"representations", a}};
  return r;
}

// ---- dyn

json norms_json(const std::array<double, 4>& n, bool& ok) {
  ok = true;
  for (double v : n) ok = ok && v <= 1 + kNormSlack;
  return {{"alpha", n[0]}, {"beta", n[1]}, {"gamma", n[2]}, {"delta", n[3]}, {"bound", 1 + kNormSlack}, {"pass", ok}};
}

DynRep pi_c(const Params& p, double c) {
  check_q(p.q);
  require(p.x > 0, "--x must be positive");
  require(std::abs(c) < 2, "the representation pi_c needs |c| < 2");
  return build_pi_c({p.q, p.x, c}, half_width(p.window));
}

Report dyn_build(const Params& p) {
  auto rep = pi_c(p, p.c);
  Report r;
  r.result = rep.to_json(p.matrices);
  return r;
}

Report dyn_verify(const Params& p) {
  auto rep = pi_c(p, p.c);
  auto rs = verify_dynsu2_relations(rep, p.tol, p.seed);
  bool norms_ok = false;
  Report r;
  r.result = {{"relations", residuals_json(rs)},
              {"count", rs.size()},
              {"norms", norms_json(generator_norms(rep), norms_ok)}};
  r.pass = all_pass(rs) && norms_ok;
  add_rows(r, "relations", rs);
  return r;
}

Report dyn_coproduct(const Params& p) {
  Params w = p;
  w.window = p.coproduct_window;
  auto b1 = pi_c(w, p.c1);
  auto b2 = pi_c(w, p.c2);
  auto cr = coproduct_compat_check(b1, b2, p.tol);
  bool norms_ok = false;
  bool controls = !cr.unrestricted_identity.pass() && !all_pass(cr.unmatched_relations);
  Report r;
  r.result = {{"relations", residuals_json(cr.relations)},
              {"support_identity", cr.support_identity.to_json()},
              {"negative_controls",
               {{"identity_on_full_tensor", cr.unrestricted_identity.to_json()},
                {"without_support_cutoff", residuals_json(cr.unmatched_relations)},
                {"detected", controls}}},
              {"norms", norms_json(cr.norms, norms_ok)}};
  r.pass = cr.pass() && controls && norms_ok;
  add_rows(r, "relations", cr.relations);
  add_rows(r, "support", {cr.support_identity});
  return r;
}

Report dyn_antipode(const Params& p) {
  auto rep = pi_c(p, p.c);
  auto a = antipode_check(rep, p.tol, p.seed);
  bool control = !all_pass(a.literal_swap);
  Report r;
  r.result = {{"transformed_relations", residuals_json(a.transformed)},
              {"corepresentation", residuals_json(a.corep)},
              {"square", residuals_json(a.square)},
              {"negative_control_literal_swap", {{"relations", residuals_json(a.literal_swap)}, {"detected", control}}}};
  r.pass = a.pass() && control;
  add_rows(r, "transformed", a.transformed);
  add_rows(r, "corep", a.corep);
  add_rows(r, "square", a.square);
  return r;
}

Report dyn_reduce(const Params& p) {
  check_q(p.q);
  require(!p.word.empty(), "--word is required");
  Term w;
  try {
    w = parse_word(p.word);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report r;
  std::vector<NormalTerm> red;
  try {
    red = reduce_word(w, p.q);
  } catch (const RewriteError& e) {
    r.pass = false;
    r.result = {{"word", p.word}, {"error", e.what()}, {"offending_word", e.word()}};
    return r;
  }
  bool idem = same_normal_form(reduce_expr(to_expr(red), p.q), red);
  json checks = json::array();
  std::vector<RelationResidual> rs;
  for (double c : p.cs) {
    auto rep = pi_c(p, c);
    auto res = reduction_residual(rep, w, red);
    res.label = "pi_c(w) = pi_c(reduced), c = " + fmt(c);
    rs.push_back(res);
    checks.push_back(res.to_json());
  }
  r.result = {{"word", p.word}, {"normal_form", to_json(red)}, {"oracle", checks}, {"idempotent", idem}};
  r.pass = all_pass(rs) && idem;
  add_rows(r, "oracle", rs);
  return r;
}

Report dyn_xsym(const Params& p) {
  auto b1 = pi_c(p, p.c);
  Params mirrored = p;
  mirrored.x = 1 / p.x;
  auto b2 = pi_c(mirrored, p.c);
  auto rs = x_symmetry_check(b1, b2, p.tol);
  Report r;
  r.result = {{"checks", residuals_json(rs)}};
  r.pass = all_pass(rs);
  add_rows(r, "x_symmetry", rs);
  return r;
}

// ---- irreps

Report irreps_enumerate(const Params& p) {
  check_q(p.q);
  require(p.x > 0, "--x must be positive");
  Report r;
  json a = json::array();
  for (const auto& pr : enumerate_irreps(p.q, p.x, p.c)) a.push_back(pr.to_json());
  r.result = {{"pairs", a}, {"count", a.size()}};
  return r;
}

Report irreps_build(const Params& p) {
  check_q(p.q);
  require(p.x > 0, "--x must be positive");
  auto pairs = enumerate_irreps(p.q, p.x, p.c);
  require(p.index < static_cast<int>(pairs.size()), "--index out of range");
  Report r;
  json a = json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (p.index >= 0 && static_cast<int>(i) != p.index) continue;
    auto b = build_pi_ST(pairs[i], p.truncation);
    auto rel = verify_dynsu2_relations(b.rep, p.tol, p.seed);
    auto im = build_phi_images(b.rep);
    auto om = casimir_omega(im, p.tol);
    auto rt = pi_ST_roundtrip(b, p.tol);
    bool norms_ok = false;
    json nj = norms_json(generator_norms(b.rep), norms_ok);
    bool ok = all_pass(rel) && all_pass(om.checks) && om.scalar.pass() && all_pass(rt) && norms_ok;
    r.pass = r.pass && ok;
    std::string g = "pair " + std::to_string(i);
    add_rows(r, g, rel);
    add_rows(r, g, om.checks);
    add_rows(r, g, {om.scalar});
    add_rows(r, g, rt);
    a.push_back({{"pair", pairs[i].to_json()},
                 {"truncated", b.rep.truncated},
                 {"relations", residuals_json(rel)},
                 {"casimir", residuals_json(om.checks)},
                 {"casimir_value", om.scalar.to_json()},
                 {"roundtrip", residuals_json(rt)},
                 {"norms", nj},
                 {"pass", ok}});
  }
  r.result = {{"bundles", a}};
  return r;
}

// ---- spectrum

Report spectrum_closed(const Params& p) {
  check_q(p.q);
  require(p.x > 0, "--x must be positive");
  Report r;
  r.result = spec_omega_closed_form(p.q, p.x).to_json(p.K);
  return r;
}

Report spectrum_brute(const Params& p) {
  check_q(p.q);
  require(p.x > 0, "--x must be positive");
  require(p.grid >= 2, "--grid must be >= 2");
  auto sd = spec_omega_closed_form(p.q, p.x);
  auto grid = default_c_grid(sd, p.grid, p.K);
  auto brute = spec_omega_brute_force(p.q, p.x, grid);
  Report r;
  r.header = {"c", "brute", "closed"};
  json rows = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool closed = sd.contains(grid[i]);
    rows.push_back({{"c", grid[i]}, {"brute", static_cast<bool>(brute[i])}, {"closed", closed}});
    r.rows.push_back({fmt(grid[i]), brute[i] ? "true" : "false", closed ? "true" : "false"});
  }
  r.result = {{"membership", rows}};
  return r;
}

Report spectrum_compare(const Params& p) {
  check_q(p.q);
  require(p.x > 0, "--x must be positive");
  require(p.grid >= 2, "--grid must be >= 2");
  auto sd = spec_omega_closed_form(p.q, p.x);
  auto cmp = compare_spectrum(p.q, p.x, p.grid, p.K);
  Report r;
  r.result = sd.to_json(p.K);
  r.result["grid_agreement"] = cmp.to_json();
  r.pass = cmp.mismatches.empty();
  r.header = {"c0", "right", "checked", "mismatches"};
  r.rows.push_back({fmt(sd.c0), fmt(sd.right), std::to_string(cmp.checked), std::to_string(cmp.mismatches.size())});
  return r;
}

// ---- fdqg

struct LoadedInstance {
  FinitePQG G;
  std::optional<GroupoidData> groupoid;
};

LoadedInstance load_instance(const Params& p) {
  require(!p.file.empty(), "an instance file is required");
  std::ifstream in(p.file);
  require(static_cast<bool>(in), "cannot read " + p.file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
  LoadedInstance li;
  try {
    if (j.contains("arrows")) {
      require(p.form == "functions" || p.form == "algebra", "--form is functions or algebra");
      li.groupoid = groupoid_from_json(j);
      li.G = p.form == "functions" ? from_finite_groupoid_functions(*li.groupoid)
                                   : from_finite_groupoid_algebra(*li.groupoid);
    } else {
      li.G = FinitePQG::from_json(j);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("malformed instance: ") + e.what());
  }
  return li;
}

Report fdqg_check(const Params& p) {
  auto li = load_instance(p);
  auto ax = verify_axioms(li.G);
  Report r;
  r.result = ax.to_json();
  r.result["instance"] = li.G.name;
  r.pass = ax.all_pass();
  r.header = {"axiom", "pass", "residual"};
  json summary = json::array();
  for (const auto& a : ax.axioms) {
    r.rows.push_back({a.name, a.pass ? "PASS" : "FAIL", fmt(a.residual)});
    summary.push_back("(" + a.name + "): " + (a.pass ? "PASS" : "FAIL"));
  }
  r.result["summary"] = summary;
  return r;
}

Report fdqg_haar(const Params& p) {
  auto li = load_instance(p);
  CesaroOptions opt;
  opt.tol = p.tol;
  opt.seed = p.seed;
  auto hc = haar_cesaro(li.G, opt);
  auto hl = haar_linear_solve(li.G);
  double gap = family_distance(hc, hl);
  Report r;
  r.result = {{"instance", li.G.name}, {"cesaro", hc.to_json(li.G)}, {"linear", hl.to_json(li.G)}, {"agreement", gap}};
  r.pass = hc.ok() && hl.ok() && gap < 1e-8;
  if (li.groupoid && p.form == "functions") {
    HaarFamily oracle;
    oracle.phi = uniform_haar_oracle(*li.groupoid);
    double d = family_distance(oracle, hl);
    r.result["uniform_oracle_distance"] = d;
    r.pass = r.pass && d < 1e-10;
  }
  return r;
}

Report fdqg_reps(const Params& p) {
  auto li = load_instance(p);
  Report r;
  auto E = trivial_rep(li.G);
  auto EE = tensor_reps(li.G, E, E);
  auto vE = verify_rep(li.G, E);
  auto vEE = verify_rep(li.G, EE);
  double iso = rep_distance(E, EE);
  json reps = {{"E", vE.to_json()}, {"E(.)E", vEE.to_json()}, {"E(.)E_vs_E", iso}};
  r.pass = vE.pass() && vEE.pass() && iso < 1e-12;
  if (li.groupoid && p.form == "functions") {
    auto X = groupoid_rep_functions(*li.groupoid, trivial_groupoid_rep(*li.groupoid));
    auto vX = verify_rep(li.G, X);
    auto vXE = verify_rep(li.G, tensor_reps(li.G, X, E));
    reps["groupoid_trivial"] = vX.to_json();
    reps["groupoid_trivial(.)E"] = vXE.to_json();
    r.pass = r.pass && vX.pass() && vXE.pass();
  }
  r.result = {{"instance", li.G.name}, {"representations", reps}};
  return r;
}

// ---- fixtures

Report fixtures_generate(const Params& p) {
  namespace fs = std::filesystem;
  fs::create_directories(p.dir);
  std::vector<GroupoidData> gs = {pair_groupoid(2), cyclic_group(2), cyclic_group(3),
                                  product_groupoid(symmetric_group3(), pair_groupoid(2)),
                                  disjoint_union(pair_groupoid(2), cyclic_group(2)), trivial_group()};
  json files = json::array();
  auto write = [&](const std::string& name, const json& j) {
    fs::path path = fs::path(p.dir) / name;
    std::ofstream o(path);
    require(static_cast<bool>(o), "cannot write " + path.string());
    o << j.dump(2) << "\n";
    files.push_back(path.string());
  };
  for (const auto& g : gs) {
    write("groupoid_" + g.name + ".json", to_json(g));
    write("fun_" + g.name + ".json", from_finite_groupoid_functions(g).to_json());
    write("alg_" + g.name + ".json", from_finite_groupoid_algebra(g).to_json());
  }
  write("raum.json", from_category_functions(raum_category()).to_json());
  Report r;
  r.result = {{"files", files}};
  return r;
}

// ---- output

void emit(const Report& rep, const std::string& command, const json& config, const Params& p) {
  std::ostringstream s;
  if (p.format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string& c = cells[i];
        bool quote = c.find_first_of(",\"\n") != std::string::npos;
        if (i) s << ',';
        if (quote) {
          s << '"';
          for (char ch : c) s << (ch == '"' ? "\"\"" : std::string(1, ch));
          s << '"';
        } else {
          s << c;
        }
      }
      s << '\n';
    };
    line(rep.header);
    for (const auto& row : rep.rows) line(row);
  } else {
    json j = {{"command", command}, {"config", config}, {"pass", rep.pass}, {"result", rep.result}};
    s << j.dump(2) << '\n';
  }
  if (p.out.empty()) {
    std::cout << s.str();
  } else {
    std::ofstream o(p.out);
    if (!o) throw std::runtime_error("cannot write " + p.out);
    o << s.str();
  }
}

// Option values arrive as strings; numbers are stored as numbers.
json config_value(const std::string& v) {
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) return v;
  if (v.find_first_of(".eEin") == std::string::npos) return std::stoll(v);
  return d;
  return v;
}

json config_of(const CLI::App* leaf) {
  json c = json::object();
  for (const CLI::App* a = leaf; a; a = a->get_parent())
    for (const CLI::Option* o : a->get_options()) {
      if (o->get_name() == "--help" || o->get_name() == "-h") continue;
      std::string name = o->get_single_name();
      if (c.contains(name)) continue;
      if (o->count() > 0) {
        auto res = o->results();
        json vals = json::array();
        for (const auto& v : res) vals.push_back(config_value(v));
        c[name] = res.size() == 1 && o->get_expected_max() == 1 ? vals[0] : vals;
      } else if (!o->get_default_str().empty()) {
        c[name] = config_value(o->get_default_str());
      }
    }
  return c;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"pcqg: partial compact quantum groups and dynamical quantum SU(2) checks"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  Params p;
  app.add_option("--out,-o", p.out, "report file (default stdout)");
  app.add_option("--format", p.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", p.tol, "relation tolerance");
  app.add_option("--seed", p.seed, "seed for sampled checks");

  using Handler = std::function<Report(const Params&)>;
  std::vector<std::pair<CLI::App*, Handler>> leaves;
  auto group = [&](const std::string& name, const std::string& desc) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, const std::string& desc, Handler h) {
    auto* s = g->add_subcommand(name, desc);
    s->fallthrough();
    leaves.push_back({s, std::move(h)});
    return s;
  };
  auto opt_q = [&](CLI::App* s) { s->add_option("--q", p.q, "deformation parameter in (0,1)"); };
  auto opt_x = [&](CLI::App* s) { s->add_option("--x", p.x, "lattice parameter x > 0"); };
  auto opt_c = [&](CLI::App* s) { s->add_option("--c", p.c, "Casimir parameter"); };
  auto opt_win = [&](CLI::App* s) {
    s->add_option("--window", p.window, "window size per axis (odd)");
  };

  auto* csets = group("csets", "c-set classification");
  {
    auto* s = leaf(csets, "classify", "symbolic classification", csets_classify);
    opt_q(s);
    opt_c(s);
    s->add_option("--lattice-base", p.lattice_base, "restrict to base q^(Z/step); 0 for none");
    s->add_option("--lattice-step", p.lattice_step, "1 or 2")->check(CLI::IsMember({1, 2}));
    s = leaf(csets, "brute", "brute-force search on anchor q^(2k), |k| <= N", csets_brute);
    opt_q(s);
    opt_c(s);
    s->add_option("--window", p.N, "window exponent N");
    s->add_option("--anchor", p.anchor, "orbit anchor");
    s = leaf(csets, "compare", "classifier against brute force over a c grid", csets_compare);
    s->add_option("--q", p.qs, "q values");
    s->add_option("--grid", p.cset_grid, "uniform c points");
    s->add_option("--window", p.N, "window exponent N");
    s->add_option("--K", p.K, "exceptional exponents up to K");
  }
  auto* uq = group("uq", "U_q(su(1,1)) representations");
  for (auto [name, h] : {std::pair<const char*, Handler>{"reps", uq_reps}, {"verify", uq_verify}}) {
    auto* s = leaf(uq, name, name == std::string("reps") ? "compatible sets" : "relation checks", h);
    opt_q(s);
    opt_c(s);
    s->add_option("--y", p.y, "lattice parameter y > 0");
    s->add_option("--truncation", p.truncation, "points kept of infinite sets");
  }
  auto* dyn = group("dyn", "dynamical quantum SU(2)");
  {
    auto* s = leaf(dyn, "build", "build pi_c", dyn_build);
    opt_q(s);
    opt_x(s);
    opt_c(s);
    opt_win(s);
    s->add_flag("--matrices", p.matrices, "include generator matrices");
    s = leaf(dyn, "verify", "relation suite on pi_c", dyn_verify);
    opt_q(s);
    opt_x(s);
    opt_c(s);
    opt_win(s);
    s = leaf(dyn, "coproduct", "relations of the coproduct images", dyn_coproduct);
    opt_q(s);
    opt_x(s);
    s->add_option("--c1", p.c1, "Casimir parameter of the first factor");
    s->add_option("--c2", p.c2, "Casimir parameter of the second factor");
    s->add_option("--window", p.coproduct_window, "window size per axis (odd)");
    s = leaf(dyn, "antipode", "antipode checks", dyn_antipode);
    opt_q(s);
    opt_x(s);
    opt_c(s);
    opt_win(s);
    s = leaf(dyn, "reduce", "rewrite a word to normal form", dyn_reduce);
    opt_q(s);
    opt_x(s);
    s->add_option("--word", p.word, "word, e.g. \"a'gP(0,1)d\"")->required();
    s->add_option("--c", p.cs, "oracle c values");
    opt_win(s);
    s = leaf(dyn, "xsym", "x <-> 1/x symmetry", dyn_xsym);
    opt_q(s);
    opt_x(s);
    opt_c(s);
    opt_win(s);
  }
  auto* irr = group("irreps", "irreducible representations pi_{S,T}");
  {
    auto* s = leaf(irr, "enumerate", "list admissible pairs (S, T)", irreps_enumerate);
    opt_q(s);
    opt_x(s);
    opt_c(s);
    s = leaf(irr, "build", "build and verify pi_{S,T}", irreps_build);
    opt_q(s);
    opt_x(s);
    opt_c(s);
    s->add_option("--index", p.index, "pair index; -1 for all");
    s->add_option("--truncation", p.truncation, "points kept of infinite sets");
  }
  auto* spec = group("spectrum", "spectrum of the Casimir");
  {
    auto* s = leaf(spec, "closed", "closed form", spectrum_closed);
    opt_q(s);
    opt_x(s);
    s->add_option("--K", p.K, "exponent range of listed discrete points");
    s = leaf(spec, "brute", "membership from irreducible pairs", spectrum_brute);
    opt_q(s);
    opt_x(s);
    s->add_option("--grid", p.grid, "uniform c points");
    s->add_option("--K", p.K, "exceptional exponents up to K");
    s = leaf(spec, "compare", "closed form against brute force", spectrum_compare);
    opt_q(s);
    opt_x(s);
    s->add_option("--grid", p.grid, "uniform c points");
    s->add_option("--K", p.K, "exceptional exponents up to K");
  }
  auto* fd = group("fdqg", "finite partial compact quantum groups");
  for (auto [name, h, desc] : {std::tuple<const char*, Handler, const char*>{"check", fdqg_check, "axioms"},
                               {"haar", fdqg_haar, "Haar family"},
                               {"reps", fdqg_reps, "representations"}}) {
    auto* s = leaf(fd, name, desc, h);
    s->add_option("file", p.file, "instance or groupoid JSON")->required();
    s->add_option("--form", p.form, "for groupoid files: functions or algebra");
  }
  auto* fx = group("fixtures", "fixture files");
  {
    auto* s = leaf(fx, "generate", "write instance and groupoid files", fixtures_generate);
    s->add_option("--dir", p.dir, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (auto& [s, h] : leaves) {
    if (!s->parsed()) continue;
    std::string command = s->get_parent()->get_name() + " " + s->get_name();
    try {
      Report rep = h(p);
      if (p.format == "csv" && rep.header.empty()) throw UsageError("--format csv is only available for flat tables");
      emit(rep, command, config_of(s), p);
      return rep.pass ? kExitPass : kExitFail;
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::logic_error& e) {
      std::cerr << "invalid configuration: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitFail;
    }
  }
  return kExitUsage;
}

}  // namespace pcqg::cli
