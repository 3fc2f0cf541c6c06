#include <knwznw/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace knwznw;

namespace {

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

Json points_json(const Config& cfg) {
  Json a = Json::array();
  for (const auto& p : cfg.points()) a.push_back(p.str());
  return a;
}

DegreeWindow window_from(const RunConfig& rc, const std::string& lo, const std::string& hi) {
  DegreeWindow w = rc.window;
  if (!lo.empty()) w.lo = parse_int_flag(lo, "min");
  if (!hi.empty()) w.hi = parse_int_flag(hi, "max");
  if (w.lo > w.hi) throw ConfigError("degree window: min exceeds max");
  return w;
}

Json cmd_basis(const RunConfig& rc, const std::string& lambda_s, const std::string& n_s, const std::string& p_s) {
  const int lambda = parse_int_flag(lambda_s, "lambda"), n = parse_int_flag(n_s, "n"), p = parse_int_flag(p_s, "p");
  if (lambda < -1 || lambda > 2) throw ConfigError("--lambda must be one of -1, 0, 1, 2");
  const Config cfg = rc.config();
  if (p < 1 || p > cfg.size()) throw ConfigError("--p must name a marked point 1.." + std::to_string(cfg.size()));
  const KNBasis b(cfg);
  const BasisElement& e = b.element({lambda, n, p});
  Json orders = Json::object();
  for (int i = 1; i <= cfg.size(); ++i) orders[std::to_string(i)] = section_order(e.section, cfg.marked(i));
  orders["infinity"] = section_order(e.section, PointZ::infinity());
  return {{"lambda", lambda}, {"n", n}, {"p", p}, {"points", points_json(cfg)}, {"num", to_json(e.section.value.num())},
          {"den", to_json(e.section.value.den())}, {"orders", orders}, {"adjusted", e.adjusted}};
}

Json cmd_table(const RunConfig& rc, const std::string& kind_s, DegreeWindow w) {
  const bool functions = kind_s == "A";
  if (!functions && kind_s != "L") throw ConfigError("--kind must be A or L");
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const int lambda = functions ? 0 : -1, N = b.size();
  Json entries = Json::array();
  for (int n = w.lo; n <= w.hi; ++n)
    for (int p = 1; p <= N; ++p)
      for (int m = w.lo; m <= w.hi; ++m)
        for (int r = 1; r <= N; ++r) {
          const GradedElement& out = functions ? t.product(n, p, m, r) : t.bracket(n, p, m, r);
          if (out.is_zero()) continue;
          entries.push_back({{"left", {lambda, n, p}}, {"right", {lambda, m, r}}, {"result", to_json(out)}});
        }
  const auto g = grading_report(t, functions ? AlgebraKind::functions : AlgebraKind::vector_fields, w);
  return {{"kind", kind_s}, {"points", points_json(b.config())}, {"window", {w.lo, w.hi}}, {"entries", entries},
          {"lower_shift", g.lower_shift}, {"upper_shift", g.upper_shift}};
}

Json cmd_cocycle(const RunConfig& rc, const std::string& kind_s, DegreeWindow w) {
  const bool gamma = kind_s == "gamma";
  if (!gamma && kind_s != "chi") throw ConfigError("--kind must be gamma or chi");
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const ProjectiveConnection conn{rc.connection.value_or(RationalFunction())};
  const int lambda = gamma ? 0 : -1;
  const auto rep = grading_report(t, gamma ? AlgebraKind::gamma : AlgebraKind::chi, w, conn);
  Json entries = Json::array();
  for (const auto& x : rep.witnesses)
    entries.push_back({{"left", {lambda, x.n, x.p}}, {"right", {lambda, x.m, x.r}}, {"result", to_json(x.value)}});
  Json out = {{"kind", kind_s}, {"points", points_json(b.config())}, {"window", {w.lo, w.hi}}, {"entries", entries},
              {"support", {rep.support_lowest ? Json(*rep.support_lowest) : Json(), rep.support_highest ? Json(*rep.support_highest) : Json()}}};
  if (!gamma) out["connection_R"] = to_json(conn.R);
  return out;
}

Json cmd_affine(const RunConfig& rc, DegreeWindow w) {
  const GaugeAlgebra g = GaugeAlgebra::make(rc.lie);
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const AffineAlgebra alg(g, t);
  const int N = b.size();
  Json entries = Json::array();
  for (int a = 0; a < g.dim(); ++a)
    for (int n = w.lo; n <= w.hi; ++n)
      for (int p = 1; p <= N; ++p)
        for (int c = 0; c < g.dim(); ++c)
          for (int m = w.lo; m <= w.hi; ++m)
            for (int r = 1; r <= N; ++r) {
              const AffineElement x = alg.bracket_generators(a, n, p, c, m, r);
              if (x == AffineElement(g.dim())) continue;
              const Json j = to_json(x, g);
              entries.push_back({{"left", {g.labels()[static_cast<std::size_t>(a)], n, p}},
                                 {"right", {g.labels()[static_cast<std::size_t>(c)], m, r}},
                                 {"result", j["loop"]},
                                 {"central", j["central"]}});
            }
  return {{"algebra", to_string(rc.lie)}, {"form", g.normalization()}, {"points", points_json(b.config())},
          {"window", {w.lo, w.hi}}, {"entries", entries}};
}

Json cmd_module(const RunConfig& rc, const std::string& gen, const std::string& n_s, const std::string& p_s,
                const std::string& degree_s) {
  const GaugeAlgebra g = GaugeAlgebra::make(rc.lie);
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const AffineAlgebra alg(g, t);
  const InducedModule m(alg, rc.module_spec());
  Json slices = Json::array();
  for (int d = 0; d <= rc.depth; ++d) slices.push_back({{"degree", -d}, {"dimension", m.slice(-d).size()}});
  Json weights = Json::array();
  for (const auto& x : m.spec().weights) weights.push_back(x.str());
  Json out = {{"kind", to_string(rc.module)}, {"algebra", to_string(rc.lie)}, {"points", points_json(b.config())},
              {"weights", weights}, {"level", rc.level.str()}, {"depth", rc.depth}, {"slices", slices}};
  if (rc.width) out["width"] = *rc.width;
  if (rc.module != ModuleKind::verma) {
    const auto diag = truncated_coinvariants(m);
    out["coinvariants"] = {{"slice_dim", diag.slice_dim}, {"relations_rank", diag.relations_rank},
                           {"dimension", diag.dimension}, {"all_reduced", diag.all_reduced}};
  }
  if (!gen.empty()) {
    const int a = g.index_of(gen);
    const int n = parse_int_flag(n_s.empty() ? "0" : n_s, "n"), p = parse_int_flag(p_s.empty() ? "1" : p_s, "p");
    const int from = parse_int_flag(degree_s.empty() ? "0" : degree_s, "degree");
    if (p < 1 || p > b.size()) throw ConfigError("--p must name a marked point 1.." + std::to_string(b.size()));
    if (from > 0 || from < -rc.depth) throw ConfigError("--degree must lie in [-depth, 0]");
    const auto& src = m.slice(from);
    const int to = from + n;
    if (to > 0) {
      out["action"] = {{"mode", {gen, n, p}}, {"from_degree", from}, {"to_degree", to}, {"matrix", Json::array()}};
      return out;
    }
    if (to < -rc.depth) throw DomainError("action leaves the truncation: target degree " + std::to_string(to));
    const auto& dst = m.slice(to);
    Matrix mat(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const ModuleVector v = m.act(AffineElement::loop(g.dim(), a, n, p), ModuleVector::basis(src[j]));
      for (std::size_t i = 0; i < dst.size(); ++i) mat(i, j) = v.coeff(dst[i]);
    }
    out["action"] = {{"mode", {gen, n, p}}, {"from_degree", from}, {"to_degree", to}, {"matrix", to_json(mat)}};
  }
  return out;
}

Json cmd_sugawara(const RunConfig& rc, const std::vector<std::string>& pair) {
  if (rc.module == ModuleKind::verma) throw ConfigError("sugawara needs module kind weyl or fock");
  const GaugeAlgebra g = GaugeAlgebra::make(rc.lie);
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const AffineAlgebra alg(g, t);
  const InducedModule m(alg, rc.module_spec());
  const Sugawara sug(m);
  const int k = parse_int_flag(pair[0], "k"), r = parse_int_flag(pair[1], "r");
  const int l = parse_int_flag(pair[2], "m"), s = parse_int_flag(pair[3], "s");
  for (int q : {r, s})
    if (q < 1 || q > b.size()) throw ConfigError("point index must lie in 1.." + std::to_string(b.size()));
  const auto e = sugawara_commutator_audit(sug, t, {k, r}, {l, s});
  return {{"pair", {{k, r}, {l, s}}}, {"is_scalar", e.is_scalar}, {"scalar", e.is_scalar ? Json(e.scalar.str()) : Json()},
          {"chi", e.chi.str()}, {"ratio", e.ratio ? Json(e.ratio->str()) : Json()}, {"window_depth", e.window_depth},
          {"vectors", e.vectors}, {"tie_rule", "keep_written"}};
}

Json cmd_kz(const RunConfig& rc) {
  if (rc.module == ModuleKind::verma) throw ConfigError("kz needs module kind weyl or fock");
  const auto sys = kz_matrices(rc.config(), rc.lie, rc.module_spec().weights, rc.level, rc.depth);
  Json mats = Json::array(), resid = Json::array(), scalars = Json::array(), tangents = Json::array();
  for (const auto& a : sys.matrices) mats.push_back(to_json(a));
  for (const auto& a : sys.residuals) resid.push_back(to_json(a));
  for (const auto& s : sys.residual_scalars) scalars.push_back(s ? Json(s->str()) : Json());
  for (const auto& t : sys.tangents)
    tangents.push_back({{"point", t.point}, {"field", to_json(t.field)}, {"leading", t.leading.str()}, {"orders", t.orders}});
  std::string flatness = "n/a";
  if (!sys.partial && flatness_check(sys).applicable) flatness = flatness_check(sys).ok ? "ok" : "failed";
  const int sign = sys.sign_convention();
  Json weights = Json::array();
  for (const auto& w : sys.weights) weights.push_back(w.str());
  return {{"points", points_json(sys.config)},
          {"algebra", to_string(sys.lie)},
          {"weights", weights},
          {"level", sys.level.str()},
          {"depth", sys.depth},
          {"kappa", sys.kappa ? Json(sys.kappa->str()) : Json()},
          {"matrices", mats},
          {"residuals", resid},
          {"residual_zero", sys.residual_zero},
          {"residual_scalars", scalars},
          {"sign_convention", sign > 0 ? "+1" : (sign < 0 ? "-1" : "0")},
          {"flatness", flatness},
          {"status", sys.partial ? "budget-exhausted" : "reduced-to-degree-0"},
          {"tangent_fields", tangents},
          {"global_fields", sys.global_fields},
          {"equation", "dPhi/dz_p = -A_p Phi"}};
}

std::pair<Json, bool> cmd_verify(const RunConfig& rc, const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) names = {suite};
  else throw ConfigError("unknown suite: " + suite);
  std::vector<SuiteReport> reports(names.size());
  std::vector<std::string> errors(names.size());
  parallel_for(names.size(), [&](std::size_t i) {
    try {
      reports[i] = run_suite(names[i], rc);
    } catch (const DomainError& e) {
      reports[i].suite = names[i];
      errors[i] = e.what();
    }
  });
  Json suites = Json::object();
  bool all = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& r = reports[i];
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(c.to_json());
    const bool pass = errors[i].empty() && r.pass();
    all = all && pass;
    Json s = {{"pass", pass}, {"checks", checks}};
    if (!r.skipped.empty()) s["skipped"] = r.skipped;
    if (!errors[i].empty()) s["error"] = errors[i];
    suites[names[i]] = s;
    std::cerr << names[i] << ": " << (pass ? "pass" : "FAIL") << " (" << r.seconds << " s)\n";
  }
  return {{{"suite", suite}, {"points", points_json(rc.config())}, {"pass", all}, {"suites", suites}}, all};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krichever-Novikov algebras, Sugawara operators and KZ matrices at genus 0"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  int indent = 2;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--json-indent", indent, "indentation of the JSON output; negative for one line");

  std::string lambda_s = "0", n_s = "0", p_s = "1";
  auto* basis = app.add_subcommand("basis", "one basis element f^lambda_{n,p}");
  basis->add_option("--lambda", lambda_s, "weight: -1, 0, 1 or 2");
  basis->add_option("--n", n_s, "degree");
  basis->add_option("--p", p_s, "marked point, 1-based");

  std::string kind_s, lo_s, hi_s;
  auto* table = app.add_subcommand("table", "structure constants of A (products) or L (brackets)");
  table->add_option("--kind", kind_s, "A or L")->required();
  auto* cocycle = app.add_subcommand("cocycle", "values of gamma or chi on basis pairs");
  cocycle->add_option("--kind", kind_s, "gamma or chi")->required();
  auto* affine = app.add_subcommand("affine", "brackets of the affine algebra on generators");
  for (auto* s : {table, cocycle, affine}) {
    s->add_option("--min", lo_s, "lowest degree (default from the config window)");
    s->add_option("--max", hi_s, "highest degree");
  }

  std::string gen_s, degree_s;
  auto* module = app.add_subcommand("module", "slice dimensions and optional mode action matrices");
  module->add_option("--generator", gen_s, "generator label, e.g. e, h, f or u");
  module->add_option("--n", n_s, "mode degree");
  module->add_option("--p", p_s, "mode point");
  module->add_option("--degree", degree_s, "source slice degree (0 or negative)");

  std::vector<std::string> pair{"2", "1", "-2", "1"};
  auto* sugawara = app.add_subcommand("sugawara", "commutator audit of two Sugawara operators");
  sugawara->add_option("--k", pair[0], "degree of the first operator");
  sugawara->add_option("--r", pair[1], "point of the first operator");
  sugawara->add_option("--m", pair[2], "degree of the second operator");
  sugawara->add_option("--s", pair[3], "point of the second operator");

  auto* kz = app.add_subcommand("kz", "KZ matrices on the degree-0 slice");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--suite", suite, "basis, algebra, affine, module, sugawara, kz or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    const RunConfig rc = parse_run_config(load_config(config_path));
    (void)rc.config();
    Json out;
    bool ok = true;
    if (*basis) out = cmd_basis(rc, lambda_s, n_s, p_s);
    else if (*table) out = cmd_table(rc, kind_s, window_from(rc, lo_s, hi_s));
    else if (*cocycle) out = cmd_cocycle(rc, kind_s, window_from(rc, lo_s, hi_s));
    else if (*affine) out = cmd_affine(rc, window_from(rc, lo_s, hi_s));
    else if (*module) out = cmd_module(rc, gen_s, n_s, p_s, degree_s);
    else if (*sugawara) out = cmd_sugawara(rc, pair);
    else if (*kz) out = cmd_kz(rc);
    else if (*verify) std::tie(out, ok) = cmd_verify(rc, suite);
    std::cout << out.dump(indent < 0 ? -1 : indent) << "\n";
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
