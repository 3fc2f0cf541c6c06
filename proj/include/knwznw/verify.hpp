#ifndef KNWZNW_VERIFY_HPP
#define KNWZNW_VERIFY_HPP

#include "json_io.hpp"

#include <chrono>
#include <random>
#include <string>
#include <vector>

namespace knwznw {

struct CheckResult {
  std::string name;
  bool pass = true;
  int cases = 0;
  Json counterexample;  // null when passing
  Json detail;          // measured values worth reporting

  Json to_json() const {
    return {{"name", name}, {"pass", pass}, {"cases", cases}, {"counterexample", counterexample}, {"detail", detail}};
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  std::string skipped;  // reason, empty when run
  double seconds = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"basis", "algebra", "affine", "module", "sugawara", "kz"};
  return names;
}

namespace detail {

struct Recorder {
  CheckResult r;
  explicit Recorder(std::string name) { r.name = std::move(name); }
  void check(bool ok, const Json& witness) {
    ++r.cases;
    if (!ok && r.pass) {
      r.pass = false;
      r.counterexample = witness;
    }
  }
};

inline int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rat pick_rat(std::mt19937& rng) {
  Rat r;
  while (r.is_zero()) r = Rat(pick(rng, -5, 5), pick(rng, 1, 3));
  return r;
}

inline GradedElement random_element(std::mt19937& rng, int weight, int N, int lo, int hi) {
  GradedElement g(weight);
  for (int k = 0; k < 2; ++k) g.add(pick(rng, lo, hi), pick(rng, 1, N), pick_rat(rng));
  return g;
}

inline AffineElement random_affine(std::mt19937& rng, int dim_g, int N, int lo, int hi, bool central) {
  AffineElement x(dim_g);
  for (int k = 0; k < 2; ++k) x.add(pick(rng, lo, hi), pick(rng, 1, N), pick(rng, 0, dim_g - 1), pick_rat(rng));
  if (central) x.add_central(pick_rat(rng));
  return x;
}

inline SuiteReport basis_suite(const RunConfig& rc) {
  SuiteReport rep{"basis"};
  const Config cfg = rc.config();
  const KNBasis b(cfg);
  const int N = cfg.size();
  Recorder dual("duality");
  for (int lambda : {-1, 0, 1, 2})
    for (int n = -4; n <= 4; ++n)
      for (int m = -4; m <= 4; ++m)
        for (int p = 1; p <= N; ++p)
          for (int r = 1; r <= N; ++r) {
            const Rat v = kn_pairing(cfg, b.section(lambda, n, p), b.section(1 - lambda, -m, r));
            dual.check(v == Rat(n == m && p == r ? 1 : 0), {{"lambda", lambda}, {"n", n}, {"p", p}, {"m", m}, {"r", r}, {"value", to_json(v)}});
          }
  rep.checks.push_back(dual.r);

  Recorder book("order book");
  for (int lambda : {-1, 0, 1, 2})
    for (int n = -4; n <= 4; ++n)
      for (int p = 1; p <= N; ++p) {
        const Section& s = b.section(lambda, n, p);
        int total = section_order(s, PointZ::infinity());
        for (int i = 1; i <= N; ++i) total += section_order(s, cfg.marked(i));
        book.check(total == -2 * lambda, {{"lambda", lambda}, {"n", n}, {"p", p}, {"total", total}});
      }
  rep.checks.push_back(book.r);

  Recorder round("expansion round trip");
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    const int lambda = pick(rng, -1, 2);
    const GradedElement g = random_element(rng, lambda, N, -3, 3);
    const GradedElement back = expand_in_basis(b, b.evaluate(g));
    round.check(back == g, {{"lambda", lambda}, {"element", to_json(g)}, {"expanded", to_json(back)}});
  }
  rep.checks.push_back(round.r);
  return rep;
}

inline SuiteReport algebra_suite(const RunConfig& rc) {
  SuiteReport rep{"algebra"};
  const Config cfg = rc.config();
  const KNBasis b(cfg);
  const StructureTables t(b);
  const int N = cfg.size();
  std::mt19937 rng(11);

  Recorder jac("vector field Jacobi");
  Recorder chi_cocycle("chi cocycle identity");
  Recorder gamma_cocycle("gamma cocycle identity");
  for (int k = 0; k < 15; ++k) {
    const auto e = random_element(rng, -1, N, -2, 2), f = random_element(rng, -1, N, -2, 2), g = random_element(rng, -1, N, -2, 2);
    const GradedElement j = t.bracket(t.bracket(e, f), g) + t.bracket(t.bracket(f, g), e) + t.bracket(t.bracket(g, e), f);
    jac.check(j.is_zero(), {{"e", to_json(e)}, {"f", to_json(f)}, {"g", to_json(g)}});
    const Rat c = t.chi0(t.bracket(e, f), g) + t.chi0(t.bracket(f, g), e) + t.chi0(t.bracket(g, e), f);
    chi_cocycle.check(c.is_zero(), {{"e", to_json(e)}, {"f", to_json(f)}, {"g", to_json(g)}, {"value", to_json(c)}});
    const auto u = random_element(rng, 0, N, -2, 2), v = random_element(rng, 0, N, -2, 2), w = random_element(rng, 0, N, -2, 2);
    const Rat s = t.gamma(t.product(u, v), w) + t.gamma(t.product(v, w), u) + t.gamma(t.product(w, u), v);
    gamma_cocycle.check(s.is_zero(), {{"f", to_json(u)}, {"g", to_json(v)}, {"h", to_json(w)}, {"value", to_json(s)}});
  }
  rep.checks.push_back(jac.r);
  rep.checks.push_back(chi_cocycle.r);
  rep.checks.push_back(gamma_cocycle.r);

  Recorder grading("almost grading");
  const DegreeWindow w{-3, 3};
  for (auto kind : {AlgebraKind::functions, AlgebraKind::vector_fields}) {
    const auto g = grading_report(t, kind, w);
    grading.check(g.lower_shift == 0, {{"kind", to_string(kind)}, {"lower_shift", g.lower_shift}, {"upper_shift", g.upper_shift}});
    grading.r.detail[to_string(kind)] = {{"lower_shift", g.lower_shift}, {"upper_shift", g.upper_shift}};
  }
  for (auto kind : {AlgebraKind::gamma, AlgebraKind::chi}) {
    const auto g = grading_report(t, kind, w);
    const bool ok = !g.support_highest || *g.support_highest <= 0;
    grading.check(ok, {{"kind", to_string(kind)}, {"support_highest", g.support_highest ? Json(*g.support_highest) : Json()}});
    grading.r.detail[to_string(kind)] = {{"support_lowest", g.support_lowest ? Json(*g.support_lowest) : Json()},
                                         {"support_highest", g.support_highest ? Json(*g.support_highest) : Json()}};
  }
  rep.checks.push_back(grading.r);

  if (rc.connection) {
    Recorder cob("coboundary against R = 0");
    const ProjectiveConnection r1{*rc.connection};
    for (int k = 0; k < 10; ++k) {
      const auto e = random_element(rng, -1, N, -2, 2), f = random_element(rng, -1, N, -2, 2);
      const auto [diff, witness] = coboundary_compare(b, e, f, r1, {});
      cob.check(diff == witness, {{"e", to_json(e)}, {"f", to_json(f)}, {"difference", to_json(diff)}, {"expected", to_json(witness)}});
    }
    rep.checks.push_back(cob.r);
  }
  return rep;
}

inline SuiteReport affine_suite(const RunConfig& rc) {
  SuiteReport rep{"affine"};
  const GaugeAlgebra g = GaugeAlgebra::make(rc.lie);
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const AffineAlgebra alg(g, t);
  const int N = b.size();
  std::mt19937 rng(13);
  Recorder jac("affine Jacobi");
  Recorder anti("affine antisymmetry");
  for (int k = 0; k < 15; ++k) {
    const auto x = random_affine(rng, g.dim(), N, -2, 2, true), y = random_affine(rng, g.dim(), N, -2, 2, false),
               z = random_affine(rng, g.dim(), N, -2, 2, false);
    const auto j = alg.bracket(alg.bracket(x, y), z) + alg.bracket(alg.bracket(y, z), x) + alg.bracket(alg.bracket(z, x), y);
    jac.check(j == AffineElement(g.dim()), {{"x", to_json(x, g)}, {"y", to_json(y, g)}, {"z", to_json(z, g)}});
    anti.check(alg.bracket(x, y) == alg.bracket(y, x) * Rat(-1), {{"x", to_json(x, g)}, {"y", to_json(y, g)}});
  }
  rep.checks.push_back(jac.r);
  rep.checks.push_back(anti.r);

  Recorder psi("psi homomorphism");
  for (int k = 0; k < 15; ++k) {
    const auto x = random_affine(rng, g.dim(), N, 0, 3, true), y = random_affine(rng, g.dim(), N, 0, 3, false);
    const auto lhs = psi_project(b, alg.bracket(x, y));
    const auto px = psi_project(b, x), py = psi_project(b, y);
    bool ok = true;
    for (std::size_t p = 0; p < lhs.size(); ++p) ok = ok && lhs[p] == g.bracket(px[p], py[p]);
    psi.check(ok, {{"x", to_json(x, g)}, {"y", to_json(y, g)}});
  }
  rep.checks.push_back(psi.r);
  return rep;
}

inline SuiteReport module_suite(const RunConfig& rc) {
  SuiteReport rep{"module"};
  const GaugeAlgebra g = GaugeAlgebra::make(rc.lie);
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const AffineAlgebra alg(g, t);
  const InducedModule m(alg, rc.module_spec());
  const int N = b.size(), D = rc.depth;
  std::mt19937 rng(17);
  Recorder repr("representation property");
  int attempts = 0;
  while (attempts < 20) {
    const int d = pick(rng, 0, D), i = pick(rng, -D, D), j = pick(rng, -D, D);
    if (-d + std::min({0, i, j, i + j}) < -D) continue;
    const auto& slice = m.slice(-d);
    std::vector<PBWMonomial> usable;
    for (const auto& mono : slice)
      if (!rc.width || static_cast<int>(mono.string.size()) + 2 <= *rc.width) usable.push_back(mono);
    if (usable.empty()) continue;
    ++attempts;
    ModuleVector v;
    v.add(usable[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(usable.size()) - 1))], pick_rat(rng));
    AffineElement x(g.dim()), y(g.dim());
    x.add(i, pick(rng, 1, N), pick(rng, 0, g.dim() - 1), pick_rat(rng));
    x.add_central(pick_rat(rng));
    y.add(j, pick(rng, 1, N), pick(rng, 0, g.dim() - 1), pick_rat(rng));
    const auto lhs = m.act(alg.bracket(x, y), v);
    const auto rhs = m.act(x, m.act(y, v)) - m.act(y, m.act(x, v));
    repr.check(lhs == rhs, {{"x", to_json(x, g)}, {"y", to_json(y, g)}, {"v", to_json(v, g)}});
  }
  rep.checks.push_back(repr.r);

  Recorder dims("slice dimensions");
  Json sizes = Json::array();
  for (int d = 0; d <= D; ++d) sizes.push_back(m.slice(-d).size());
  dims.check(m.spec().kind == ModuleKind::verma || m.slice(0).size() == m.vacuum_dim(), {{"dimensions", sizes}});
  dims.r.detail = {{"dimensions", sizes}};
  rep.checks.push_back(dims.r);

  if (rc.module != ModuleKind::verma) {
    Recorder co("coinvariant diagnostic reduces");
    const auto diag = truncated_coinvariants(m);
    co.check(diag.all_reduced, {{"depth", D}});
    co.r.detail = {{"depth", diag.depth}, {"slice_dim", diag.slice_dim}, {"relations_rank", diag.relations_rank},
                   {"dimension", diag.dimension}};
    rep.checks.push_back(co.r);
  }
  return rep;
}

inline SuiteReport sugawara_suite(const RunConfig& rc) {
  SuiteReport rep{"sugawara"};
  if (rc.module == ModuleKind::verma) {
    rep.skipped = "sugawara checks need a finite degree-0 slice (weyl or fock)";
    return rep;
  }
  const GaugeAlgebra g = GaugeAlgebra::make(rc.lie);
  const KNBasis b(rc.config());
  const StructureTables t(b);
  const AffineAlgebra alg(g, t);
  const InducedModule m(alg, rc.module_spec());
  const Sugawara sug(m);
  const int N = b.size();
  Recorder central("commutators are central");
  Json audited = Json::array();
  for (int k = -1; k <= 1; ++k)
    for (int l = k; l <= 1; ++l)
      for (int r = 1; r <= std::min(N, 1); ++r)
        for (int s = 1; s <= N; ++s) {
          if (audit_window(rc.depth, k, l) < 0) continue;
          const auto e = sugawara_commutator_audit(sug, t, {k, r}, {l, s});
          central.check(e.is_scalar, {{"pair", {{k, r}, {l, s}}}});
          audited.push_back({{"pair", {{k, r}, {l, s}}}, {"scalar", e.is_scalar ? Json(e.scalar.str()) : Json()},
                             {"chi", e.chi.str()}});
        }
  central.r.detail = audited;
  rep.checks.push_back(central.r);
  if (N == 1 && audit_window(rc.depth, 2, -2) >= 0) {
    Recorder cv("central charge");
    const auto e = sugawara_commutator_audit(sug, t, {2, 1}, {-2, 1});
    const Rat want = rc.level * Rat(g.dim()) / (rc.level + g.dual_coxeter());
    cv.check(e.ratio && *e.ratio == want, {{"measured", e.ratio ? Json(e.ratio->str()) : Json()}, {"expected", want.str()}});
    cv.r.detail = {{"ratio", e.ratio ? Json(e.ratio->str()) : Json()}};
    rep.checks.push_back(cv.r);
  }
  return rep;
}

inline SuiteReport kz_suite(const RunConfig& rc) {
  SuiteReport rep{"kz"};
  if (rc.module == ModuleKind::verma) {
    rep.skipped = "KZ matrices need a finite degree-0 slice (weyl or fock)";
    return rep;
  }
  const auto sys = kz_matrices(rc.config(), rc.lie, rc.module_spec().weights, rc.level, rc.depth);
  const GaugeAlgebra g = GaugeAlgebra::make(rc.lie);
  Recorder status("all columns reduce");
  status.check(!sys.partial, nullptr);
  rep.checks.push_back(status.r);

  // kappa is only measurable when the classical form is nonzero somewhere.
  if (sys.kappa) {
    Recorder norm("normalisation |kappa| = 1/(c + k^v)");
    const Rat want = (rc.level + g.dual_coxeter()).inverse();
    norm.check(sys.kappa->abs() == want, {{"kappa", sys.kappa->str()}, {"expected", want.str()}});
    norm.r.detail = {{"kappa", sys.kappa->str()}, {"sign_convention", sys.sign_convention()}};
    rep.checks.push_back(norm.r);
  }

  Recorder resid("fit residual is zero");
  Json scalars = Json::array();
  for (const auto& s : sys.residual_scalars) scalars.push_back(s ? Json(s->str()) : Json());
  resid.check(sys.residual_zero, {{"residual_scalars", scalars}});
  resid.r.detail = {{"residual_scalars", scalars}};
  rep.checks.push_back(resid.r);

  if (!sys.partial) {
    const auto flat = flatness_check(sys);
    if (flat.applicable) {
      Recorder f("infinitesimal braid relations");
      f.check(flat.ok, {{"relations", flat.relations}});
      f.r.cases = flat.relations;
      rep.checks.push_back(f.r);
    }
  }
  return rep;
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, const RunConfig& rc) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  if (name == "basis") r = detail::basis_suite(rc);
  else if (name == "algebra") r = detail::algebra_suite(rc);
  else if (name == "affine") r = detail::affine_suite(rc);
  else if (name == "module") r = detail::module_suite(rc);
  else if (name == "sugawara") r = detail::sugawara_suite(rc);
  else if (name == "kz") r = detail::kz_suite(rc);
  else throw ConfigError("unknown suite: " + name);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace knwznw

#endif  // KNWZNW_VERIFY_HPP
