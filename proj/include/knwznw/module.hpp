#ifndef KNWZNW_MODULE_HPP
#define KNWZNW_MODULE_HPP

#include "affine.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace knwznw {

enum class ModuleKind { verma, weyl, fock };

inline std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::verma: return "verma";
    case ModuleKind::weyl: return "weyl";
    case ModuleKind::fock: return "fock";
  }
  return "?";
}

inline ModuleKind parse_module_kind(const std::string& s) {
  if (s == "verma") return ModuleKind::verma;
  if (s == "weyl") return ModuleKind::weyl;
  if (s == "fock") return ModuleKind::fock;
  throw DomainError("unknown module kind: " + s);
}

struct ModuleSpec {
  ModuleKind kind = ModuleKind::weyl;
  std::vector<Rat> weights;
  Rat level{1};
  int depth = 4;
  std::optional<int> width;
};

/// Current mode x_a (x) A_{n,p}. Field order is the PBW order: most negative
/// degree first, then point, then generator.
struct Mode {
  int n = 0;
  int p = 1;
  int a = 0;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

struct PBWMonomial {
  std::vector<Mode> string;
  int vacuum = 0;

  int degree() const {
    int d = 0;
    for (const auto& m : string) d += m.n;
    return d;
  }
  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
};

class ModuleVector {
public:
  ModuleVector() = default;
  static ModuleVector basis(PBWMonomial m, const Rat& c = Rat(1)) {
    ModuleVector v;
    v.add(std::move(m), c);
    return v;
  }

  const std::map<PBWMonomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const PBWMonomial& m, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const ModuleVector& v, const Rat& c) {
    if (c.is_zero()) return;
    for (const auto& [m, x] : v.terms_) add(m, x * c);
  }
  Rat coeff(const PBWMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  ModuleVector& operator+=(const ModuleVector& o) {
    add(o, Rat(1));
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    add(o, Rat(-1));
    return *this;
  }
  ModuleVector& operator*=(const Rat& s) {
    if (s.is_zero()) terms_.clear();
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(ModuleVector a, const Rat& s) { return a *= s; }
  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

  /// Degrees that occur, ascending.
  std::vector<int> degrees() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_) s.insert(m.degree());
    return {s.begin(), s.end()};
  }
  int min_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
    return d;
  }

private:
  std::map<PBWMonomial, Rat> terms_;
};

/// Raised when a result leaves the truncation window; lists the lost degrees.
class TruncationOverflow : public DomainError {
public:
  TruncationOverflow(std::vector<int> lost, int depth)
      : DomainError(message(lost, depth)), lost_(std::move(lost)) {}
  const std::vector<int>& lost_degrees() const { return lost_; }

private:
  static std::string message(const std::vector<int>& lost, int depth) {
    std::string s = "truncation overflow below degree -" + std::to_string(depth) + ": lost degrees";
    for (int d : lost) s += " " + std::to_string(d);
    return s;
  }
  std::vector<int> lost_;
};

/// Module induced from a representation of the non-negative part over the
/// marked points: the Verma module (one-dimensional Borel data) or the Weyl
/// module (tensor product of finite irreducibles).
class InducedModule {
public:
  InducedModule(const AffineAlgebra& alg, ModuleSpec spec) : alg_(alg), spec_(std::move(spec)) {
    const GaugeAlgebra& g = alg_.lie();
    const int N = alg_.basis().size();
    if (static_cast<int>(spec_.weights.size()) != N)
      throw DomainError("module needs " + std::to_string(N) + " weights, got " + std::to_string(spec_.weights.size()));
    if (spec_.depth < 0) throw DomainError("depth must be nonnegative");
    if (spec_.kind == ModuleKind::fock && g.kind() != LieKind::abelian1)
      throw DomainError("fock modules need the abelian algebra");
    if (spec_.kind == ModuleKind::verma) {
      if (!spec_.width) throw DomainError("verma modules need a width bound");
      if (*spec_.width < 0) throw DomainError("width bound must be nonnegative");
      vacuum_dim_ = 1;
      rho_.assign(static_cast<std::size_t>(N * g.dim()), Matrix(1, 1));
      for (int p = 1; p <= N; ++p)
        for (int a : g.cartan()) rho(a, p)(0, 0) = spec_.weights[static_cast<std::size_t>(p - 1)];
    } else {
      for (const auto& w : spec_.weights) factors_.push_back(finite_irrep(g, w));
      const auto dims = module_dims(factors_);
      vacuum_dim_ = 1;
      for (auto d : dims) vacuum_dim_ *= d;
      rho_.assign(static_cast<std::size_t>(N * g.dim()), Matrix());
      for (int p = 1; p <= N; ++p)
        for (int a = 0; a < g.dim(); ++a)
          rho(a, p) = on_factor(factors_[static_cast<std::size_t>(p - 1)].action[static_cast<std::size_t>(a)],
                                static_cast<std::size_t>(p - 1), dims);
    }
  }
  InducedModule(const InducedModule&) = delete;
  InducedModule& operator=(const InducedModule&) = delete;

  const AffineAlgebra& algebra() const { return alg_; }
  const ModuleSpec& spec() const { return spec_; }
  int points() const { return alg_.basis().size(); }
  std::size_t vacuum_dim() const { return vacuum_dim_; }
  const std::vector<FiniteModule>& factors() const { return factors_; }
  /// Action of x_a (x) A_{0,p} on the vacuum space.
  const Matrix& vacuum_action(int a, int p) const { return rho_[index(a, p)]; }

  bool is_creation(const Mode& m) const {
    if (m.n < 0) return true;
    if (m.n > 0 || spec_.kind != ModuleKind::verma) return false;
    const auto& nm = alg_.lie().n_minus();
    return std::find(nm.begin(), nm.end(), m.a) != nm.end();
  }

  /// Creation modes of degree n.
  std::vector<Mode> creation_modes(int n) const {
    std::vector<Mode> out;
    for (int p = 1; p <= points(); ++p)
      for (int a = 0; a < alg_.dim_g(); ++a)
        if (is_creation({n, p, a})) out.push_back({n, p, a});
    return out;
  }

  /// PBW basis of the degree-d slice (d <= 0).
  const std::vector<PBWMonomial>& slice(int d) const {
    if (d > 0) throw DomainError("slices have nonpositive degree");
    if (d < -spec_.depth) throw DomainError("slice " + std::to_string(d) + " lies below the truncation depth");
    {
      std::lock_guard lock(slice_mu_);
      auto it = slices_.find(d);
      if (it != slices_.end()) return it->second;
    }
    std::vector<PBWMonomial> out;
    std::vector<Mode> all;
    for (int n = d; n <= 0; ++n)
      for (const auto& m : creation_modes(n)) all.push_back(m);
    const int width = spec_.width.value_or(-d);
    std::vector<Mode> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int remaining) {
      if (remaining == 0)
        for (std::size_t v = 0; v < vacuum_dim_; ++v) out.push_back({cur, static_cast<int>(v)});
      if (static_cast<int>(cur.size()) >= width) return;
      for (std::size_t i = start; i < all.size(); ++i) {
        if (all[i].n < remaining) continue;
        if (all[i].n == 0 && remaining < 0) continue;
        cur.push_back(all[i]);
        rec(i, remaining - all[i].n);
        cur.pop_back();
      }
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    std::lock_guard lock(slice_mu_);
    return slices_.emplace(d, std::move(out)).first->second;
  }

  /// Exact action of a single mode; no truncation is applied.
  const ModuleVector& apply_mode(const Mode& g, const PBWMonomial& m) const {
    {
      std::lock_guard lock(memo_mu_);
      auto it = memo_.find({g, m});
      if (it != memo_.end()) return it->second;
    }
    ModuleVector r = compute(g, m);
    std::lock_guard lock(memo_mu_);
    return memo_.emplace(std::pair{g, m}, std::move(r)).first->second;
  }

  ModuleVector apply_mode(const Mode& g, const ModuleVector& v) const {
    ModuleVector out;
    for (const auto& [m, c] : v.terms()) out.add(apply_mode(g, m), c);
    return out;
  }

  ModuleVector act_unchecked(const AffineElement& x, const ModuleVector& v) const {
    ModuleVector out;
    for (const auto& [k, coeffs] : x.loop_part())
      for (std::size_t a = 0; a < coeffs.size(); ++a)
        if (!coeffs[a].is_zero()) out.add(apply_mode({k.first, k.second, static_cast<int>(a)}, v), coeffs[a]);
    if (!x.central().is_zero()) out.add(v, x.central() * spec_.level);
    return out;
  }

  /// Action of an affine element; overflow below the depth is an error.
  ModuleVector act(const AffineElement& x, const ModuleVector& v) const {
    ModuleVector out = act_unchecked(x, v);
    check_window(out);
    return out;
  }

  void check_window(const ModuleVector& v) const {
    std::vector<int> lost;
    for (int d : v.degrees())
      if (d < -spec_.depth) lost.push_back(d);
    if (spec_.width)
      for (const auto& [m, c] : v.terms())
        if (static_cast<int>(m.string.size()) > *spec_.width) {
          lost.push_back(m.degree());
          break;
        }
    if (!lost.empty()) throw TruncationOverflow(std::move(lost), spec_.depth);
  }

  ModuleVector vacuum(int index = 0) const { return ModuleVector::basis({{}, index}); }

  /// The element sum_p x (x) A_{0,p} = x (x) 1 for generator a.
  AffineElement constant_current(int a) const {
    AffineElement x(alg_.dim_g());
    for (int p = 1; p <= points(); ++p) x.add(0, p, a, Rat(1));
    return x;
  }

private:
  std::size_t index(int a, int p) const { return static_cast<std::size_t>(a * points() + (p - 1)); }
  Matrix& rho(int a, int p) { return rho_[index(a, p)]; }

  ModuleVector compute(const Mode& g, const PBWMonomial& m) const {
    if (m.string.empty()) {
      if (is_creation(g)) return ModuleVector::basis({{g}, m.vacuum});
      ModuleVector out;
      if (g.n > 0) return out;
      const Matrix& r = vacuum_action(g.a, g.p);
      for (std::size_t w = 0; w < vacuum_dim_; ++w)
        out.add(PBWMonomial{{}, static_cast<int>(w)}, r(w, static_cast<std::size_t>(m.vacuum)));
      return out;
    }
    const Mode& c1 = m.string.front();
    if (is_creation(g) && g <= c1) {
      PBWMonomial r = m;
      r.string.insert(r.string.begin(), g);
      return ModuleVector::basis(std::move(r));
    }
    PBWMonomial rest{{m.string.begin() + 1, m.string.end()}, m.vacuum};
    // g c1 rest = c1 (g rest) + [g, c1] rest
    ModuleVector out;
    for (const auto& [mono, c] : apply_mode(g, rest).terms()) out.add(apply_mode(c1, mono), c);
    AffineElement br = alg_.bracket_generators(g.a, g.n, g.p, c1.a, c1.n, c1.p);
    out += act_unchecked(br, ModuleVector::basis(rest));
    return out;
  }

  const AffineAlgebra& alg_;
  ModuleSpec spec_;
  std::vector<FiniteModule> factors_;
  std::size_t vacuum_dim_ = 1;
  std::vector<Matrix> rho_;

  mutable std::mutex slice_mu_;
  mutable std::map<int, std::vector<PBWMonomial>> slices_;
  mutable std::mutex memo_mu_;
  mutable std::map<std::pair<Mode, PBWMonomial>, ModuleVector> memo_;
};

// ---------------------------------------------------------------------------
// Coinvariants modulo the block algebra.

enum class ReductionStatus { reduced, budget_exhausted };

inline std::string to_string(ReductionStatus s) {
  return s == ReductionStatus::reduced ? "reduced-to-degree-0" : "budget-exhausted";
}

struct CoinvariantResult {
  ModuleVector representative;  // after rewriting creation modes away
  ReductionStatus status = ReductionStatus::reduced;
  int passes = 0;
  /// Coordinates of the class modulo the diagonal g-action on the degree-0
  /// slice (weyl and fock only).
  std::optional<std::vector<Rat>> normal_form;
};

/// Rewriting system from the block-algebra generators x (x) (z - P_p)^n:
/// the creation mode x (x) A_{n,p} is replaced by minus the remaining terms
/// of the generator's expansion, divided by its leading coefficient.
class CoinvariantReducer {
public:
  CoinvariantReducer(const InducedModule& m, int pole_bound, std::optional<int> budget = std::nullopt)
      : m_(m), pole_bound_(pole_bound), budget_(budget.value_or(4 * m.spec().depth)), diag_(m.vacuum_dim()) {
    const KNBasis& b = m_.algebra().basis();
    for (const auto& f : block_function_basis(b, pole_bound_)) {
      if (f.pole_order == 0) continue;
      const int n = -f.pole_order, p = f.point;
      const Rat lead = f.expansion.coeff(n, p);
      if (lead.is_zero() || f.expansion.min_degree() < n)
        throw DomainError("block generator without a leading creation mode at degree " + std::to_string(n));
      GradedElement rest = f.expansion - GradedElement::basis(0, n, p, lead);
      rules_.emplace(std::pair{n, p}, rest * (-lead.inverse()));
    }
    if (m_.spec().kind != ModuleKind::verma) {
      for (int a = 0; a < m_.algebra().dim_g(); ++a) {
        AffineElement x = m_.constant_current(a);
        for (std::size_t v = 0; v < m_.vacuum_dim(); ++v)
          diag_.insert(degree_zero_coordinates(m_.act_unchecked(x, m_.vacuum(static_cast<int>(v)))));
      }
    }
  }

  int pole_bound() const { return pole_bound_; }
  const std::map<std::pair<int, int>, GradedElement>& rules() const { return rules_; }
  std::size_t diagonal_rank() const { return diag_.rank(); }

  /// Vacuum-space coordinates of the creation-free part.
  std::vector<Rat> degree_zero_coordinates(const ModuleVector& v) const {
    std::vector<Rat> out(m_.vacuum_dim());
    for (const auto& [mono, c] : v.terms())
      if (mono.string.empty()) out[static_cast<std::size_t>(mono.vacuum)] += c;
    return out;
  }

  CoinvariantResult reduce(const ModuleVector& v) const {
    CoinvariantResult res;
    ModuleVector cur = v;
    auto clean = [](const ModuleVector& x) {
      for (const auto& [mono, c] : x.terms())
        if (!mono.string.empty()) return false;
      return true;
    };
    while (!clean(cur)) {
      if (res.passes >= budget_) {
        res.status = ReductionStatus::budget_exhausted;
        break;
      }
      ModuleVector next;
      bool rewrote = false;
      for (const auto& [mono, c] : cur.terms()) {
        auto rule = mono.string.empty() ? rules_.end() : rules_.find({mono.string.front().n, mono.string.front().p});
        if (rule == rules_.end()) {
          next.add(mono, c);
          continue;
        }
        const int a = mono.string.front().a;
        ModuleVector rv = ModuleVector::basis({{mono.string.begin() + 1, mono.string.end()}, mono.vacuum});
        for (const auto& [k, x] : rule->second.terms()) next.add(m_.apply_mode(Mode{k.first, k.second, a}, rv), c * x);
        rewrote = true;
      }
      if (!rewrote) {
        res.status = ReductionStatus::budget_exhausted;
        break;
      }
      cur = std::move(next);
      ++res.passes;
    }
    res.representative = std::move(cur);
    if (res.status == ReductionStatus::reduced && m_.spec().kind != ModuleKind::verma)
      res.normal_form = diag_.reduce(degree_zero_coordinates(res.representative));
    return res;
  }

private:
  const InducedModule& m_;
  int pole_bound_;
  int budget_;
  std::map<std::pair<int, int>, GradedElement> rules_;
  EchelonSpan diag_;
};

/// Dimension of the degree-0 slice modulo the relations u.w for block
/// generators u of pole order <= ceil(D/2) and slice vectors w of degree
/// >= -floor(D/2), each relation rewritten to the degree-0 slice.
struct CoinvariantDiagnostic {
  int depth = 0;
  std::size_t slice_dim = 0;
  std::size_t relations_rank = 0;
  std::size_t dimension = 0;
  bool all_reduced = true;
};

inline CoinvariantDiagnostic truncated_coinvariants(const InducedModule& m) {
  if (m.spec().kind == ModuleKind::verma) throw DomainError("coinvariant diagnostic needs a finite degree-0 slice");
  const int D = m.spec().depth;
  const int pole = (D + 1) / 2, reach = D / 2;
  CoinvariantReducer red(m, std::max(pole, D));
  const AffineAlgebra& alg = m.algebra();
  std::vector<AffineElement> gens;
  for (const auto& u : block_algebra_basis(alg.lie(), alg.basis(), pole)) gens.push_back(u.affine(alg.dim_g()));
  EchelonSpan span(m.vacuum_dim());
  CoinvariantDiagnostic diag;
  diag.depth = D;
  diag.slice_dim = m.vacuum_dim();
  for (int d = 0; d >= -reach; --d)
    for (const auto& w : m.slice(d))
      for (const auto& u : gens) {
        auto r = red.reduce(m.act(u, ModuleVector::basis(w)));
        if (r.status != ReductionStatus::reduced) {
          diag.all_reduced = false;
          continue;
        }
        span.insert(red.degree_zero_coordinates(r.representative));
      }
  diag.relations_rank = span.rank();
  diag.dimension = diag.slice_dim - diag.relations_rank;
  return diag;
}

}  // namespace knwznw

#endif  // KNWZNW_MODULE_HPP
