#ifndef KNWZNW_KN_ALGEBRAS_HPP
#define KNWZNW_KN_ALGEBRAS_HPP

#include "kn_basis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace knwznw {

// ---------------------------------------------------------------------------
// Products, brackets and module actions. All of them are computed on the raw
// rational functions in the global chart and expanded back into the basis.

inline GradedElement multiply(const KNBasis& b, const GradedElement& f, const GradedElement& g) {
  if (f.is_zero() || g.is_zero()) return GradedElement(f.weight() + g.weight());
  return expand_in_basis(b, b.evaluate(f) * b.evaluate(g));
}

/// Coefficient functions of a vector-field bracket: e f' - f e'.
inline RationalFunction vf_bracket_raw(const RationalFunction& e, const RationalFunction& f) {
  return e * f.derivative() - f * e.derivative();
}

inline GradedElement vf_bracket(const KNBasis& b, const GradedElement& e, const GradedElement& f) {
  if (e.weight() != -1 || f.weight() != -1) throw DomainError("vector field bracket needs weight -1 elements");
  return expand_in_basis(b, Section{-1, vf_bracket_raw(b.evaluate(e).value, b.evaluate(f).value)});
}

/// Lie derivative of a lambda-differential: (e s' + lambda e' s) dz^lambda.
inline RationalFunction lie_derivative_raw(const RationalFunction& e, const RationalFunction& s, int lambda) {
  return e * s.derivative() + e.derivative() * s * Rat(lambda);
}

inline GradedElement lie_derivative(const KNBasis& b, const GradedElement& e, const GradedElement& s) {
  if (e.weight() != -1) throw DomainError("Lie derivative needs a vector field");
  if (s.is_zero() || e.is_zero()) return GradedElement(s.weight());
  return expand_in_basis(b, Section{s.weight(), lie_derivative_raw(b.evaluate(e).value, b.evaluate(s).value, s.weight())});
}

// ---------------------------------------------------------------------------
// Cocycles. The separating-cycle integral is the residue sum over P_1..P_N.

inline Rat residue_sum(const Config& cfg, const RationalFunction& f) {
  Rat acc(0);
  for (int i = 1; i <= cfg.size(); ++i) acc += residue_at(f, cfg.marked(i));
  return acc;
}

inline Rat cocycle_gamma_raw(const Config& cfg, const RationalFunction& f, const RationalFunction& g) {
  return residue_sum(cfg, f * g.derivative());
}

inline Rat cocycle_gamma(const KNBasis& b, const GradedElement& f, const GradedElement& g) {
  if (f.weight() != 0 || g.weight() != 0) throw DomainError("gamma is defined on functions");
  return cocycle_gamma_raw(b.config(), b.evaluate(f).value, b.evaluate(g).value);
}

/// Representative of a projective connection in the global chart.
struct ProjectiveConnection {
  RationalFunction R;
};

inline void check_connection(const Config& cfg, const ProjectiveConnection& c) {
  if (c.R.is_zero()) return;
  for (int i = 1; i <= cfg.size(); ++i)
    if (order_at(c.R, cfg.marked(i)) < 0)
      throw DomainError("projective connection has a pole at marked point z=" + cfg.point(i).str());
}

inline Rat cocycle_chi_raw(const Config& cfg, const RationalFunction& e, const RationalFunction& f,
                           const ProjectiveConnection& conn) {
  check_connection(cfg, conn);
  const RationalFunction e1 = e.derivative(), f1 = f.derivative();
  const RationalFunction e3 = e1.derivative().derivative(), f3 = f1.derivative().derivative();
  RationalFunction integrand = (e3 * f - e * f3) * Rat(1, 2) - conn.R * (e1 * f - e * f1);
  return residue_sum(cfg, integrand) * Rat(1, 12);
}

inline Rat cocycle_chi(const KNBasis& b, const GradedElement& e, const GradedElement& f,
                       const ProjectiveConnection& conn = {}) {
  if (e.weight() != -1 || f.weight() != -1) throw DomainError("chi is defined on vector fields");
  return cocycle_chi_raw(b.config(), b.evaluate(e).value, b.evaluate(f).value, conn);
}

/// (chi_R - chi_R')(e, f) and phi_Delta([e, f]) for Delta = R - R', where
/// phi_Delta(g) is one twelfth of the residue sum of Delta * g.
inline std::pair<Rat, Rat> coboundary_compare(const KNBasis& b, const GradedElement& e, const GradedElement& f,
                                              const ProjectiveConnection& r1, const ProjectiveConnection& r2) {
  const Config& cfg = b.config();
  check_connection(cfg, r1);
  check_connection(cfg, r2);
  const RationalFunction ev = b.evaluate(e).value, fv = b.evaluate(f).value;
  Rat diff = cocycle_chi_raw(cfg, ev, fv, r1) - cocycle_chi_raw(cfg, ev, fv, r2);
  RationalFunction delta = r1.R - r2.R;
  Rat witness = residue_sum(cfg, delta * vf_bracket_raw(ev, fv)) * Rat(1, 12);
  return {diff, witness};
}

// ---------------------------------------------------------------------------
// Structure-constant tables over a basis, memoized per configuration.

/// Products A_{n,p} A_{m,r}, brackets [e_{n,p}, e_{m,r}] and the cocycles on
/// basis pairs, computed once and shared.
class StructureTables {
public:
  explicit StructureTables(const KNBasis& b) : b_(b) {}
  StructureTables(const StructureTables&) = delete;
  StructureTables& operator=(const StructureTables&) = delete;

  const KNBasis& basis() const { return b_; }

  const GradedElement& product(int n, int p, int m, int r) const {
    return lookup(products_, {n, p, m, r}, [&] {
      return multiply(b_, GradedElement::basis(0, n, p), GradedElement::basis(0, m, r));
    });
  }
  const GradedElement& bracket(int n, int p, int m, int r) const {
    return lookup(brackets_, {n, p, m, r}, [&] {
      return vf_bracket(b_, GradedElement::basis(-1, n, p), GradedElement::basis(-1, m, r));
    });
  }
  Rat gamma(int n, int p, int m, int r) const {
    return lookup(gammas_, {n, p, m, r}, [&] {
      return cocycle_gamma_raw(b_.config(), b_.section(0, n, p).value, b_.section(0, m, r).value);
    });
  }
  Rat chi0(int n, int p, int m, int r) const {
    return lookup(chis_, {n, p, m, r}, [&] {
      return cocycle_chi_raw(b_.config(), b_.section(-1, n, p).value, b_.section(-1, m, r).value, {});
    });
  }

  /// Bilinear extensions over the tables.
  GradedElement product(const GradedElement& f, const GradedElement& g) const {
    GradedElement out(0);
    for (const auto& [a, x] : f.terms())
      for (const auto& [b, y] : g.terms()) out += product(a.first, a.second, b.first, b.second) * (x * y);
    return out;
  }
  GradedElement bracket(const GradedElement& e, const GradedElement& f) const {
    GradedElement out(-1);
    for (const auto& [a, x] : e.terms())
      for (const auto& [b, y] : f.terms()) out += bracket(a.first, a.second, b.first, b.second) * (x * y);
    return out;
  }
  Rat gamma(const GradedElement& f, const GradedElement& g) const {
    Rat acc(0);
    for (const auto& [a, x] : f.terms())
      for (const auto& [b, y] : g.terms()) acc += gamma(a.first, a.second, b.first, b.second) * x * y;
    return acc;
  }
  Rat chi0(const GradedElement& e, const GradedElement& f) const {
    Rat acc(0);
    for (const auto& [a, x] : e.terms())
      for (const auto& [b, y] : f.terms()) acc += chi0(a.first, a.second, b.first, b.second) * x * y;
    return acc;
  }

private:
  using Key = std::tuple<int, int, int, int>;
  template <class V, class F>
  const V& lookup(std::map<Key, V>& table, const Key& k, F&& make) const {
    {
      std::lock_guard lock(mu_);
      auto it = table.find(k);
      if (it != table.end()) return it->second;
    }
    V v = make();
    std::lock_guard lock(mu_);
    return table.emplace(k, std::move(v)).first->second;
  }

  const KNBasis& b_;
  mutable std::mutex mu_;
  mutable std::map<Key, GradedElement> products_;
  mutable std::map<Key, GradedElement> brackets_;
  mutable std::map<Key, Rat> gammas_;
  mutable std::map<Key, Rat> chis_;
};

// ---------------------------------------------------------------------------
// Almost-grading reports.

enum class AlgebraKind { functions, vector_fields, gamma, chi };

inline std::string to_string(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::functions: return "A";
    case AlgebraKind::vector_fields: return "L";
    case AlgebraKind::gamma: return "gamma";
    case AlgebraKind::chi: return "chi";
  }
  return "?";
}

struct DegreeWindow {
  int lo = -5;
  int hi = 5;
};

struct BandWitness {
  int n, p, m, r;
  std::vector<int> output_degrees;  // products/brackets
  Rat value;                        // cocycles
};

struct AlmostGradingReport {
  AlgebraKind kind{};
  /// Lower shift L: n + m - (lowest output degree), maximized over the window.
  int lower_shift = 0;
  /// Upper shift K for products/brackets.
  int upper_shift = 0;
  /// Cocycle support bounds: nonzero values only for lowest <= n+m <= highest.
  std::optional<int> support_lowest;
  std::optional<int> support_highest;
  std::vector<BandWitness> witnesses;
};

inline AlmostGradingReport grading_report(const StructureTables& t, AlgebraKind kind, DegreeWindow w,
                                          const ProjectiveConnection& conn = {}) {
  const Config& cfg = t.basis().config();
  const int N = cfg.size();
  AlmostGradingReport rep;
  rep.kind = kind;
  rep.lower_shift = std::numeric_limits<int>::min();
  rep.upper_shift = std::numeric_limits<int>::min();
  for (int n = w.lo; n <= w.hi; ++n)
    for (int m = w.lo; m <= w.hi; ++m)
      for (int p = 1; p <= N; ++p)
        for (int r = 1; r <= N; ++r) {
          if (kind == AlgebraKind::functions || kind == AlgebraKind::vector_fields) {
            const GradedElement& out = kind == AlgebraKind::functions ? t.product(n, p, m, r) : t.bracket(n, p, m, r);
            if (out.is_zero()) continue;
            std::vector<int> degs;
            for (const auto& [k, c] : out.terms())
              if (degs.empty() || degs.back() != k.first) degs.push_back(k.first);
            rep.lower_shift = std::max(rep.lower_shift, n + m - degs.front());
            rep.upper_shift = std::max(rep.upper_shift, degs.back() - (n + m));
            rep.witnesses.push_back({n, p, m, r, degs, Rat(0)});
          } else {
            Rat v;
            if (kind == AlgebraKind::gamma) {
              v = t.gamma(n, p, m, r);
            } else if (conn.R.is_zero()) {
              v = t.chi0(n, p, m, r);
            } else {
              v = cocycle_chi_raw(cfg, t.basis().section(-1, n, p).value, t.basis().section(-1, m, r).value, conn);
            }
            if (v.is_zero()) continue;
            const int s = n + m;
            rep.support_lowest = rep.support_lowest ? std::min(*rep.support_lowest, s) : s;
            rep.support_highest = rep.support_highest ? std::max(*rep.support_highest, s) : s;
            rep.witnesses.push_back({n, p, m, r, {}, v});
          }
        }
  if (rep.lower_shift == std::numeric_limits<int>::min()) rep.lower_shift = 0;
  if (rep.upper_shift == std::numeric_limits<int>::min()) rep.upper_shift = 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Triangular decompositions, classified by exact orders of basis elements.

enum class Part { minus, strip, plus };

inline std::string to_string(Part p) {
  switch (p) {
    case Part::minus: return "minus";
    case Part::strip: return "strip";
    case Part::plus: return "plus";
  }
  return "?";
}

/// Functions: plus = vanishing at every P_i, minus = vanishing at infinity.
/// Vector fields: plus = vanishing to order 2 at every P_i, minus = vanishing
/// to order 2 at infinity.
inline Part classify(const KNBasis& b, int lambda, int n, int p) {
  const BasisElement& el = b.element({lambda, n, p});
  const int need = lambda == -1 ? 2 : 1;
  bool plus = std::all_of(el.orders_at_points.begin(), el.orders_at_points.end(), [&](int o) { return o >= need; });
  if (plus) return Part::plus;
  if (el.order_at_infinity >= need) return Part::minus;
  return Part::strip;
}

struct TriangularDecomposition {
  int lambda = 0;
  std::vector<GradedElement> minus_basis, strip_basis, plus_basis;
  std::size_t strip_dimension() const { return strip_basis.size(); }
};

inline TriangularDecomposition triangular_decompose(const KNBasis& b, AlgebraKind kind, DegreeWindow w) {
  if (kind != AlgebraKind::functions && kind != AlgebraKind::vector_fields)
    throw DomainError("triangular decomposition is defined for A and L");
  const int lambda = kind == AlgebraKind::functions ? 0 : -1;
  const int N = b.size();
  TriangularDecomposition d;
  d.lambda = lambda;
  for (int p = 1; p <= N; ++p) {
    if (classify(b, lambda, w.lo, p) != Part::minus || classify(b, lambda, w.hi, p) != Part::plus) {
      // Find the bounds the strip actually needs.
      int lo = w.lo, hi = w.hi;
      while (classify(b, lambda, lo, p) != Part::minus) --lo;
      while (classify(b, lambda, hi, p) != Part::plus) ++hi;
      throw DomainError("degree window too small for the strip: need [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
  }
  for (int n = w.lo; n <= w.hi; ++n)
    for (int p = 1; p <= N; ++p) {
      auto g = GradedElement::basis(lambda, n, p);
      switch (classify(b, lambda, n, p)) {
        case Part::minus: d.minus_basis.push_back(g); break;
        case Part::strip: d.strip_basis.push_back(g); break;
        case Part::plus: d.plus_basis.push_back(g); break;
      }
    }
  return d;
}

/// Splits a graded element along the triangular decomposition of its weight.
inline std::map<Part, GradedElement> split_parts(const KNBasis& b, const GradedElement& g) {
  std::map<Part, GradedElement> out{{Part::minus, GradedElement(g.weight())},
                                    {Part::strip, GradedElement(g.weight())},
                                    {Part::plus, GradedElement(g.weight())}};
  for (const auto& [k, c] : g.terms()) out[classify(b, g.weight(), k.first, k.second)].add(k.first, k.second, c);
  return out;
}

}  // namespace knwznw

#endif  // KNWZNW_KN_ALGEBRAS_HPP
