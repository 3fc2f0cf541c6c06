#ifndef KNWZNW_SUGAWARA_HPP
#define KNWZNW_SUGAWARA_HPP

#include "module.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace knwznw {

struct SugawaraIndex {
  int k = 0;
  int r = 1;
  friend auto operator<=>(const SugawaraIndex&, const SugawaraIndex&) = default;
};

/// Offsets j - k with n + m = j for which the pairing of omega^{n,p}
/// omega^{m,s} with e_{k,r} can be nonzero: the residue at the points needs
/// n + m >= k, the one at infinity needs N (n + m - k - 2) <= -2.
inline std::pair<int, int> sugawara_band(int N) { return {0, N == 1 ? 0 : 1}; }

/// Residue pairing of omega^{n,p} omega^{m,s} with e_{k,r}.
inline Rat sugawara_coefficient(const KNBasis& b, const SugawaraIndex& idx, int n, int p, int m, int s) {
  const RationalFunction f = b.section(1, -n, p).value * b.section(1, -m, s).value * b.section(-1, idx.k, idx.r).value;
  return residue_sum(b.config(), f);
}

using TripleCoefficientTable = std::map<std::tuple<int, int, int, int>, Rat>;

/// Nonzero coefficients with n, m in [lo, hi].
inline TripleCoefficientTable sugawara_coefficients(const KNBasis& b, const SugawaraIndex& idx, int lo, int hi) {
  TripleCoefficientTable t;
  for (int n = lo; n <= hi; ++n)
    for (int m = lo; m <= hi; ++m)
      for (int p = 1; p <= b.size(); ++p)
        for (int s = 1; s <= b.size(); ++s) {
          Rat c = sugawara_coefficient(b, idx, n, p, m, s);
          if (!c.is_zero()) t.emplace(std::tuple{n, p, m, s}, c);
        }
  return t;
}

/// Ordering of degree-0/degree-0 pairs inside a normal-ordered product.
enum class TieRule { keep_written, reverse_written };

/// The operators L(k,r) on an induced module.
class Sugawara {
public:
  explicit Sugawara(const InducedModule& m, TieRule tie = TieRule::keep_written, int slack = 0)
      : m_(m), tie_(tie), slack_(slack) {}
  Sugawara(const Sugawara&) = delete;
  Sugawara& operator=(const Sugawara&) = delete;

  const InducedModule& module() const { return m_; }
  TieRule tie_rule() const { return tie_; }

  Rat coefficient(const SugawaraIndex& idx, int n, int p, int m, int s) const {
    const auto key = std::tuple{idx.k, idx.r, n, p, m, s};
    {
      std::lock_guard lock(mu_);
      auto it = coeffs_.find(key);
      if (it != coeffs_.end()) return it->second;
    }
    Rat c = sugawara_coefficient(m_.algebra().basis(), idx, n, p, m, s);
    std::lock_guard lock(mu_);
    return coeffs_.emplace(key, c).first->second;
  }

  /// L(k,r) on a PBW monomial; the mode sums are cut where the right factor
  /// annihilates the monomial.
  const ModuleVector& apply_L(const SugawaraIndex& idx, const PBWMonomial& w) const {
    const auto key = std::pair{idx, w};
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    ModuleVector r = compute(idx, w);
    std::lock_guard lock(mu_);
    return memo_.emplace(key, std::move(r)).first->second;
  }

  ModuleVector apply_L(const SugawaraIndex& idx, const ModuleVector& v) const {
    ModuleVector out;
    for (const auto& [w, c] : v.terms()) out.add(apply_L(idx, w), c);
    return out;
  }

  /// -1/(c + k^v), the rescaling of L(k,r).
  Rat rescaling() const {
    const Rat shifted = m_.spec().level + m_.algebra().lie().dual_coxeter();
    if (shifted.is_zero()) throw DomainError("critical level: c + k^v = 0");
    return -shifted.inverse();
  }

  ModuleVector rescaled_L(const SugawaraIndex& idx, const ModuleVector& v) const {
    return apply_L(idx, v) * rescaling();
  }

  /// T[l] for a vector field l expanded in the e-basis.
  ModuleVector T(const GradedElement& l, const ModuleVector& v) const {
    if (!l.is_zero() && l.weight() != -1) throw DomainError("T needs a vector field");
    const Rat s = rescaling();
    ModuleVector out;
    for (const auto& [k, c] : l.terms()) out.add(apply_L({k.first, k.second}, v), c * s);
    return out;
  }

private:
  static int rank(int n) { return n < 0 ? 0 : (n == 0 ? 1 : 2); }

  ModuleVector compute(const SugawaraIndex& idx, const PBWMonomial& w) const {
    const GaugeAlgebra& g = m_.algebra().lie();
    const Matrix& ginv = g.form_inverse();
    const int N = m_.points();
    const int d = -w.degree();
    const auto [blo, bhi] = sugawara_band(N);
    ModuleVector out;
    const ModuleVector wv = ModuleVector::basis(w);
    for (int j = idx.k + blo; j <= idx.k + bhi; ++j)
      for (int n = j - d - slack_; n <= std::max(d, 0) + slack_; ++n) {
        const int m = j - n;
        for (int p = 1; p <= N; ++p)
          for (int s = 1; s <= N; ++s) {
            const Rat c = coefficient(idx, n, p, m, s);
            if (c.is_zero()) continue;
            for (int a = 0; a < g.dim(); ++a)
              for (int b = 0; b < g.dim(); ++b) {
                const Rat& gi = ginv(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
                if (gi.is_zero()) continue;
                Mode left{n, p, a}, right{m, s, b};
                const bool swap = rank(n) > rank(m) ||
                                  (rank(n) == 1 && rank(m) == 1 && tie_ == TieRule::reverse_written);
                if (swap) std::swap(left, right);
                ModuleVector rv = m_.apply_mode(right, wv);
                if (rv.is_zero()) continue;
                out.add(m_.apply_mode(left, rv), c * gi * Rat(1, 2));
              }
          }
      }
    return out;
  }

  const InducedModule& m_;
  TieRule tie_;
  int slack_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, int, int, int, int>, Rat> coeffs_;
  mutable std::map<std::pair<SugawaraIndex, PBWMonomial>, ModuleVector> memo_;
};

// ---------------------------------------------------------------------------
// Commutator audit.

struct AuditEntry {
  SugawaraIndex left, right;
  bool is_scalar = false;
  Rat scalar;
  Rat chi;                    // chi_0(e_left, e_right)
  std::optional<Rat> ratio;   // scalar / chi when chi != 0
  int window_depth = 0;       // slices 0..-window_depth were audited
  std::size_t vectors = 0;
};

/// Deepest slice on which [L*_k, L*_m] - L*_{[e_k, e_m]} stays inside the
/// truncation.
inline int audit_window(int depth, int k, int m) { return depth + std::min({0, k, m, k + m}); }

/// Scalar s with v_i = s w_i for every pair, if one exists.
inline std::optional<Rat> common_scalar(const std::vector<std::pair<ModuleVector, PBWMonomial>>& rows) {
  std::optional<Rat> s;
  for (const auto& [v, w] : rows) {
    const Rat c = v.coeff(w);
    if (!(v - ModuleVector::basis(w, c)).is_zero()) return std::nullopt;
    if (s && *s != c) return std::nullopt;
    s = c;
  }
  return s;
}

inline AuditEntry sugawara_commutator_audit(const Sugawara& sug, const StructureTables& t, const SugawaraIndex& x,
                                            const SugawaraIndex& y) {
  const InducedModule& m = sug.module();
  const int window = audit_window(m.spec().depth, x.k, y.k);
  if (window < 0)
    throw DomainError("audit window too small: pair (" + std::to_string(x.k) + ", " + std::to_string(y.k) +
                      ") needs depth >= " + std::to_string(m.spec().depth - window));
  AuditEntry e{x, y};
  e.window_depth = window;
  const GradedElement br = t.bracket(x.k, x.r, y.k, y.r);
  std::vector<std::pair<ModuleVector, PBWMonomial>> rows;
  for (int d = 0; d <= window; ++d)
    for (const auto& w : m.slice(-d)) {
      const ModuleVector wv = ModuleVector::basis(w);
      ModuleVector lhs = sug.rescaled_L(x, sug.rescaled_L(y, wv)) - sug.rescaled_L(y, sug.rescaled_L(x, wv));
      lhs -= sug.T(br, wv);
      m.check_window(lhs);
      rows.emplace_back(std::move(lhs), w);
    }
  e.vectors = rows.size();
  auto s = common_scalar(rows);
  e.is_scalar = s.has_value();
  if (s) e.scalar = *s;
  e.chi = t.chi0(x.k, x.r, y.k, y.r);
  if (e.is_scalar && !e.chi.is_zero()) e.ratio = e.scalar / e.chi;
  return e;
}

}  // namespace knwznw

#endif  // KNWZNW_SUGAWARA_HPP
