#ifndef KNWZNW_FINITE_LIE_HPP
#define KNWZNW_FINITE_LIE_HPP

#include "linalg.hpp"

#include <string>
#include <vector>

namespace knwznw {

enum class LieKind { sl2, abelian1 };

inline std::string to_string(LieKind k) { return k == LieKind::sl2 ? "sl2" : "abelian1"; }

inline LieKind parse_lie_kind(const std::string& s) {
  if (s == "sl2") return LieKind::sl2;
  if (s == "abelian1") return LieKind::abelian1;
  throw DomainError("unsupported lie algebra: " + s);
}

/// Finite-dimensional gauge algebra with a fixed invariant form.
class GaugeAlgebra {
public:
  static GaugeAlgebra make(LieKind kind) {
    GaugeAlgebra g;
    g.kind_ = kind;
    if (kind == LieKind::abelian1) {
      g.labels_ = {"u"};
      g.init(1);
      g.form_(0, 0) = Rat(1);
      g.cartan_ = {0};
      g.normalization_ = "(u|u) = 1";
    } else {
      // Basis e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
      g.labels_ = {"e", "h", "f"};
      g.init(3);
      g.set_bracket(1, 0, 0, Rat(2));
      g.set_bracket(1, 2, 2, Rat(-2));
      g.set_bracket(0, 2, 1, Rat(1));
      g.form_(0, 2) = g.form_(2, 0) = Rat(1);
      g.form_(1, 1) = Rat(2);
      g.cartan_ = {1};
      g.nplus_ = {0};
      g.nminus_ = {2};
      g.normalization_ = "trace form of the defining representation";
    }
    g.form_inverse_ = g.form_.inverse();
    g.dual_coxeter_ = g.adjoint_casimir() * Rat(1, 2);
    return g;
  }

  LieKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const {
    for (int a = 0; a < dim(); ++a)
      if (labels_[static_cast<std::size_t>(a)] == label) return a;
    throw DomainError("unknown generator " + label + " of " + to_string(kind_));
  }

  /// c^c_{ab} with [x_a, x_b] = sum_c c^c_{ab} x_c.
  const Rat& structure(int a, int b, int c) const { return sc_[idx(a, b, c)]; }
  std::vector<Rat> bracket(int a, int b) const {
    std::vector<Rat> v(static_cast<std::size_t>(dim()));
    for (int c = 0; c < dim(); ++c) v[static_cast<std::size_t>(c)] = structure(a, b, c);
    return v;
  }
  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    std::vector<Rat> v(static_cast<std::size_t>(dim()));
    for (int a = 0; a < dim(); ++a) {
      if (x[static_cast<std::size_t>(a)].is_zero()) continue;
      for (int b = 0; b < dim(); ++b) {
        const Rat s = x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)];
        if (s.is_zero()) continue;
        for (int c = 0; c < dim(); ++c) v[static_cast<std::size_t>(c)] += s * structure(a, b, c);
      }
    }
    return v;
  }

  const Matrix& form() const { return form_; }
  Rat form(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    Rat acc(0);
    for (int a = 0; a < dim(); ++a)
      for (int b = 0; b < dim(); ++b)
        acc += x[static_cast<std::size_t>(a)] * form_(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) *
               y[static_cast<std::size_t>(b)];
    return acc;
  }
  const Matrix& form_inverse() const { return form_inverse_; }
  /// Coordinates of u^a, the dual of x_a.
  std::vector<Rat> dual(int a) const {
    std::vector<Rat> v(static_cast<std::size_t>(dim()));
    for (int b = 0; b < dim(); ++b) v[static_cast<std::size_t>(b)] = form_inverse_(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    return v;
  }

  const Rat& dual_coxeter() const { return dual_coxeter_; }
  const std::string& normalization() const { return normalization_; }
  const std::vector<int>& cartan() const { return cartan_; }
  const std::vector<int>& n_plus() const { return nplus_; }
  const std::vector<int>& n_minus() const { return nminus_; }

  Matrix adjoint(int a) const {
    Matrix m(static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim()));
    for (int b = 0; b < dim(); ++b)
      for (int c = 0; c < dim(); ++c) m(static_cast<std::size_t>(c), static_cast<std::size_t>(b)) = structure(a, b, c);
    return m;
  }

  /// Eigenvalue of sum_a x_a u^a on the adjoint module (0 if abelian).
  Rat adjoint_casimir() const {
    std::vector<Matrix> ad;
    for (int a = 0; a < dim(); ++a) ad.push_back(adjoint(a));
    Matrix c = casimir_of(ad);
    return c(0, 0);
  }

  Matrix casimir_of(const std::vector<Matrix>& rho) const {
    const std::size_t n = rho.front().rows();
    Matrix c(n, n);
    for (int a = 0; a < dim(); ++a)
      for (int b = 0; b < dim(); ++b) {
        const Rat& g = form_inverse_(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        if (!g.is_zero()) c += rho[static_cast<std::size_t>(a)] * rho[static_cast<std::size_t>(b)] * g;
      }
    return c;
  }

private:
  void init(int d) {
    sc_.assign(static_cast<std::size_t>(d * d * d), Rat(0));
    form_ = Matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  }
  std::size_t idx(int a, int b, int c) const { return static_cast<std::size_t>((a * dim() + b) * dim() + c); }
  void set_bracket(int a, int b, int c, const Rat& v) {
    sc_[idx(a, b, c)] = v;
    sc_[idx(b, a, c)] = -v;
  }

  LieKind kind_{};
  std::vector<std::string> labels_;
  std::vector<Rat> sc_;
  Matrix form_, form_inverse_;
  Rat dual_coxeter_;
  std::string normalization_;
  std::vector<int> cartan_, nplus_, nminus_;
};

/// Finite-dimensional highest-weight module with exact action matrices.
struct FiniteModule {
  Rat weight;
  std::vector<Matrix> action;  // one per generator
  std::size_t dim() const { return action.empty() ? 0 : action.front().rows(); }
};

/// sl2: V_lambda with basis v_k = f^k v_0, k = 0..lambda. abelian1: the
/// character u -> weight.
inline FiniteModule finite_irrep(const GaugeAlgebra& g, const Rat& weight) {
  FiniteModule m;
  m.weight = weight;
  if (g.kind() == LieKind::abelian1) {
    Matrix u(1, 1);
    u(0, 0) = weight;
    m.action = {u};
    return m;
  }
  if (!weight.is_integer() || weight.sign() < 0)
    throw DomainError("sl2 weight must be a nonnegative integer, got " + weight.str());
  if (weight > Rat(64)) throw DomainError("sl2 weight too large: " + weight.str());
  const long lam = weight.num().get_si();
  const std::size_t n = static_cast<std::size_t>(lam) + 1;
  Matrix e(n, n), h(n, n), f(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const long kk = static_cast<long>(k);
    h(k, k) = Rat(lam - 2 * kk);
    if (k + 1 < n) f(k + 1, k) = Rat(1);
    if (k > 0) e(k - 1, k) = Rat(kk * (lam - kk + 1));
  }
  m.action = {e, h, f};
  return m;
}

/// Places an operator on factor p (0-based) of a tensor product.
inline Matrix on_factor(const Matrix& op, std::size_t p, const std::vector<std::size_t>& dims) {
  Matrix out = Matrix::identity(1);
  for (std::size_t i = 0; i < dims.size(); ++i) out = kron(out, i == p ? op : Matrix::identity(dims[i]));
  return out;
}

inline std::vector<std::size_t> module_dims(const std::vector<FiniteModule>& ms) {
  std::vector<std::size_t> d;
  for (const auto& m : ms) d.push_back(m.dim());
  return d;
}

/// Omega_{pq} = sum_a x_a^{(p)} u^{a(q)} on the tensor product of ms.
inline Matrix casimir_omega(const GaugeAlgebra& g, const std::vector<FiniteModule>& ms, std::size_t p, std::size_t q) {
  const auto dims = module_dims(ms);
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  Matrix out(total, total);
  for (int a = 0; a < g.dim(); ++a)
    for (int b = 0; b < g.dim(); ++b) {
      const Rat& c = g.form_inverse()(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      if (c.is_zero()) continue;
      out += on_factor(ms[p].action[static_cast<std::size_t>(a)], p, dims) *
             on_factor(ms[q].action[static_cast<std::size_t>(b)], q, dims) * c;
    }
  return out;
}

/// Diagonal action of generator a on the tensor product.
inline Matrix diagonal_action(const std::vector<FiniteModule>& ms, int a) {
  const auto dims = module_dims(ms);
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  Matrix out(total, total);
  for (std::size_t p = 0; p < ms.size(); ++p) out += on_factor(ms[p].action[static_cast<std::size_t>(a)], p, dims);
  return out;
}

}  // namespace knwznw

#endif  // KNWZNW_FINITE_LIE_HPP
