#ifndef KNWZNW_KN_BASIS_HPP
#define KNWZNW_KN_BASIS_HPP

#include "linalg.hpp"
#include "rational_function.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace knwznw {

/// Marked points P_1..P_N on the sphere; the reference point is z = infinity.
class Config {
public:
  Config() = default;
  explicit Config(std::vector<Rat> points) : points_(std::move(points)) {
    if (points_.empty()) throw DomainError("configuration needs at least one marked point");
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (points_[i] == points_[j]) throw DomainError("marked points must be distinct: " + points_[i].str());
  }

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Rat>& points() const { return points_; }
  /// 1-based access, matching the basis labels.
  const Rat& point(int p) const { return points_.at(static_cast<std::size_t>(p - 1)); }
  PointZ marked(int p) const { return PointZ(point(p)); }
  static constexpr int genus = 0;

  friend bool operator==(const Config&, const Config&) = default;

private:
  std::vector<Rat> points_;
};

/// Meromorphic lambda-differential f(z) dz^lambda.
struct Section {
  int weight = 0;
  RationalFunction value;

  bool is_zero() const { return value.is_zero(); }
  friend bool operator==(const Section&, const Section&) = default;
  friend Section operator*(const Section& a, const Section& b) {
    return {a.weight + b.weight, a.value * b.value};
  }
  friend Section operator+(const Section& a, const Section& b) {
    if (a.weight != b.weight) throw DomainError("adding sections of different weight");
    return {a.weight, a.value + b.value};
  }
  friend Section operator*(const Section& a, const Rat& s) { return {a.weight, a.value * s}; }
};

/// Order of f dz^lambda at P. dz has a double pole at infinity in w = 1/z.
inline int section_order(const Section& s, const PointZ& p) {
  int o = order_at(s.value, p);
  return p.is_infinity() ? o - 2 * s.weight : o;
}

struct KNIndex {
  int lambda = 0;
  int n = 0;
  int p = 1;
  friend auto operator<=>(const KNIndex&, const KNIndex&) = default;
};

/// Prescribed orders of f^lambda_{n,p} at the marked points and at infinity.
struct OrderPrescription {
  std::vector<int> at_points;
  int at_infinity = 0;
};

inline OrderPrescription prescribed_orders(const Config& cfg, const KNIndex& idx) {
  const int N = cfg.size();
  OrderPrescription o;
  for (int i = 1; i <= N; ++i) o.at_points.push_back(i == idx.p ? idx.n - idx.lambda : idx.n - idx.lambda + 1);
  o.at_infinity = -N * (idx.n + 1 - idx.lambda) + (2 * idx.lambda - 1) * (Config::genus - 1);
  return o;
}

/// A constructed basis element with the data recorded during construction.
struct BasisElement {
  KNIndex index;
  Section section;
  std::vector<int> orders_at_points;
  int order_at_infinity = 0;
  bool adjusted = false;
};

/// Thrown when no section satisfies any admissible order adjustment.
struct BasisConstructionError : DomainError {
  BasisConstructionError(const std::string& what, Matrix constraints)
      : DomainError(what), constraints(std::move(constraints)) {}
  Matrix constraints;
};

namespace detail {

inline Rat binomial(int n, int k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(mpq_class(r));
}

// Row of the linear functional "Taylor coefficient of order j at a" acting on
// polynomials of degree <= deg, in the monomial basis.
inline std::vector<Rat> taylor_row(const Rat& a, int j, int deg) {
  std::vector<Rat> row(static_cast<std::size_t>(deg + 1));
  for (int i = j; i <= deg; ++i) row[static_cast<std::size_t>(i)] = binomial(i, j) * a.pow(i - j);
  return row;
}

inline BasisElement construct_basis_element(const Config& cfg, const KNIndex& idx) {
  const int N = cfg.size();
  if (idx.p < 1 || idx.p > N) throw DomainError("basis index p out of range");
  const OrderPrescription pres = prescribed_orders(cfg, idx);

  Poly denom(Rat(1));
  std::vector<int> pole(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    pole[static_cast<std::size_t>(i)] = std::max(0, -pres.at_points[static_cast<std::size_t>(i)]);
    denom *= Poly::linear_power(cfg.points()[static_cast<std::size_t>(i)], pole[static_cast<std::size_t>(i)]);
  }
  const int p0 = idx.p - 1;
  const int lead = pres.at_points[static_cast<std::size_t>(p0)] + pole[static_cast<std::size_t>(p0)];
  const Rat& pp = cfg.points()[static_cast<std::size_t>(p0)];

  // Constraints and solution space for a given order requirement at infinity;
  // extra_taylor adds vanishing of Taylor coefficients lead+1.. at P_p.
  struct Solution {
    Matrix constraints;
    std::vector<std::vector<Rat>> space;
    int degree = -1;
  };
  auto solve = [&](int m_inf, int extra_taylor) {
    Solution s;
    s.degree = denom.degree() - (m_inf + 2 * idx.lambda);
    if (s.degree < 0) return s;
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < N; ++i) {
      const int need = std::max(0, pres.at_points[static_cast<std::size_t>(i)]);
      for (int j = 0; j < need; ++j) rows.push_back(taylor_row(cfg.points()[static_cast<std::size_t>(i)], j, s.degree));
    }
    for (int j = 1; j <= extra_taylor; ++j) rows.push_back(taylor_row(pp, lead + j, s.degree));
    s.constraints = Matrix(rows.size(), static_cast<std::size_t>(s.degree + 1));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) s.constraints(r, c) = rows[r][c];
    if (rows.empty()) {
      for (int c = 0; c <= s.degree; ++c) {
        std::vector<Rat> v(static_cast<std::size_t>(s.degree + 1));
        v[static_cast<std::size_t>(c)] = Rat(1);
        s.space.push_back(std::move(v));
      }
    } else {
      s.space = s.constraints.nullspace();
    }
    return s;
  };
  auto leading_value = [&](const std::vector<Rat>& v, int degree) {
    return Rat(std::inner_product(v.begin(), v.end(), taylor_row(pp, lead, degree).begin(), Rat(0)));
  };
  auto has_exact = [&](const Solution& s) {
    for (const auto& v : s.space)
      if (!leading_value(v, s.degree).is_zero()) return true;
    return false;
  };

  bool adjusted = false;
  int m = pres.at_infinity;
  Solution sol = solve(m, 0);
  if (!has_exact(sol)) {
    adjusted = true;
    int tries = 0;
    while (!has_exact(sol)) {
      if (++tries > 64) throw BasisConstructionError("no section matches any admissible order at infinity", sol.constraints);
      sol = solve(--m, 0);
    }
  } else {
    while (sol.space.size() > 1) {
      Solution next = solve(m + 1, 0);
      if (!has_exact(next)) break;
      adjusted = true;
      sol = std::move(next);
      ++m;
    }
  }
  int extra = 0;
  while (sol.space.size() > 1) {
    adjusted = true;
    Solution next = solve(m, ++extra);
    if (!has_exact(next)) throw BasisConstructionError("cannot make basis element unique", sol.constraints);
    sol = std::move(next);
  }

  std::vector<Rat> coeffs;
  for (const auto& v : sol.space)
    if (!leading_value(v, sol.degree).is_zero()) coeffs = v;
  // Normalize to xi_p^(n-lambda) (1 + O(xi_p)).
  Poly rest = denom;
  rest = divmod(rest, Poly::linear_power(pp, pole[static_cast<std::size_t>(p0)])).first;
  Rat scale = rest.eval(pp) / leading_value(coeffs, sol.degree);
  for (auto& c : coeffs) c *= scale;

  BasisElement e;
  e.index = idx;
  e.section = Section{idx.lambda, RationalFunction(Poly(coeffs), denom)};
  for (int i = 1; i <= N; ++i) e.orders_at_points.push_back(section_order(e.section, cfg.marked(i)));
  e.order_at_infinity = section_order(e.section, PointZ::infinity());
  e.adjusted = adjusted;
  return e;
}

}  // namespace detail

/// Finite linear combination of basis elements f^lambda_{n,p} sharing one
/// weight. Keys are (n, p).
class GradedElement {
public:
  using Key = std::pair<int, int>;

  GradedElement() = default;
  explicit GradedElement(int weight) : weight_(weight) {}
  static GradedElement basis(int weight, int n, int p, Rat c = Rat(1)) {
    GradedElement g(weight);
    g.add(n, p, c);
    return g;
  }

  int weight() const { return weight_; }
  const std::map<Key, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rat coeff(int n, int p) const {
    auto it = terms_.find({n, p});
    return it == terms_.end() ? Rat(0) : it->second;
  }
  void add(int n, int p, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({n, p}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  GradedElement& operator+=(const GradedElement& o) {
    if (!o.is_zero() && !is_zero() && o.weight_ != weight_) throw DomainError("adding graded elements of different weight");
    if (is_zero()) weight_ = o.weight_;
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  GradedElement& operator*=(const Rat& s) {
    if (s.is_zero()) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, GradedElement b) { return a += (b *= Rat(-1)); }
  friend GradedElement operator*(GradedElement a, const Rat& s) { return a *= s; }
  friend bool operator==(const GradedElement& a, const GradedElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.weight_ == b.weight_ && a.terms_ == b.terms_;
  }

  int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.first; }
  int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.first; }

private:
  int weight_ = 0;
  std::map<Key, Rat> terms_;
};

/// Basis elements f^lambda_{n,p} of one configuration, built on demand and
/// memoized. Safe for concurrent use.
class KNBasis {
public:
  explicit KNBasis(Config cfg) : cfg_(std::move(cfg)) {}
  KNBasis(const KNBasis&) = delete;
  KNBasis& operator=(const KNBasis&) = delete;

  const Config& config() const { return cfg_; }
  int size() const { return cfg_.size(); }

  const BasisElement& element(const KNIndex& idx) const {
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(idx);
      if (it != cache_.end()) return *it->second;
    }
    auto built = std::make_shared<const BasisElement>(detail::construct_basis_element(cfg_, idx));
    std::lock_guard lock(mu_);
    auto [it, inserted] = cache_.emplace(idx, std::move(built));
    return *it->second;
  }
  const Section& section(int lambda, int n, int p) const { return element({lambda, n, p}).section; }

  /// Sum of coefficients times basis sections.
  Section evaluate(const GradedElement& g) const {
    RationalFunction acc;
    for (const auto& [k, c] : g.terms()) acc += section(g.weight(), k.first, k.second).value * c;
    return Section{g.weight(), acc};
  }

private:
  Config cfg_;
  mutable std::mutex mu_;
  mutable std::map<KNIndex, std::shared_ptr<const BasisElement>> cache_;
};

inline Section kn_basis_element(const KNBasis& basis, const KNIndex& idx) { return basis.element(idx).section; }

/// Residue pairing of F^lambda with F^(1-lambda): sum of residues of f*g at the
/// marked points, equal to minus the residue at infinity.
inline Rat kn_pairing(const Config& cfg, const Section& f, const Section& g) {
  if (f.is_zero() || g.is_zero()) return Rat(0);
  if (f.weight + g.weight != 1) throw DomainError("pairing needs weights summing to 1");
  RationalFunction prod = f.value * g.value;
  Rat acc(0);
  for (int i = 1; i <= cfg.size(); ++i) acc += residue_at(prod, cfg.marked(i));
  return acc;
}

inline int homogeneous_dimension(const Config& cfg, int /*lambda*/, int /*n*/) { return cfg.size(); }

/// Coefficients of s in the basis f^lambda_{n,p}, extracted by duality.
inline GradedElement expand_in_basis(const KNBasis& basis, const Section& s) {
  const Config& cfg = basis.config();
  const int N = cfg.size();
  const int lambda = s.weight;
  GradedElement out(lambda);
  if (s.is_zero()) return out;

  Poly outside = denominator_outside(s.value, cfg.points());
  if (outside.degree() > 0) {
    std::string where = outside.degree() == 1 ? "z=" + (-outside.coeff(0)).str() : "a root of a degree-" + std::to_string(outside.degree()) + " factor";
    throw DomainError("section has a pole outside the marked points: " + where);
  }

  int min_ord = section_order(s, cfg.marked(1));
  for (int i = 2; i <= N; ++i) min_ord = std::min(min_ord, section_order(s, cfg.marked(i)));
  const int n_lo = min_ord + lambda;
  const int ord_inf = section_order(s, PointZ::infinity());
  auto order_inf_of_degree = [&](int n) { return -N * (n + 1 - lambda) - 2 * lambda + 1; };
  int n_hi = n_lo;
  while (order_inf_of_degree(n_hi + 1) + N - 1 >= ord_inf) ++n_hi;

  for (int n = n_lo; n <= n_hi; ++n)
    for (int p = 1; p <= N; ++p) out.add(n, p, kn_pairing(cfg, s, basis.section(1 - lambda, -n, p)));

  if (!(basis.evaluate(out).value == s.value)) throw DomainError("internal: basis expansion failed to reproduce the section");
  return out;
}

}  // namespace knwznw

#endif  // KNWZNW_KN_BASIS_HPP
