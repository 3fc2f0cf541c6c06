#ifndef KNWZNW_POLY_HPP
#define KNWZNW_POLY_HPP

#include "rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace knwznw {

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// powers of z. The zero polynomial has no coefficients.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(const Rat& constant) {
    if (!constant.is_zero()) c_.push_back(constant);
  }

  static Poly z() { return Poly({Rat(0), Rat(1)}); }
  /// (z - a)^k
  static Poly linear_power(const Rat& a, int k) {
    Poly r(Rat(1));
    Poly lin({-a, Rat(1)});
    for (int i = 0; i < k; ++i) r *= lin;
    return r;
  }
  static Poly monomial(const Rat& c, int k) {
    if (c.is_zero()) return {};
    std::vector<Rat> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return Poly(std::move(v));
  }

  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rat coeff(int k) const {
    if (k < 0 || k > degree()) return Rat(0);
    return c_[static_cast<std::size_t>(k)];
  }
  Rat leading() const { return is_zero() ? Rat(0) : c_.back(); }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rat& s) {
    if (s.is_zero()) { c_.clear(); return *this; }
    for (auto& x : c_) x *= s;
    return *this;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; returns (quotient, remainder).
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    Poly rem = a;
    if (a.degree() < b.degree()) return {Poly(), rem};
    std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Rat lead_inv = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      int shift = rem.degree() - b.degree();
      Rat f = rem.leading() * lead_inv;
      q[static_cast<std::size_t>(shift)] = f;
      for (int i = 0; i <= b.degree(); ++i)
        rem.c_[static_cast<std::size_t>(i + shift)] -= f * b.c_[static_cast<std::size_t>(i)];
      rem.trim();
    }
    return {Poly(std::move(q)), rem};
  }

  Poly monic() const {
    if (is_zero()) return {};
    return *this * leading().inverse();
  }

  /// Monic gcd; gcd(0, 0) = 0.
  friend Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(r));
  }

  /// Coefficients of p(a + x) in ascending powers of x (Taylor shift).
  Poly shifted(const Rat& a) const {
    if (a.is_zero()) return *this;
    std::vector<Rat> r = c_;
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] += a * r[j];
    return Poly(std::move(r));
  }

  /// Coefficients reversed with respect to a formal degree d >= degree():
  /// z^d p(1/z).
  Poly reversed(int d) const {
    std::vector<Rat> r(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= degree(); ++i) r[static_cast<std::size_t>(d - i)] = c_[static_cast<std::size_t>(i)];
    return Poly(std::move(r));
  }

  /// Largest k with x^k | p (p != 0).
  int low_order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Truncated power series division: first `terms` coefficients of a/b,
/// b(0) != 0.
inline std::vector<Rat> series_divide(const Poly& a, const Poly& b, int terms) {
  const Rat b0 = b.coeff(0);
  if (b0.is_zero()) throw DomainError("series division by a series without constant term");
  const Rat inv = b0.inverse();
  std::vector<Rat> q(static_cast<std::size_t>(std::max(terms, 0)));
  for (int k = 0; k < terms; ++k) {
    Rat acc = a.coeff(k);
    for (int j = 1; j <= std::min(k, b.degree()); ++j) acc -= b.coeff(j) * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc * inv;
  }
  return q;
}

}  // namespace knwznw

#endif  // KNWZNW_POLY_HPP
