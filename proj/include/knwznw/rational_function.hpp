#ifndef KNWZNW_RATIONAL_FUNCTION_HPP
#define KNWZNW_RATIONAL_FUNCTION_HPP

#include "poly.hpp"

#include <string>
#include <vector>

namespace knwznw {

/// A point of the Riemann sphere with rational coordinate, or infinity.
class PointZ {
public:
  PointZ() : finite_(false) {}
  PointZ(const Rat& z) : finite_(true), z_(z) {}
  static PointZ infinity() { return PointZ(); }

  bool is_infinity() const { return !finite_; }
  const Rat& value() const {
    if (!finite_) throw DomainError("coordinate of the point at infinity");
    return z_;
  }
  std::string str() const { return finite_ ? z_.str() : std::string("inf"); }
  friend bool operator==(const PointZ& a, const PointZ& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.z_ == b.z_);
  }

private:
  bool finite_;
  Rat z_;
};

/// Laurent coefficients coeffs[k] of xi^(order + k).
struct LaurentSeries {
  int order = 0;
  std::vector<Rat> coeffs;

  Rat at(int power) const {
    int k = power - order;
    if (k < 0) return Rat(0);
    if (k >= static_cast<int>(coeffs.size())) throw DomainError("Laurent coefficient beyond computed terms");
    return coeffs[static_cast<std::size_t>(k)];
  }
};

/// Reduced quotient num/den of polynomials with monic den.
class RationalFunction {
public:
  RationalFunction() : den_(Rat(1)) {}
  RationalFunction(const Rat& c) : num_(c), den_(Rat(1)) {}
  RationalFunction(Poly p) : num_(std::move(p)), den_(Rat(1)) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction z() { return RationalFunction(Poly::z()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction& operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
      num_ += o.num_;
      normalize();
      return *this;
    }
    Poly g = gcd(den_, o.den_);
    Poly a = divmod(o.den_, g).first;
    Poly b = divmod(den_, g).first;
    num_ = num_ * a + o.num_ * b;
    den_ = den_ * a;
    normalize();
    return *this;
  }
  RationalFunction& operator-=(const RationalFunction& o) { return *this += -o; }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RationalFunction& operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    Poly g1 = gcd(num_, o.den_);
    Poly g2 = gcd(o.num_, den_);
    Poly n = divmod(num_, g1).first * divmod(o.num_, g2).first;
    Poly d = divmod(den_, g2).first * divmod(o.den_, g1).first;
    num_ = std::move(n);
    den_ = std::move(d);
    fix_sign();
    return *this;
  }
  RationalFunction& operator*=(const Rat& s) {
    num_ *= s;
    if (num_.is_zero()) den_ = Poly(Rat(1));
    return *this;
  }
  RationalFunction& operator/=(const RationalFunction& o) {
    if (o.is_zero()) throw DomainError("division by the zero rational function");
    return *this *= RationalFunction(o.den_, o.num_);
  }
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator*(RationalFunction a, const Rat& s) { return a *= s; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction pow(int e) const {
    if (e < 0) return (RationalFunction(Rat(1)) / *this).pow(-e);
    RationalFunction r(Rat(1));
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
  }

  RationalFunction derivative() const {
    if (is_zero()) return {};
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  /// Value at a finite point where the function is regular.
  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d.is_zero()) throw DomainError("evaluation at a pole z=" + x.str());
    return num_.eval(x) / d;
  }

private:
  void normalize() {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(Rat(1));
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    fix_sign();
  }
  void fix_sign() {
    Rat l = den_.leading();
    if (!l.is_one()) {
      Rat inv = l.inverse();
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

/// Laurent expansion in xi = z - P (or xi = 1/z at infinity), first `terms`
/// coefficients starting at the vanishing order.
inline LaurentSeries local_expansion(const RationalFunction& f, const PointZ& p, int terms) {
  if (f.is_zero()) throw DomainError("local expansion of zero");
  if (terms < 1) throw DomainError("local expansion needs at least one term");
  LaurentSeries s;
  if (p.is_infinity()) {
    const int dn = f.num().degree(), dd = f.den().degree();
    s.order = dd - dn;
    s.coeffs = series_divide(f.num().reversed(dn), f.den().reversed(dd), terms);
    return s;
  }
  Poly n = f.num().shifted(p.value());
  Poly d = f.den().shifted(p.value());
  const int kn = n.low_order(), kd = d.low_order();
  std::vector<Rat> nc(n.coeffs().begin() + kn, n.coeffs().end());
  std::vector<Rat> dc(d.coeffs().begin() + kd, d.coeffs().end());
  s.order = kn - kd;
  s.coeffs = series_divide(Poly(std::move(nc)), Poly(std::move(dc)), terms);
  return s;
}

/// Vanishing order at P (negative for a pole). At infinity: deg den - deg num.
inline int order_at(const RationalFunction& f, const PointZ& p) {
  if (f.is_zero()) throw DomainError("order of zero undefined");
  if (p.is_infinity()) return f.den().degree() - f.num().degree();
  return f.num().shifted(p.value()).low_order() - f.den().shifted(p.value()).low_order();
}

/// Residue of the one-form f dz at P. At infinity the local coordinate is
/// w = 1/z, so the residues over all points sum to zero.
inline Rat residue_at(const RationalFunction& f, const PointZ& p) {
  if (f.is_zero()) return Rat(0);
  const int ord = order_at(f, p);
  if (p.is_infinity()) {
    // f dz = -f(1/w) w^-2 dw; residue is minus the w^1 coefficient of f(1/w).
    if (ord > 1) return Rat(0);
    return -local_expansion(f, p, 2 - ord).at(1);
  }
  if (ord >= 0) return Rat(0);
  return local_expansion(f, p, -ord).at(-1);
}

/// Strips factors (z - a) for the supplied candidates from the denominator
/// and returns whatever is left.
inline Poly denominator_outside(const RationalFunction& f, const std::vector<Rat>& allowed) {
  Poly d = f.den();
  for (const auto& a : allowed) {
    Poly lin = Poly::linear_power(a, 1);
    while (d.degree() > 0) {
      auto [q, r] = divmod(d, lin);
      if (!r.is_zero()) break;
      d = std::move(q);
    }
  }
  return d.monic();
}

}  // namespace knwznw

#endif  // KNWZNW_RATIONAL_FUNCTION_HPP
