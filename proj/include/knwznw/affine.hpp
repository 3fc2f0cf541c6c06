#ifndef KNWZNW_AFFINE_HPP
#define KNWZNW_AFFINE_HPP

#include "finite_lie.hpp"
#include "kn_algebras.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace knwznw {

/// Element of g (x) A (+) C t, loop part keyed by the KN index (n, p).
class AffineElement {
public:
  using Key = std::pair<int, int>;

  AffineElement() = default;
  explicit AffineElement(int dim_g) : dim_(dim_g) {}

  static AffineElement loop(int dim_g, int a, int n, int p, const Rat& c = Rat(1)) {
    AffineElement x(dim_g);
    x.add(n, p, a, c);
    return x;
  }
  static AffineElement central_element(int dim_g, const Rat& c = Rat(1)) {
    AffineElement x(dim_g);
    x.central_ = c;
    return x;
  }
  /// x (x) f for a coordinate vector x and a function f.
  static AffineElement tensor(const std::vector<Rat>& x, const GradedElement& f) {
    AffineElement out(static_cast<int>(x.size()));
    for (const auto& [k, c] : f.terms())
      for (std::size_t a = 0; a < x.size(); ++a) out.add(k.first, k.second, static_cast<int>(a), c * x[a]);
    return out;
  }

  int dim_g() const { return dim_; }
  const std::map<Key, std::vector<Rat>>& loop_part() const { return loop_; }
  const Rat& central() const { return central_; }
  bool is_zero() const { return loop_.empty() && central_.is_zero(); }

  void add(int n, int p, int a, const Rat& c) {
    if (c.is_zero()) return;
    auto it = loop_.find({n, p});
    if (it == loop_.end()) it = loop_.emplace(Key{n, p}, std::vector<Rat>(static_cast<std::size_t>(dim_))).first;
    it->second[static_cast<std::size_t>(a)] += c;
    for (const auto& v : it->second)
      if (!v.is_zero()) return;
    loop_.erase(it);
  }
  void add_central(const Rat& c) { central_ += c; }

  Rat coeff(int n, int p, int a) const {
    auto it = loop_.find({n, p});
    return it == loop_.end() ? Rat(0) : it->second[static_cast<std::size_t>(a)];
  }

  /// Function-algebra component along generator a.
  GradedElement component(int a) const {
    GradedElement g(0);
    for (const auto& [k, v] : loop_) g.add(k.first, k.second, v[static_cast<std::size_t>(a)]);
    return g;
  }

  AffineElement& operator+=(const AffineElement& o) {
    if (dim_ == 0) dim_ = o.dim_;
    for (const auto& [k, v] : o.loop_)
      for (std::size_t a = 0; a < v.size(); ++a) add(k.first, k.second, static_cast<int>(a), v[a]);
    central_ += o.central_;
    return *this;
  }
  AffineElement& operator*=(const Rat& s) {
    if (s.is_zero()) {
      loop_.clear();
      central_ = Rat(0);
      return *this;
    }
    for (auto& [k, v] : loop_)
      for (auto& c : v) c *= s;
    central_ *= s;
    return *this;
  }
  friend AffineElement operator+(AffineElement a, const AffineElement& b) { return a += b; }
  friend AffineElement operator-(AffineElement a, AffineElement b) { return a += (b *= Rat(-1)); }
  friend AffineElement operator*(AffineElement a, const Rat& s) { return a *= s; }
  friend bool operator==(const AffineElement& a, const AffineElement& b) {
    return a.loop_ == b.loop_ && a.central_ == b.central_;
  }

private:
  int dim_ = 0;
  std::map<Key, std::vector<Rat>> loop_;
  Rat central_;
};

/// The central extension g^ of g (x) A by the geometric cocycle.
class AffineAlgebra {
public:
  AffineAlgebra(const GaugeAlgebra& g, const StructureTables& t) : g_(g), t_(t) {}

  const GaugeAlgebra& lie() const { return g_; }
  const StructureTables& tables() const { return t_; }
  const KNBasis& basis() const { return t_.basis(); }
  int dim_g() const { return g_.dim(); }

  /// [x (x) A_{n,p}, y (x) A_{m,r}] on generators.
  AffineElement bracket_generators(int a, int n, int p, int b, int m, int r) const {
    AffineElement out(dim_g());
    const GradedElement& prod = t_.product(n, p, m, r);
    for (int c = 0; c < dim_g(); ++c) {
      const Rat& s = g_.structure(a, b, c);
      if (s.is_zero()) continue;
      for (const auto& [k, v] : prod.terms()) out.add(k.first, k.second, c, s * v);
    }
    const Rat& form = g_.form()(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    if (!form.is_zero()) out.add_central(-form * t_.gamma(n, p, m, r));
    return out;
  }

  AffineElement bracket(const AffineElement& x, const AffineElement& y) const {
    AffineElement out(dim_g());
    for (const auto& [k1, v1] : x.loop_part())
      for (const auto& [k2, v2] : y.loop_part())
        for (int a = 0; a < dim_g(); ++a) {
          if (v1[static_cast<std::size_t>(a)].is_zero()) continue;
          for (int b = 0; b < dim_g(); ++b) {
            const Rat s = v1[static_cast<std::size_t>(a)] * v2[static_cast<std::size_t>(b)];
            if (s.is_zero()) continue;
            out += bracket_generators(a, k1.first, k1.second, b, k2.first, k2.second) * s;
          }
        }
    return out;
  }

private:
  const GaugeAlgebra& g_;
  const StructureTables& t_;
};

struct AffineParts {
  AffineElement minus, strip, plus;
  Rat central;
};

inline AffineParts affine_decompose(const KNBasis& b, const AffineElement& x) {
  AffineParts out{AffineElement(x.dim_g()), AffineElement(x.dim_g()), AffineElement(x.dim_g()), x.central()};
  for (const auto& [k, v] : x.loop_part()) {
    AffineElement* target = nullptr;
    switch (classify(b, 0, k.first, k.second)) {
      case Part::minus: target = &out.minus; break;
      case Part::strip: target = &out.strip; break;
      case Part::plus: target = &out.plus; break;
    }
    for (std::size_t a = 0; a < v.size(); ++a) target->add(k.first, k.second, static_cast<int>(a), v[a]);
  }
  return out;
}

/// x_a (x) h with h regular at infinity and poles only at the marked points.
struct BlockAlgebraElement {
  int generator = 0;
  int point = 0;  // 0 for constants
  int pole_order = 0;
  RationalFunction value;
  GradedElement expansion;

  AffineElement affine(int dim_g) const {
    std::vector<Rat> x(static_cast<std::size_t>(dim_g));
    x[static_cast<std::size_t>(generator)] = Rat(1);
    return AffineElement::tensor(x, expansion);
  }
};

/// Functions spanning A(Upsilon) up to pole order k: 1 and (z - P_i)^-j.
inline std::vector<BlockAlgebraElement> block_function_basis(const KNBasis& b, int k) {
  if (k < 0) throw DomainError("pole bound must be nonnegative");
  std::vector<BlockAlgebraElement> out;
  RationalFunction one(Rat(1));
  out.push_back({0, 0, 0, one, expand_in_basis(b, Section{0, one})});
  for (int i = 1; i <= b.size(); ++i)
    for (int j = 1; j <= k; ++j) {
      RationalFunction h = RationalFunction(Poly(Rat(1)), Poly::linear_power(b.config().point(i), j));
      out.push_back({0, i, j, h, expand_in_basis(b, Section{0, h})});
    }
  return out;
}

inline std::vector<BlockAlgebraElement> block_algebra_basis(const GaugeAlgebra& g, const KNBasis& b, int k) {
  std::vector<BlockAlgebraElement> out;
  for (const auto& f : block_function_basis(b, k))
    for (int a = 0; a < g.dim(); ++a) {
      BlockAlgebraElement e = f;
      e.generator = a;
      out.push_back(std::move(e));
    }
  return out;
}

/// psi onto g^N: the degree-0 coefficients at each point. Plus parts and the
/// centre map to zero.
inline std::vector<std::vector<Rat>> psi_project(const KNBasis& b, const AffineElement& x) {
  const int N = b.size();
  std::vector<std::vector<Rat>> out(static_cast<std::size_t>(N), std::vector<Rat>(static_cast<std::size_t>(x.dim_g())));
  for (const auto& [k, v] : x.loop_part()) {
    const Part part = classify(b, 0, k.first, k.second);
    if (part == Part::minus)
      throw DomainError("psi is undefined on the minus part (degree " + std::to_string(k.first) + ")");
    if (part == Part::strip) {
      if (k.first != 0) throw DomainError("psi is undefined outside degree 0 (degree " + std::to_string(k.first) + ")");
      out[static_cast<std::size_t>(k.second - 1)] = v;
    }
  }
  return out;
}

}  // namespace knwznw

#endif  // KNWZNW_AFFINE_HPP
