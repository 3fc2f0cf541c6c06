#ifndef KNWZNW_RATIONAL_HPP
#define KNWZNW_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace knwznw {

/// Error raised for violations of a domain precondition (bad input values).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; zero is 0/1.
class Rat {
public:
  Rat() = default;
  Rat(long v) : v_(v) {}
  Rat(int v) : v_(static_cast<long>(v)) {}
  Rat(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q".
  static Rat parse(std::string_view s) {
    std::string str(s);
    auto trim = [](std::string& x) {
      while (!x.empty() && (x.front() == ' ' || x.front() == '+')) x.erase(x.begin());
      while (!x.empty() && x.back() == ' ') x.pop_back();
    };
    trim(str);
    if (str.empty()) throw DomainError("empty rational literal");
    for (char c : str)
      if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
        throw DomainError("malformed rational literal '" + std::string(s) + "'");
    mpq_class q;
    if (q.set_str(str, 10) != 0) throw DomainError("malformed rational literal '" + std::string(s) + "'");
    if (q.get_den() == 0) throw DomainError("rational with zero denominator");
    q.canonicalize();
    return Rat(q);
  }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rat inverse() const { return Rat(1) / *this; }
  Rat abs() const { return sign() < 0 ? -*this : *this; }

  /// Integer power; negative exponents invert.
  Rat pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(mpq_class(n, d));
  }

  /// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  double to_double() const { return v_.get_d(); }

  std::size_t hash() const {
    return std::hash<std::string>{}(v_.get_num().get_str(16)) * 31u ^
           std::hash<std::string>{}(v_.get_den().get_str(16));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
  mpq_class v_{0};
};

}  // namespace knwznw

#endif  // KNWZNW_RATIONAL_HPP
