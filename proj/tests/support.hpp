#ifndef KNWZNW_TESTS_SUPPORT_HPP
#define KNWZNW_TESTS_SUPPORT_HPP

#include <knwznw/rational_function.hpp>

#include <random>
#include <vector>

namespace knwznw::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rat random_rat(int range = 9, int max_den = 4) {
  return Rat(uniform_int(-range, range), uniform_int(1, max_den));
}

inline Rat random_nonzero_rat(int range = 9, int max_den = 4) {
  Rat r;
  do r = random_rat(range, max_den);
  while (r.is_zero());
  return r;
}

inline Poly random_poly(int max_degree) {
  std::vector<Rat> c(static_cast<std::size_t>(uniform_int(0, max_degree) + 1));
  for (auto& x : c) x = random_rat();
  return Poly(std::move(c));
}

/// Random rational function whose finite poles lie in `poles`.
inline RationalFunction random_rf(const std::vector<Rat>& poles, int max_degree = 3, int max_pole = 2) {
  Poly den(Rat(1));
  for (const auto& a : poles) den *= Poly::linear_power(a, uniform_int(0, max_pole));
  Poly num;
  while (num.is_zero()) num = random_poly(max_degree);
  return RationalFunction(num, den);
}

}  // namespace knwznw::testing

#endif
