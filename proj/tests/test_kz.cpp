#include <catch2/catch_amalgamated.hpp>

#include <knwznw/kz.hpp>

#include <algorithm>
#include <cstdlib>

#include "support.hpp"

using namespace knwznw;

namespace {

// Lagrange vector field: value 1 at P_p, zero at the other points.
Rat lagrange_derivative(const std::vector<Rat>& pts, std::size_t p, const Rat& x) {
  Rat den(1);
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != p) den *= pts[p] - pts[j];
  Rat num(0);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k == p) continue;
    Rat prod(1);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != p && j != k) prod *= x - pts[j];
    num += prod;
  }
  return num / den;
}

// Quadratic Casimir sum_ab G^{ab} x_a x_b on an irreducible of the given
// weight, in the normalisation (h,h) = 2 for sl2 and (u,u) = 1 for u(1).
Rat casimir_value(LieKind kind, const Rat& w) { return kind == LieKind::sl2 ? w * (w + Rat(2)) / Rat(2) : w * w; }

Rat dual_coxeter(LieKind kind) { return kind == LieKind::sl2 ? Rat(2) : Rat(0); }

// -1/(c + h) times the classical form plus the conformal-weight term of the
// zeros of e_{-1,p} at the other points.
std::vector<Matrix> oracle(LieKind kind, const std::vector<Rat>& pts, const std::vector<Rat>& weights, const Rat& level) {
  const GaugeAlgebra g = GaugeAlgebra::make(kind);
  std::vector<FiniteModule> ms;
  for (const auto& w : weights) ms.push_back(finite_irrep(g, w));
  std::size_t dim = 1;
  for (const auto& m : ms) dim *= m.dim();
  const Rat s = -(level + dual_coxeter(kind)).inverse();
  std::vector<Matrix> out;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    Matrix a(dim, dim);
    Rat weight_term(0);
    for (std::size_t q = 0; q < pts.size(); ++q) {
      weight_term += lagrange_derivative(pts, p, pts[q]) * casimir_value(kind, weights[q]) / Rat(2);
      if (q != p) a += casimir_omega(g, ms, p, q) * (pts[p] - pts[q]).inverse();
    }
    a += Matrix::identity(dim) * weight_term;
    out.push_back(a * s);
  }
  return out;
}

std::vector<Rat> distinct_points(int n) {
  std::vector<Rat> pts;
  while (static_cast<int>(pts.size()) < n) {
    Rat r = testing::random_rat(6, 3);
    if (std::find(pts.begin(), pts.end(), r) == pts.end()) pts.push_back(r);
  }
  return pts;
}

}  // namespace

TEST_CASE("point-moving fields", "[kz]") {
  for (int N = 1; N <= 4; ++N) {
    const auto pts = distinct_points(N);
    KNBasis b{Config(pts)};
    const auto ts = tangent_fields(b);
    REQUIRE(ts.size() == static_cast<std::size_t>(N));
    for (const auto& t : ts) {
      CHECK(t.leading == Rat(1));
      CHECK(t.regular_at_points);
      for (int q = 1; q <= N; ++q) {
        if (q == t.point)
          CHECK(t.orders[static_cast<std::size_t>(q - 1)] == 0);
        else
          CHECK(t.orders[static_cast<std::size_t>(q - 1)] >= 1);
      }
    }
    // Sums P_p^k e_{-1,p} give the global fields z^k d/dz up to k = min(N,3) - 1.
    for (int k = 0; k < std::min(N, 3); ++k) {
      GradedElement s(-1);
      for (int p = 1; p <= N; ++p) s = s + GradedElement::basis(-1, -1, p, pts[static_cast<std::size_t>(p - 1)].pow(k));
      CHECK(b.evaluate(s).value == RationalFunction(Poly::monomial(Rat(1), k)));
    }
  }
}

TEST_CASE("KZ matrices", "[kz]") {
  SECTION("trivial weights give zero matrices") {
    auto sys = kz_matrices(Config({Rat(0), Rat(1), Rat(3)}), LieKind::sl2, {Rat(0), Rat(0), Rat(0)}, Rat(1), 2);
    CHECK_FALSE(sys.partial);
    for (const auto& a : sys.matrices) CHECK(a.is_zero());
    CHECK_FALSE(sys.kappa);
  }
  SECTION("sl2 against the classical form with conformal weights") {
    for (int trial = 0; trial < 6; ++trial) {
      const int N = trial < 3 ? 2 : 3;
      const auto pts = distinct_points(N);
      std::vector<Rat> ws;
      for (int i = 0; i < N; ++i) ws.push_back(Rat(testing::uniform_int(0, 2)));
      const Rat level(testing::uniform_int(1, 3));
      auto sys = kz_matrices(Config(pts), LieKind::sl2, ws, level, 2);
      CHECK_FALSE(sys.partial);
      const auto want = oracle(LieKind::sl2, pts, ws, level);
      for (std::size_t p = 0; p < pts.size(); ++p) CHECK(sys.matrices[p] == want[p]);
      for (const auto& r : sys.residual_scalars) CHECK(r.has_value());
    }
  }
  SECTION("fitted normalisation") {
    auto two = kz_matrices(Config({Rat(0), Rat(1)}), LieKind::sl2, {Rat(1), Rat(1)}, Rat(1), 2);
    REQUIRE(two.kappa);
    CHECK(*two.kappa == Rat(-1, 3));
    CHECK(two.sign_convention() == -1);
    auto three = kz_matrices(Config({Rat(0), Rat(1), Rat(3)}), LieKind::sl2, {Rat(1), Rat(1), Rat(2)}, Rat(2), 2);
    REQUIRE(three.kappa);
    CHECK(*three.kappa == Rat(-1, 4));
  }
  SECTION("the residual is the conformal-weight scalar") {
    const std::vector<Rat> pts{Rat(0), Rat(1), Rat(-1)};
    const std::vector<Rat> ws{Rat(1), Rat(1), Rat(1)};
    auto sys = kz_matrices(Config(pts), LieKind::sl2, ws, Rat(1), 2);
    CHECK_FALSE(sys.residual_zero);
    for (std::size_t p = 0; p < 3; ++p) {
      Rat mu(0);
      for (std::size_t q = 0; q < 3; ++q) mu += lagrange_derivative(pts, p, pts[q]) * casimir_value(LieKind::sl2, ws[q]) / Rat(2);
      REQUIRE(sys.residual_scalars[p]);
      CHECK(*sys.residual_scalars[p] == mu * Rat(-1, 3));
    }
  }
  SECTION("abelian") {
    for (int trial = 0; trial < 4; ++trial) {
      const int N = 2 + trial % 2;
      const auto pts = distinct_points(N);
      std::vector<Rat> ws;
      for (int i = 0; i < N; ++i) ws.push_back(testing::random_rat(3, 2));
      auto sys = kz_matrices(Config(pts), LieKind::abelian1, ws, Rat(1), 2);
      const auto want = oracle(LieKind::abelian1, pts, ws, Rat(1));
      for (std::size_t p = 0; p < pts.size(); ++p) CHECK(sys.matrices[p] == want[p]);
    }
  }
  SECTION("translation covariance") {
    const std::vector<Rat> pts{Rat(0), Rat(2), Rat(-1, 2)};
    const std::vector<Rat> ws{Rat(1), Rat(2), Rat(1)};
    auto base = kz_matrices(Config(pts), LieKind::sl2, ws, Rat(1), 2);
    std::vector<Rat> moved;
    for (const auto& x : pts) moved.push_back(x + Rat(5, 3));
    auto shifted = kz_matrices(Config(moved), LieKind::sl2, ws, Rat(1), 2);
    for (std::size_t p = 0; p < 3; ++p) CHECK(base.matrices[p] == shifted.matrices[p]);
  }
  SECTION("thread count does not change the result") {
    const char* old = std::getenv("KNWZNW_THREADS");
    const std::string saved = old ? old : "";
    setenv("KNWZNW_THREADS", "1", 1);
    auto one = kz_matrices(Config({Rat(0), Rat(1), Rat(-1)}), LieKind::sl2, {Rat(1), Rat(1), Rat(2)}, Rat(1), 2);
    setenv("KNWZNW_THREADS", "3", 1);
    auto many = kz_matrices(Config({Rat(0), Rat(1), Rat(-1)}), LieKind::sl2, {Rat(1), Rat(1), Rat(2)}, Rat(1), 2);
    if (old) setenv("KNWZNW_THREADS", saved.c_str(), 1); else unsetenv("KNWZNW_THREADS");
    for (std::size_t p = 0; p < 3; ++p) CHECK(one.matrices[p] == many.matrices[p]);
  }
  SECTION("critical level") {
    CHECK_THROWS_AS(kz_matrices(Config({Rat(0), Rat(1)}), LieKind::sl2, {Rat(1), Rat(1)}, Rat(-2), 2), DomainError);
  }
}

TEST_CASE("flatness", "[kz]") {
  auto three = kz_matrices(Config({Rat(0), Rat(1), Rat(-1)}), LieKind::sl2, {Rat(1), Rat(1), Rat(1)}, Rat(1), 2);
  auto rep = flatness_check(three);
  CHECK(rep.applicable);
  CHECK(rep.ok);
  CHECK(rep.relations == 3);
  auto four = kz_matrices(Config({Rat(0), Rat(1), Rat(-1), Rat(2)}), LieKind::sl2, {Rat(1), Rat(1), Rat(1), Rat(1)}, Rat(1), 1);
  auto r4 = flatness_check(four);
  CHECK(r4.ok);
  CHECK(r4.relations == 6 * 2 + 6);
  auto two = kz_matrices(Config({Rat(0), Rat(1)}), LieKind::sl2, {Rat(1), Rat(1)}, Rat(1), 2);
  CHECK_FALSE(flatness_check(two).applicable);
  two.partial = true;
  CHECK_THROWS_AS(flatness_check(two), DomainError);
}
