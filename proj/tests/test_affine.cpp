#include <catch2/catch_amalgamated.hpp>

#include <knwznw/affine.hpp>

#include "support.hpp"

using namespace knwznw;
using knwznw::testing::random_rat;
using knwznw::testing::uniform_int;

namespace {

Config points(std::initializer_list<Rat> pts) { return Config(std::vector<Rat>(pts)); }

std::vector<Rat> unit(int d, int a) {
  std::vector<Rat> v(static_cast<std::size_t>(d));
  v[static_cast<std::size_t>(a)] = Rat(1);
  return v;
}

AffineElement random_affine(int dim_g, int N, int lo, int hi, int terms = 3, bool with_central = true) {
  AffineElement x(dim_g);
  for (int k = 0; k < terms; ++k) x.add(uniform_int(lo, hi), uniform_int(1, N), uniform_int(0, dim_g - 1), random_rat());
  if (with_central) x.add_central(random_rat());
  return x;
}

}  // namespace

TEST_CASE("affine bracket", "[affine]") {
  auto g = GaugeAlgebra::make(LieKind::sl2);
  SECTION("one point: loop relations with central term") {
    KNBasis b(points({Rat(0)}));
    StructureTables t(b);
    AffineAlgebra aff(g, t);
    for (int n = -3; n <= 3; ++n)
      for (int m = -3; m <= 3; ++m)
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c) {
            AffineElement expect(3);
            for (int k = 0; k < 3; ++k) expect.add(n + m, 1, k, g.structure(a, c, k));
            if (n + m == 0) expect.add_central(g.form()(static_cast<std::size_t>(a), static_cast<std::size_t>(c)) * Rat(n));
            CHECK(aff.bracket(AffineElement::loop(3, a, n, 1), AffineElement::loop(3, c, m, 1)) == expect);
          }
  }
  SECTION("centre") {
    KNBasis b(points({Rat(0), Rat(1)}));
    StructureTables t(b);
    AffineAlgebra aff(g, t);
    auto x = random_affine(3, 2, -2, 2);
    CHECK(aff.bracket(x, AffineElement::central_element(3)).is_zero());
    CHECK(aff.bracket(AffineElement::central_element(3), x).is_zero());
  }
  SECTION("two points against raw functions") {
    KNBasis b(points({Rat(0), Rat(1)}));
    StructureTables t(b);
    AffineAlgebra aff(g, t);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = uniform_int(-3, 3), m = uniform_int(-3, 3), p = uniform_int(1, 2), r = uniform_int(1, 2);
      const int a = uniform_int(0, 2), c = uniform_int(0, 2);
      auto out = aff.bracket(AffineElement::loop(3, a, n, p), AffineElement::loop(3, c, m, r));
      const RationalFunction f = b.section(0, n, p).value, h = b.section(0, m, r).value;
      const RationalFunction prod = f * h;
      for (int k = 0; k < 3; ++k) {
        RationalFunction got = b.evaluate(out.component(k)).value;
        CHECK(got == prod * g.structure(a, c, k));
      }
      Rat central = -g.form()(static_cast<std::size_t>(a), static_cast<std::size_t>(c)) * cocycle_gamma_raw(b.config(), f, h);
      CHECK(out.central() == central);
    }
  }
  SECTION("Jacobi with central terms") {
    KNBasis b(points({Rat(0), Rat(1), Rat(-3)}));
    StructureTables t(b);
    AffineAlgebra aff(g, t);
    for (int trial = 0; trial < 15; ++trial) {
      auto x = random_affine(3, 3, -3, 3), y = random_affine(3, 3, -3, 3), w = random_affine(3, 3, -3, 3);
      auto s = aff.bracket(aff.bracket(x, y), w) + aff.bracket(aff.bracket(y, w), x) + aff.bracket(aff.bracket(w, x), y);
      CHECK(s.is_zero());
    }
  }
  SECTION("degree bookkeeping") {
    KNBasis b(points({Rat(0), Rat(1)}));
    StructureTables t(b);
    AffineAlgebra aff(g, t);
    auto rep = grading_report(t, AlgebraKind::gamma, {-4, 4});
    auto fun = grading_report(t, AlgebraKind::functions, {-4, 4});
    for (int n = -4; n <= 4; ++n)
      for (int m = -4; m <= 4; ++m) {
        auto out = aff.bracket(AffineElement::loop(3, 0, n, 1), AffineElement::loop(3, 2, m, 2));
        for (const auto& [k, v] : out.loop_part()) {
          CHECK(k.first >= n + m);
          CHECK(k.first <= n + m + fun.upper_shift);
        }
        if (!out.central().is_zero()) {
          CHECK(n + m <= 0);
          CHECK(n + m >= *rep.support_lowest);
        }
      }
  }
}

TEST_CASE("affine triangular split", "[affine]") {
  KNBasis b(points({Rat(0), Rat(1)}));
  auto x = unit(3, 0);
  auto parts = affine_decompose(b, AffineElement::loop(3, 0, 3, 1));
  CHECK(parts.minus.is_zero());
  CHECK(parts.strip.is_zero());
  CHECK(!parts.plus.is_zero());

  auto constant = AffineElement::tensor(x, expand_in_basis(b, Section{0, RationalFunction(Rat(1))}));
  parts = affine_decompose(b, constant + AffineElement::central_element(3, Rat(2)));
  CHECK(parts.strip == constant);
  CHECK(parts.minus.is_zero());
  CHECK(parts.plus.is_zero());
  CHECK(parts.central == Rat(2));

  // Poles only at the marked points and vanishing at infinity.
  RationalFunction q(Poly(Rat(1)), Poly::linear_power(Rat(0), 1) * Poly::linear_power(Rat(1), 1));
  parts = affine_decompose(b, AffineElement::tensor(x, expand_in_basis(b, Section{0, q})));
  CHECK(!parts.minus.is_zero());
  CHECK(parts.strip.is_zero());
  CHECK(parts.plus.is_zero());
}

TEST_CASE("block algebra", "[affine]") {
  auto g = GaugeAlgebra::make(LieKind::sl2);
  KNBasis b(points({Rat(0), Rat(1)}));
  StructureTables t(b);
  CHECK(block_algebra_basis(g, b, 0).size() == 3);
  for (int k = 0; k <= 3; ++k) {
    auto fb = block_function_basis(b, k);
    CHECK(fb.size() == static_cast<std::size_t>(1 + 2 * k));
    CHECK(block_algebra_basis(g, b, k).size() == static_cast<std::size_t>(3 * (1 + 2 * k)));
    // Linear independence of the expansions.
    const int lo = -k - 1, hi = 1;
    Matrix m(fb.size(), static_cast<std::size_t>(2 * (hi - lo + 1)));
    for (std::size_t i = 0; i < fb.size(); ++i) {
      CHECK(b.evaluate(fb[i].expansion).value == fb[i].value);
      CHECK(fb[i].expansion.min_degree() >= lo);
      CHECK(fb[i].expansion.max_degree() <= hi);
      for (const auto& [key, c] : fb[i].expansion.terms())
        m(i, static_cast<std::size_t>(2 * (key.first - lo) + key.second - 1)) = c;
    }
    CHECK(m.rank() == fb.size());
    for (const auto& f : fb)
      for (const auto& h : fb) CHECK(t.gamma(f.expansion, h.expansion).is_zero());
  }
  CHECK(block_algebra_basis(g, b, 1).size() == 9);
  CHECK_THROWS_AS(block_function_basis(b, -1), DomainError);
}

TEST_CASE("psi homomorphism", "[affine]") {
  auto g = GaugeAlgebra::make(LieKind::sl2);
  KNBasis b(points({Rat(0), Rat(1), Rat(2)}));
  StructureTables t(b);
  AffineAlgebra aff(g, t);
  auto x = unit(3, 1);
  auto img = psi_project(b, AffineElement::tensor(x, GradedElement::basis(0, 0, 2)));
  CHECK(img == std::vector<std::vector<Rat>>{std::vector<Rat>(3), x, std::vector<Rat>(3)});
  auto zero = psi_project(b, AffineElement::central_element(3));
  for (const auto& v : zero) CHECK(v == std::vector<Rat>(3));
  CHECK_THROWS_AS(psi_project(b, AffineElement::loop(3, 0, -1, 1)), DomainError);

  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto u = random_affine(3, 3, 0, 3, 4), v = random_affine(3, 3, 0, 3, 4);
    auto lhs = psi_project(b, aff.bracket(u, v));
    auto pu = psi_project(b, u), pv = psi_project(b, v);
    for (std::size_t p = 0; p < 3; ++p) CHECK(lhs[p] == g.bracket(pu[p], pv[p]));
    ++checked;
  }
  CHECK(checked == 50);
}
