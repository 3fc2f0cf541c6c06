#include <catch2/catch_amalgamated.hpp>

#include <knwznw/kn_algebras.hpp>

#include "support.hpp"

using namespace knwznw;
using knwznw::testing::random_rat;
using knwznw::testing::uniform_int;

namespace {

const RationalFunction z = RationalFunction::z();

Config points(std::initializer_list<Rat> pts) { return Config(std::vector<Rat>(pts)); }

GradedElement random_element(int weight, int N, int lo, int hi, int terms = 3) {
  GradedElement g(weight);
  for (int k = 0; k < terms; ++k) g.add(uniform_int(lo, hi), uniform_int(1, N), random_rat());
  return g;
}

// Compares two sections by exact evaluation at points away from every pole.
bool agree_at_samples(const RationalFunction& a, const RationalFunction& b) {
  for (int k = 0; k < 8; ++k) {
    Rat x = Rat(2 * k + 11, 13);
    if (a.eval(x) != b.eval(x)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("products in the function algebra", "[kn-algebras]") {
  SECTION("single point: monomials multiply without spill") {
    KNBasis b(points({Rat(0)}));
    for (int n = -4; n <= 4; ++n)
      for (int m = -4; m <= 4; ++m) {
        auto out = multiply(b, GradedElement::basis(0, n, 1), GradedElement::basis(0, m, 1));
        CHECK(out == GradedElement::basis(0, n + m, 1));
      }
  }
  SECTION("two points: A_{0,1} A_{0,2} matches the direct product") {
    KNBasis b(points({Rat(0), Rat(1)}));
    auto out = multiply(b, GradedElement::basis(0, 0, 1), GradedElement::basis(0, 0, 2));
    // (1 - z) z has no degree-0 component.
    CHECK(out.coeff(0, 1).is_zero());
    CHECK(out.coeff(0, 2).is_zero());
    CHECK(out.min_degree() >= 1);
    CHECK(agree_at_samples(b.evaluate(out).value, (RationalFunction(Rat(1)) - z) * z));
  }
  SECTION("unit") {
    KNBasis b(points({Rat(0), Rat(1), Rat(-2)}));
    GradedElement unit(0);
    for (int p = 1; p <= 3; ++p) unit.add(0, p, Rat(1));
    auto f = random_element(0, 3, -3, 3);
    CHECK(multiply(b, unit, f) == f);
  }
  SECTION("weights add") {
    KNBasis b(points({Rat(0), Rat(2)}));
    auto out = multiply(b, GradedElement::basis(1, 1, 1), GradedElement::basis(-1, 0, 2));
    CHECK(out.weight() == 0);
    CHECK(agree_at_samples(b.evaluate(out).value, b.section(1, 1, 1).value * b.section(-1, 0, 2).value));
  }
}

TEST_CASE("vector-field brackets", "[kn-algebras]") {
  SECTION("Witt relations at one point") {
    KNBasis b(points({Rat(0)}));
    for (int n = -4; n <= 4; ++n)
      for (int m = -4; m <= 4; ++m) {
        auto out = vf_bracket(b, GradedElement::basis(-1, n, 1), GradedElement::basis(-1, m, 1));
        CHECK(out == GradedElement::basis(-1, n + m, 1, Rat(m - n)));
      }
  }
  SECTION("antisymmetry and direct bracket") {
    KNBasis b(points({Rat(0), Rat(1)}));
    auto e = GradedElement::basis(-1, 0, 1), f = GradedElement::basis(-1, 0, 2);
    CHECK(vf_bracket(b, e, e).is_zero());
    auto out = vf_bracket(b, e, f);
    CHECK(agree_at_samples(b.evaluate(out).value, vf_bracket_raw(b.section(-1, 0, 1).value, b.section(-1, 0, 2).value)));
    CHECK(out + vf_bracket(b, f, e) == GradedElement(-1));
  }
  SECTION("Jacobi on homogeneous triples") {
    for (int N = 1; N <= 3; ++N) {
      std::vector<Rat> pts{Rat(0), Rat(1), Rat(-1, 2)};
      pts.resize(static_cast<std::size_t>(N));
      KNBasis b{Config(pts)};
      StructureTables t(b);
      std::vector<GradedElement> basis;
      for (int n = -3; n <= 3; ++n)
        for (int p = 1; p <= N; ++p) basis.push_back(GradedElement::basis(-1, n, p));
      std::size_t failures = 0;
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
          for (std::size_t k = j + 1; k < basis.size(); ++k) {
            const auto &x = basis[i], &y = basis[j], &w = basis[k];
            auto s = t.bracket(t.bracket(x, y), w) + t.bracket(t.bracket(y, w), x) + t.bracket(t.bracket(w, x), y);
            if (!s.is_zero()) ++failures;
          }
      INFO("N = " << N);
      CHECK(failures == 0);
    }
  }
}

TEST_CASE("Lie derivative", "[kn-algebras]") {
  KNBasis one(points({Rat(0)}));
  SECTION("Euler field scales monomials") {
    for (int lambda = -1; lambda <= 2; ++lambda)
      for (int m = -3; m <= 3; ++m) {
        // f^lambda_{n,1} = z^{n - lambda}; z^m dz^lambda has n = m + lambda.
        auto s = GradedElement::basis(lambda, m + lambda, 1);
        auto out = lie_derivative(one, GradedElement::basis(-1, 0, 1), s);
        CHECK(out == s * Rat(m + lambda));
      }
  }
  SECTION("zero section") {
    CHECK(lie_derivative(one, GradedElement::basis(-1, 2, 1), GradedElement(1)).is_zero());
  }
  SECTION("Leibniz and module property") {
    KNBasis b(points({Rat(0), Rat(3)}));
    for (int trial = 0; trial < 12; ++trial) {
      auto e = random_element(-1, 2, -2, 2, 2);
      auto f = random_element(-1, 2, -2, 2, 2);
      const int lambda = uniform_int(-1, 2), mu = uniform_int(0, 1);
      auto s = random_element(lambda, 2, -2, 2, 2);
      auto u = random_element(mu, 2, -2, 2, 2);
      auto lhs = lie_derivative(b, e, multiply(b, s, u));
      auto rhs = multiply(b, lie_derivative(b, e, s), u) + multiply(b, s, lie_derivative(b, e, u));
      CHECK(lhs == rhs);
      auto left = lie_derivative(b, vf_bracket(b, e, f), s);
      auto right = lie_derivative(b, e, lie_derivative(b, f, s)) - lie_derivative(b, f, lie_derivative(b, e, s));
      CHECK(left == right);
    }
  }
}

TEST_CASE("function cocycle", "[kn-algebras]") {
  SECTION("one point: gamma(z^n, z^m) = m delta") {
    KNBasis b(points({Rat(0)}));
    for (int n = -5; n <= 5; ++n)
      for (int m = -5; m <= 5; ++m)
        CHECK(cocycle_gamma(b, GradedElement::basis(0, n, 1), GradedElement::basis(0, m, 1)) == Rat(n + m == 0 ? m : 0));
  }
  SECTION("antisymmetry and cocycle identity") {
    KNBasis b(points({Rat(0), Rat(1), Rat(2)}));
    StructureTables t(b);
    for (int trial = 0; trial < 20; ++trial) {
      auto f = random_element(0, 3, -3, 3), g = random_element(0, 3, -3, 3), h = random_element(0, 3, -3, 3);
      CHECK(t.gamma(f, f).is_zero());
      CHECK(t.gamma(f, g) == -t.gamma(g, f));
      CHECK((t.gamma(t.product(f, g), h) + t.gamma(t.product(g, h), f) + t.gamma(t.product(h, f), g)).is_zero());
    }
  }
  SECTION("vanishes on functions regular at infinity") {
    Config cfg = points({Rat(0), Rat(1)});
    for (int trial = 0; trial < 20; ++trial) {
      auto f = testing::random_rf({Rat(0), Rat(1)}, 0, 3);
      auto g = testing::random_rf({Rat(0), Rat(1)}, 0, 3);
      // Numerator degree 0 keeps both regular at infinity.
      CHECK(cocycle_gamma_raw(cfg, f, g).is_zero());
    }
  }
}

TEST_CASE("vector-field cocycle", "[kn-algebras]") {
  SECTION("Virasoro values at one point") {
    KNBasis b(points({Rat(0)}));
    for (int n = -5; n <= 5; ++n)
      for (int m = -5; m <= 5; ++m) {
        Rat expect = n + m == 0 ? Rat(n * n * n - n, 12) : Rat(0);
        CHECK(cocycle_chi(b, GradedElement::basis(-1, n, 1), GradedElement::basis(-1, m, 1)) == expect);
      }
  }
  SECTION("pole of R at a marked point") {
    KNBasis b(points({Rat(0), Rat(1)}));
    ProjectiveConnection bad{RationalFunction(Rat(1)) / (z - RationalFunction(Rat(1)))};
    CHECK_THROWS_AS(cocycle_chi(b, GradedElement::basis(-1, 0, 1), GradedElement::basis(-1, 1, 2), bad), DomainError);
  }
  SECTION("Lie cocycle identity") {
    KNBasis b(points({Rat(0), Rat(1)}));
    StructureTables t(b);
    ProjectiveConnection r{z * z + RationalFunction(Rat(3))};
    for (int trial = 0; trial < 15; ++trial) {
      auto e = random_element(-1, 2, -3, 3), f = random_element(-1, 2, -3, 3), g = random_element(-1, 2, -3, 3);
      CHECK(t.chi0(e, e).is_zero());
      CHECK((t.chi0(t.bracket(e, f), g) + t.chi0(t.bracket(f, g), e) + t.chi0(t.bracket(g, e), f)).is_zero());
      Rat with_r = cocycle_chi(b, t.bracket(e, f), g, r) + cocycle_chi(b, t.bracket(f, g), e, r) +
                   cocycle_chi(b, t.bracket(g, e), f, r);
      CHECK(with_r.is_zero());
    }
  }
  SECTION("coboundary witness") {
    std::vector<ProjectiveConnection> conns{{RationalFunction(Rat(5, 2))},
                                            {RationalFunction(Rat(1)) / (z - RationalFunction(Rat(7))) + z}};
    KNBasis one(points({Rat(0)}));
    auto [d0, w0] = coboundary_compare(one, GradedElement::basis(-1, 2, 1), GradedElement::basis(-1, -2, 1), conns[0], {});
    CHECK(d0 == w0);
    auto [s0, s1] = coboundary_compare(one, GradedElement::basis(-1, 2, 1), GradedElement::basis(-1, -2, 1), conns[1], conns[1]);
    CHECK(s0.is_zero());
    CHECK(s1.is_zero());

    KNBasis two(points({Rat(0), Rat(1)}));
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const int N = trial % 2 + 1;
      const KNBasis& b = N == 1 ? one : two;
      auto e = random_element(-1, N, -3, 3, 2), f = random_element(-1, N, -3, 3, 2);
      auto [diff, witness] = coboundary_compare(b, e, f, conns[static_cast<std::size_t>(trial / 2 % 2)], {});
      CHECK(diff == witness);
      ++checked;
    }
    CHECK(checked == 50);
  }
}

TEST_CASE("almost-grading and locality", "[kn-algebras]") {
  DegreeWindow w{-4, 4};
  SECTION("one point") {
    KNBasis b(points({Rat(0)}));
    StructureTables t(b);
    auto a = grading_report(t, AlgebraKind::functions, w);
    CHECK(a.lower_shift == 0);
    CHECK(a.upper_shift == 0);
    auto chi = grading_report(t, AlgebraKind::chi, w);
    REQUIRE(chi.support_lowest);
    CHECK(*chi.support_lowest == 0);
    CHECK(*chi.support_highest == 0);
  }
  SECTION("two and three points") {
    for (int N = 2; N <= 3; ++N) {
      std::vector<Rat> pts{Rat(0), Rat(1), Rat(-1, 2)};
      pts.resize(static_cast<std::size_t>(N));
      KNBasis b{Config(pts)};
      StructureTables t(b);
      for (auto kind : {AlgebraKind::functions, AlgebraKind::vector_fields}) {
        auto rep = grading_report(t, kind, w);
        CHECK(rep.lower_shift <= 0);
        CHECK(rep.upper_shift >= 0);
        CHECK(rep.upper_shift <= 2);
        for (const auto& wit : rep.witnesses) CHECK(wit.output_degrees.front() >= wit.n + wit.m);
      }
      for (auto kind : {AlgebraKind::gamma, AlgebraKind::chi}) {
        auto rep = grading_report(t, kind, w);
        REQUIRE(rep.support_highest);
        CHECK(*rep.support_highest <= 0);
        CHECK(*rep.support_lowest >= -4);
      }
    }
  }
}

TEST_CASE("triangular decompositions", "[kn-algebras]") {
  SECTION("one point, vector fields") {
    KNBasis b(points({Rat(0)}));
    auto d = triangular_decompose(b, AlgebraKind::vector_fields, {-4, 4});
    REQUIRE(d.strip_dimension() == 1);
    CHECK(d.strip_basis[0] == GradedElement::basis(-1, 0, 1));
    CHECK(d.minus_basis.size() == 4);
    CHECK(d.plus_basis.size() == 4);
  }
  SECTION("two points, vector fields") {
    KNBasis b(points({Rat(0), Rat(1)}));
    auto d = triangular_decompose(b, AlgebraKind::vector_fields, {-4, 4});
    CHECK(d.strip_dimension() == 4);
    for (const auto& g : d.strip_basis) {
      CHECK(g.min_degree() >= -1);
      CHECK(g.max_degree() <= 0);
    }
  }
  SECTION("two points, functions") {
    KNBasis b(points({Rat(0), Rat(1)}));
    auto d = triangular_decompose(b, AlgebraKind::functions, {-3, 3});
    CHECK(d.strip_dimension() == 2);
    for (const auto& g : d.plus_basis) CHECK(g.min_degree() >= 1);
    for (const auto& g : d.strip_basis) CHECK(g.min_degree() == 0);
    GradedElement unit(0);
    unit.add(0, 1, Rat(1));
    unit.add(0, 2, Rat(1));
    CHECK(expand_in_basis(b, Section{0, RationalFunction(Rat(1))}) == unit);
  }
  SECTION("window too small") {
    KNBasis b(points({Rat(0), Rat(1)}));
    CHECK_THROWS_WITH(triangular_decompose(b, AlgebraKind::vector_fields, {-1, 0}),
                      Catch::Matchers::ContainsSubstring("need [-2, 1]"));
  }
  SECTION("subalgebra closure") {
    for (int N = 1; N <= 3; ++N) {
      std::vector<Rat> pts{Rat(0), Rat(1), Rat(-1, 2)};
      pts.resize(static_cast<std::size_t>(N));
      KNBasis b{Config(pts)};
      StructureTables t(b);
      for (auto kind : {AlgebraKind::functions, AlgebraKind::vector_fields}) {
        auto d = triangular_decompose(b, kind, {-4, 4});
        auto closed = [&](const std::vector<GradedElement>& part, Part which) {
          for (const auto& x : part)
            for (const auto& y : part) {
              auto out = kind == AlgebraKind::functions ? t.product(x, y) : t.bracket(x, y);
              auto split = split_parts(b, out);
              for (auto other : {Part::minus, Part::strip, Part::plus})
                if (other != which && !split[other].is_zero()) return false;
            }
          return true;
        };
        INFO("N = " << N << " kind " << to_string(kind));
        CHECK(closed(d.plus_basis, Part::plus));
        CHECK(closed(d.minus_basis, Part::minus));
        // Cocycles vanish on each half.
        for (const auto& x : d.plus_basis)
          for (const auto& y : d.plus_basis)
            CHECK((kind == AlgebraKind::functions ? t.gamma(x, y) : t.chi0(x, y)).is_zero());
        for (const auto& x : d.minus_basis)
          for (const auto& y : d.minus_basis)
            CHECK((kind == AlgebraKind::functions ? t.gamma(x, y) : t.chi0(x, y)).is_zero());
      }
    }
  }
}
