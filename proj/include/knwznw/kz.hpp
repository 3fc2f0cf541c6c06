#ifndef KNWZNW_KZ_HPP
#define KNWZNW_KZ_HPP

#include "parallel.hpp"
#include "sugawara.hpp"

#include <optional>
#include <string>
#include <vector>

namespace knwznw {

struct TangentField {
  int point = 1;
  GradedElement field;
  Rat leading;                      // coefficient of d/dxi_p at P_p
  std::vector<int> orders;          // vanishing order of the coefficient at each P_i
  bool regular_at_points = true;
};

/// The point-moving fields e_{-1,p} with their local behaviour.
inline std::vector<TangentField> tangent_fields(const KNBasis& b) {
  const Config& cfg = b.config();
  std::vector<TangentField> out;
  for (int p = 1; p <= cfg.size(); ++p) {
    TangentField t;
    t.point = p;
    t.field = GradedElement::basis(-1, -1, p);
    const RationalFunction& e = b.section(-1, -1, p).value;
    for (int i = 1; i <= cfg.size(); ++i) {
      const int o = order_at(e, cfg.marked(i));
      t.orders.push_back(o);
      if (o < 0) t.regular_at_points = false;
    }
    t.leading = e.eval(cfg.point(p));
    out.push_back(std::move(t));
  }
  return out;
}

struct KZSystem {
  Config config;
  LieKind lie = LieKind::sl2;
  std::vector<Rat> weights;
  Rat level;
  int depth = 0;
  std::size_t dimension = 0;            // of the degree-0 slice
  std::vector<Matrix> matrices;         // A_p, with dPhi/dz_p = -A_p Phi
  std::vector<Matrix> classical;        // sum_{j != p} Omega_pj / (z_p - z_j)
  std::optional<Rat> kappa;             // least-squares fit of A_p ~ kappa * classical
  std::vector<Matrix> residuals;        // A_p - kappa * classical
  bool residual_zero = false;
  std::vector<std::optional<Rat>> residual_scalars;  // s with residual = s * Id, if so
  bool partial = false;                 // some column did not reduce
  std::vector<TangentField> tangents;
  int global_fields = 0;                // dimension of the span of 1, z, z^2 d/dz met by the e_{-1,p}

  int sign_convention() const { return kappa ? kappa->sign() : 0; }
};

inline std::optional<Rat> scalar_of(const Matrix& m) {
  const Rat c = m.rows() ? m(0, 0) : Rat(0);
  if (m == Matrix::identity(m.rows()) * c) return c;
  return std::nullopt;
}

inline KZSystem kz_matrices(const Config& cfg, LieKind kind, const std::vector<Rat>& weights, const Rat& level, int depth) {
  const GaugeAlgebra g = GaugeAlgebra::make(kind);
  const KNBasis b(cfg);
  const StructureTables t(b);
  const AffineAlgebra alg(g, t);
  const InducedModule m(alg, {kind == LieKind::abelian1 ? ModuleKind::fock : ModuleKind::weyl, weights, level, depth, {}});
  const Sugawara sug(m);
  (void)sug.rescaling();
  const CoinvariantReducer red(m, depth);
  const int N = cfg.size();

  KZSystem sys;
  sys.config = cfg;
  sys.lie = kind;
  sys.weights = weights;
  sys.level = level;
  sys.depth = depth;
  sys.dimension = m.vacuum_dim();
  sys.tangents = tangent_fields(b);
  sys.global_fields = std::min(N, 3);
  const std::size_t dim = m.vacuum_dim();

  // Columns: coinvariant representative of T[e_{-1,p}] applied to a basis vector.
  std::vector<std::vector<Rat>> columns(static_cast<std::size_t>(N) * dim);
  std::vector<char> reduced(columns.size(), 1);
  parallel_for(columns.size(), [&](std::size_t idx) {
    const int p = static_cast<int>(idx / dim) + 1;
    ModuleVector v = sug.T(sys.tangents[static_cast<std::size_t>(p - 1)].field, m.vacuum(static_cast<int>(idx % dim)));
    m.check_window(v);
    auto r = red.reduce(v);
    if (r.status != ReductionStatus::reduced) reduced[idx] = 0;
    columns[idx] = red.degree_zero_coordinates(r.representative);
  });
  for (char c : reduced)
    if (!c) sys.partial = true;

  for (int p = 1; p <= N; ++p) {
    Matrix a(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& col = columns[static_cast<std::size_t>(p - 1) * dim + j];
      for (std::size_t i = 0; i < dim; ++i) a(i, j) = col[i];
    }
    sys.matrices.push_back(std::move(a));
    Matrix c(dim, dim);
    for (int q = 1; q <= N; ++q) {
      if (q == p) continue;
      c += casimir_omega(g, m.factors(), static_cast<std::size_t>(p - 1), static_cast<std::size_t>(q - 1)) *
           (cfg.point(p) - cfg.point(q)).inverse();
    }
    sys.classical.push_back(std::move(c));
  }

  // Frobenius least squares over all p at once.
  Rat num(0), den(0);
  for (int p = 0; p < N; ++p)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        const Rat& c = sys.classical[static_cast<std::size_t>(p)](i, j);
        num += sys.matrices[static_cast<std::size_t>(p)](i, j) * c;
        den += c * c;
      }
  if (!den.is_zero()) sys.kappa = num / den;
  const Rat k = sys.kappa.value_or(Rat(0));
  sys.residual_zero = true;
  for (int p = 0; p < N; ++p) {
    Matrix r = sys.matrices[static_cast<std::size_t>(p)] - sys.classical[static_cast<std::size_t>(p)] * k;
    if (!r.is_zero()) sys.residual_zero = false;
    sys.residual_scalars.push_back(scalar_of(r));
    sys.residuals.push_back(std::move(r));
  }
  return sys;
}

struct FlatnessReport {
  bool applicable = false;  // needs three marked points
  bool ok = true;
  int relations = 0;
  bool measured_commute = true;  // [A_p, A_q] = 0 for the measured matrices
};

/// Infinitesimal braid relations for the Omega_pq on the degree-0 slice.
inline FlatnessReport flatness_check(const KZSystem& sys) {
  if (sys.partial) throw DomainError("flatness check needs a complete system");
  const GaugeAlgebra g = GaugeAlgebra::make(sys.lie);
  std::vector<FiniteModule> ms;
  for (const auto& w : sys.weights) ms.push_back(finite_irrep(g, w));
  const std::size_t N = ms.size();
  FlatnessReport rep;
  rep.applicable = N >= 3;
  auto omega = [&](std::size_t p, std::size_t q) { return casimir_omega(g, ms, p, q); };
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = p + 1; q < N; ++q) {
      const Matrix opq = omega(p, q);
      for (std::size_t r = 0; r < N; ++r) {
        if (r == p || r == q) continue;
        ++rep.relations;
        if (!commutator(opq, omega(p, r) + omega(q, r)).is_zero()) rep.ok = false;
        for (std::size_t s = r + 1; s < N; ++s) {
          if (s == p || s == q) continue;
          ++rep.relations;
          if (!commutator(opq, omega(r, s)).is_zero()) rep.ok = false;
        }
      }
    }
  for (std::size_t p = 0; p < sys.matrices.size(); ++p)
    for (std::size_t q = p + 1; q < sys.matrices.size(); ++q)
      if (!commutator(sys.matrices[p], sys.matrices[q]).is_zero()) rep.measured_commute = false;
  return rep;
}

}  // namespace knwznw

#endif  // KNWZNW_KZ_HPP
