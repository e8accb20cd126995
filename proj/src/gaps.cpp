#include "ergokit/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ergokit/ergotropy.hpp"

namespace ergokit {

namespace {

void require_structure(const DensityMatrix& rho, const Hamiltonian& h) {
  if (!h.is_composite() || h.locals().size() < 2)
    throw Error(ErrorCode::StructureMismatch, "gap quantities need a composite Hamiltonian of at least two subsystems");
  const auto hd = h.subsystem_dims();
  if (!std::equal(hd.begin(), hd.end(), rho.dims().begin(), rho.dims().end()))
    throw Error(ErrorCode::StructureMismatch, "state subsystem dimensions differ from the Hamiltonian's");
}

Partition validated(const Partition& partition, std::size_t n) {
  if (partition.size() < 2) throw Error(ErrorCode::StructureMismatch, "partition needs at least two blocks");
  std::vector<int> seen(n, 0);
  Partition out;
  for (const auto& block : partition) {
    if (block.empty()) throw Error(ErrorCode::StructureMismatch, "partition has an empty block");
    Block b = block;
    std::sort(b.begin(), b.end());
    for (auto i : b) {
      if (i >= n) throw Error(ErrorCode::StructureMismatch, "partition names subsystem " + std::to_string(i));
      if (seen[i]++) throw Error(ErrorCode::StructureMismatch, "partition blocks overlap");
    }
    out.push_back(std::move(b));
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorCode::StructureMismatch, "partition does not cover every subsystem");
  return out;
}

Partition singletons(std::size_t n) {
  Partition p;
  for (std::size_t i = 0; i < n; ++i) p.push_back({i});
  return p;
}

}  // namespace

ErgotropicGaps ergotropic_gaps(const DensityMatrix& rho, const Hamiltonian& h, const Partition& partition) {
  require_structure(rho, h);
  const auto blocks = validated(partition, h.locals().size());
  const auto global = work_quantities(rho, h);
  double local_ergotropy = 0.0, local_antiergotropy = 0.0;
  for (const auto& b : blocks) {
    const auto w = work_quantities(rho.reduced(b), h.restricted(b));
    local_ergotropy += w.ergotropy;
    local_antiergotropy += w.antiergotropy;
  }
  return {global.ergotropy - local_ergotropy, local_antiergotropy - global.antiergotropy};
}

ErgotropicGaps ergotropic_gaps(const DensityMatrix& rho, const Hamiltonian& h) {
  return ergotropic_gaps(rho, h, singletons(rho.dims().size()));
}

double capacity_gap(const DensityMatrix& rho, const Hamiltonian& h, const Partition& partition) {
  require_structure(rho, h);
  const auto blocks = validated(partition, h.locals().size());
  double gap = work_quantities(rho, h).capacity;
  for (const auto& b : blocks) gap -= work_quantities(rho.reduced(b), h.restricted(b)).capacity;
  return gap;
}

double fully_separable_gap(const DensityMatrix& rho, const Hamiltonian& h) {
  return capacity_gap(rho, h, singletons(rho.dims().size()));
}

std::vector<Partition> bipartitions(std::size_t n) {
  if (n < 2) return {};
  std::vector<Partition> out;
  // Subsets of {1..n-1} joined with subsystem 0, excluding the full set.
  const std::size_t count = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask + 1 < count; ++mask) {
    Block first{0}, second;
    for (std::size_t i = 1; i < n; ++i) ((mask >> (i - 1)) & 1 ? first : second).push_back(i);
    out.push_back({std::move(first), std::move(second)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// 1 - C^2 for a numerically pure two-qubit state, from the reduced state:
// (a00 - a11)^2 + 4|a01|^2. Unlike 1 - C^2 it carries no cancellation, which
// matters because the convex-roof gap takes its square root.
std::optional<double> pure_one_minus_c2(const DensityMatrix& rho) {
  if (rho.spectrum()[2] > 1e-12) return std::nullopt;
  const std::array<std::size_t, 2> dims{2, 2};
  const std::array<std::size_t, 1> keep{0};
  const ComplexMatrix a = partial_trace(rho.matrix(), dims, keep);
  const double diff = a(0, 0).real() - a(1, 1).real();
  return std::min(1.0, diff * diff + 4.0 * std::norm(a(0, 1)));
}

}  // namespace

double concurrence_2q(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw Error(ErrorCode::WrongDimension, "concurrence needs a two-qubit state");
  if (const auto rest = pure_one_minus_c2(rho)) return std::sqrt(1.0 - *rest);
  const auto& m = rho.matrix();
  ComplexMatrix yy(4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const ComplexMatrix flipped = yy * m.conj() * yy;

  auto eig = eig_hermitian(m, kStateTol);
  std::vector<double> roots;
  for (double x : eig.values.values()) roots.push_back(std::sqrt(std::max(0.0, x)));
  const ComplexMatrix sqrt_rho = eig.vectors * ComplexMatrix::diagonal(std::span<const double>(roots)) * eig.vectors.adjoint();
  ComplexMatrix r = sqrt_rho * flipped * sqrt_rho;
  // Symmetrize away rounding before the Hermitian solver.
  r = (r + r.adjoint()) * cplx(0.5);
  auto mu = eig_hermitian(r, 1e-8).values;
  std::array<double, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) s[i] = std::sqrt(std::max(0.0, mu[3 - i]));
  return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

double capacity_gap_mixed_2q(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw Error(ErrorCode::WrongDimension, "concurrence needs a two-qubit state");
  if (const auto rest = pure_one_minus_c2(rho)) return 2.0 * (1.0 - std::sqrt(*rest));
  const double c = concurrence_2q(rho);
  return 2.0 * (1.0 - std::sqrt(std::max(0.0, 1.0 - c * c)));
}

AcinGaps acin_gap_formulas(std::span<const double> l, double theta) {
  const DensityMatrix rho = acin_state(l, theta);  // validates the coefficients
  // Extended precision: each radicand can sit at zero (GHZ), where the
  // square root turns double rounding into errors near 1e-8.
  using ld = long double;
  ld norm = 0.0L;
  for (double x : l) norm += static_cast<ld>(x) * x;
  norm = std::sqrt(norm);
  const ld a0 = l[0] / norm, a1 = l[1] / norm, a2 = l[2] / norm, a3 = l[3] / norm, a4 = l[4] / norm;
  const ld l0 = a0 * a0, l1 = a1 * a1, l2 = a2 * a2, l3 = a3 * a3, l4 = a4 * a4;
  const ld re = a1 * a4 * std::cos(static_cast<ld>(theta)) - a2 * a3;
  const ld im = -a1 * a4 * std::sin(static_cast<ld>(theta));
  const ld gamma = re * re + im * im;
  const std::array<ld, 3> dets{l0 * (1.0L - (l0 + l1)), l0 * (l3 + l4) + gamma, l0 * (l2 + l4) + gamma};

  AcinGaps out{};
  out.gamma = static_cast<double>(gamma);
  ld root_sum = 0.0L;
  for (std::size_t x = 0; x < 3; ++x) {
    const ld root = std::sqrt(std::max(0.0L, 1.0L - 4.0L * dets[x]));
    out.delta_in_closed[x] = static_cast<double>(1.0L - root);
    root_sum += root;
  }
  out.fully_separable_closed = static_cast<double>(3.0L - root_sum);

  const Hamiltonian h = Hamiltonian::composite({Hamiltonian::equispaced(2, 1.0), Hamiltonian::equispaced(2, 1.0),
                                                Hamiltonian::equispaced(2, 1.0)});
  const std::array<Partition, 3> splits{Partition{{0}, {1, 2}}, Partition{{1}, {0, 2}}, Partition{{2}, {0, 1}}};
  double bipartite_sum = 0.0;
  for (std::size_t x = 0; x < 3; ++x) {
    out.delta_in_direct[x] = ergotropic_gaps(rho, h, splits[x]).delta_in;
    bipartite_sum += capacity_gap(rho, h, splits[x]);
  }
  out.fully_separable_direct = fully_separable_gap(rho, h);
  out.half_bipartite_sum = 0.5 * bipartite_sum;
  return out;
}

double capacity_fill(std::span<const double> gaps) {
  if (gaps.size() != 3) throw Error(ErrorCode::WcfRequiresTripartite, "capacity fill is defined for three parties");
  const double q = gaps[0] + gaps[1] + gaps[2];
  double prod = q / 3.0;
  for (double g : gaps) prod *= (q - g);
  return std::sqrt(std::max(0.0, prod));
}

MultipartiteMeasures multipartite_measures(const DensityMatrix& rho, const Hamiltonian& h,
                                           std::optional<double> alpha) {
  require_structure(rho, h);
  if (rho.purity() < 1.0 - 1e-8) throw Error(ErrorCode::NotPure, "multipartite measures need a pure state");
  const auto parts = bipartitions(rho.dims().size());
  MultipartiteMeasures m{};
  for (const auto& p : parts) m.bipartite_gaps.push_back(std::max(0.0, capacity_gap(rho, h, p)));
  const double n = static_cast<double>(parts.size());
  m.alpha = alpha.value_or(1.0 / n);
  m.mbwcg = *std::min_element(m.bipartite_gaps.begin(), m.bipartite_gaps.end());
  const double sum = std::accumulate(m.bipartite_gaps.begin(), m.bipartite_gaps.end(), 0.0);
  const bool any_zero = m.mbwcg <= kGapZeroTol;
  m.abcg = any_zero ? 0.0 : m.alpha * sum;
  double log_sum = 0.0;
  for (double g : m.bipartite_gaps) log_sum += any_zero ? 0.0 : std::log(g);
  m.wcv = any_zero ? 0.0 : std::exp(log_sum / n);
  if (parts.size() == 3) m.wcf = capacity_fill(m.bipartite_gaps);
  return m;
}

GapReport gap_report(const DensityMatrix& rho, const Hamiltonian& h, std::optional<double> alpha) {
  require_structure(rho, h);
  const std::size_t n = rho.dims().size();
  GapReport r{};
  r.global_capacity = work_quantities(rho, h).capacity;
  double local_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Block b{i};
    r.local_capacities.push_back(work_quantities(rho.reduced(b), h.restricted(b)).capacity);
    local_sum += r.local_capacities.back();
  }
  const auto eg = ergotropic_gaps(rho, h);
  r.delta_in = eg.delta_in;
  r.delta_out = eg.delta_out;
  r.fully_separable_gap = r.global_capacity - local_sum;
  r.partitions = bipartitions(n);
  for (const auto& p : r.partitions) r.bipartite_gaps.push_back(capacity_gap(rho, h, p));
  if (rho.dims().size() == 2 && rho.dims()[0] == 2 && rho.dims()[1] == 2) {
    r.concurrence = concurrence_2q(rho);
    r.closed_form_gap_2q = capacity_gap_mixed_2q(rho);
  }
  if (rho.purity() >= 1.0 - 1e-8) r.measures = multipartite_measures(rho, h, alpha);
  return r;
}

}  // namespace ergokit
