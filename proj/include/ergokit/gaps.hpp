#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ergokit/state.hpp"

namespace ergokit {

using Block = std::vector<std::size_t>;
using Partition = std::vector<Block>;

struct ErgotropicGaps {
  double delta_out;  // global minus local ergotropy
  double delta_in;   // local minus global antiergotropy
};

/// Gaps between global unitaries and products of single-subsystem
/// unitaries. For a sum of local terms the best product unitary acts on
/// each factor independently, so the local optimum is the sum of the
/// reduced-state ergotropies (antiergotropies).
ErgotropicGaps ergotropic_gaps(const DensityMatrix& rho, const Hamiltonian& h);
/// Same, with unitaries local to the blocks of a partition.
ErgotropicGaps ergotropic_gaps(const DensityMatrix& rho, const Hamiltonian& h, const Partition& partition);

/// C(rho; H) - sum over blocks of C(rho_block; H_block). The blocks must
/// cover every subsystem exactly once and there must be at least two.
double capacity_gap(const DensityMatrix& rho, const Hamiltonian& h, const Partition& partition);

/// C(rho; H) - sum_i C(rho_i; H_i) over single subsystems.
double fully_separable_gap(const DensityMatrix& rho, const Hamiltonian& h);

/// All 2^{n-1} - 1 unordered bipartitions X|X^c. The block holding
/// subsystem 0 comes first; the list is sorted lexicographically by it.
std::vector<Partition> bipartitions(std::size_t n);

/// Wootters concurrence of a two-qubit state.
double concurrence_2q(const DensityMatrix& rho);

/// 2(1 - sqrt(1 - C^2)), the convex-roof capacity gap of a two-qubit state
/// with local Hamiltonians |1><1|, in units of E.
double capacity_gap_mixed_2q(const DensityMatrix& rho);

/// Per-subsystem charging gaps of the three-qubit canonical form, once
/// from the closed forms in the generalized Schmidt coefficients and once
/// from the explicit state.
struct AcinGaps {
  double gamma;
  std::array<double, 3> delta_in_closed;  // A|BC, B|CA, C|AB (units of E)
  std::array<double, 3> delta_in_direct;
  double fully_separable_closed;
  double fully_separable_direct;
  /// (1/2) sum of the three bipartite capacity gaps, direct evaluation.
  double half_bipartite_sum;
};

AcinGaps acin_gap_formulas(std::span<const double> l, double theta);

struct MultipartiteMeasures {
  std::vector<double> bipartite_gaps;  // ordered as bipartitions(n)
  double mbwcg;                        // min over bipartitions
  double abcg;                         // alpha * Gamma(prod) * sum
  std::optional<double> wcf;           // tripartite only
  double wcv;                          // geometric mean
  double alpha;
};

/// Gaps at or below this count as zero in the indicator of the average
/// measure.
inline constexpr double kGapZeroTol = 1e-9;

/// Requires a pure state (Tr rho^2 >= 1 - 1e-8). alpha defaults to 1/N for
/// N bipartitions.
MultipartiteMeasures multipartite_measures(const DensityMatrix& rho, const Hamiltonian& h,
                                           std::optional<double> alpha = std::nullopt);

/// sqrt(Q prod_X (Q - gap_X) / 3), Q = sum of the three bipartite gaps.
/// Throws WcfRequiresTripartite unless exactly three gaps are given.
double capacity_fill(std::span<const double> gaps);

struct GapReport {
  double global_capacity;
  std::vector<double> local_capacities;
  double delta_in;
  double delta_out;
  std::vector<Partition> partitions;
  std::vector<double> bipartite_gaps;
  double fully_separable_gap;
  std::optional<double> concurrence;          // 2x2 only
  std::optional<double> closed_form_gap_2q;   // 2x2 only
  std::optional<MultipartiteMeasures> measures;  // pure states only
};

GapReport gap_report(const DensityMatrix& rho, const Hamiltonian& h, std::optional<double> alpha = std::nullopt);

}  // namespace ergokit
