#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ergokit/linalg.hpp"

namespace ergokit {

inline constexpr double kStateTol = 1e-9;

/// A validated quantum state on a (possibly composite) finite space.
///
/// Construction checks Hermiticity and unit trace within kStateTol and
/// rejects eigenvalues below -kStateTol. Eigenvalues in [-kStateTol, 0) are
/// clamped to zero and the spectrum renormalized. The spectrum is computed
/// once at construction because validation needs it.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);
  DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims);

  static DensityMatrix pure(std::span<const cplx> amplitudes, std::vector<std::size_t> dims);
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  /// Tr rho^2 from the clamped spectrum.
  double purity() const;

  /// Reduced state on the listed subsystems.
  DensityMatrix reduced(std::span<const std::size_t> keep) const;

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
  Spectrum spectrum_;
};

/// Energy observable. Three forms: an explicit Hermitian matrix, the
/// equispaced ladder sum_j j*E |j><j|, or a sum of local terms
/// sum_i I (x) ... (x) H_i (x) ... (x) I over an ordered list of subsystems.
class Hamiltonian {
 public:
  struct Equispaced {
    std::size_t levels;
    double quantum;
  };

  static Hamiltonian explicit_matrix(ComplexMatrix m);
  static Hamiltonian equispaced(std::size_t levels, double quantum);
  /// Local term i acts on subsystem i.
  static Hamiltonian composite(std::vector<Hamiltonian> locals);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  /// Eigenenergies, ascending.
  const Spectrum& energies() const noexcept { return energies_; }
  /// Eigenvectors as columns, matching energies().
  const ComplexMatrix& eigenbasis() const noexcept { return eigenbasis_; }

  bool is_composite() const noexcept { return !locals_.empty(); }
  std::span<const Hamiltonian> locals() const noexcept { return locals_; }
  /// Subsystem dimensions: the local dims for composites, {dim()} otherwise.
  std::vector<std::size_t> subsystem_dims() const;

  /// Set when the spectrum is {0, E, 2E, ...} with E > 0 (within 1e-9),
  /// whatever the form it was built from.
  std::optional<Equispaced> equispaced_params() const;

  /// Explicit form of -H.
  Hamiltonian negated() const;

  /// Composite of the local terms with the given subsystem indices
  /// (single local term if indices has one element). Requires a composite.
  Hamiltonian restricted(std::span<const std::size_t> indices) const;

 private:
  Hamiltonian() = default;

  ComplexMatrix matrix_;
  Spectrum energies_;
  ComplexMatrix eigenbasis_;
  std::vector<Hamiltonian> locals_;
  std::optional<Equispaced> ladder_;
};

enum class EntropyKind { VonNeumann, Tsallis, Linear };

struct EntropyValue {
  EntropyKind kind;
  double parameter;  // log base for von Neumann, order for Tsallis, 2 for linear
  double value;
};

/// Shannon entropy of a probability vector, 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities, double base);

EntropyValue von_neumann_entropy(const DensityMatrix& rho, double base = 2.0);
EntropyValue tsallis_entropy(const DensityMatrix& rho, double order);
EntropyValue linear_entropy(const DensityMatrix& rho);

// Coherence measures are taken in the computational basis, which callers
// align with the Hamiltonian eigenbasis ordered by ascending energy.

double coherence_l1(const DensityMatrix& rho);
double coherence_relative_entropy(const DensityMatrix& rho, double base = 2.0);

struct Interval {
  double lower;
  double upper;
};

/// Exact for qubits and pure states (equal to the l1 coherence); otherwise
/// the bracket [l1/(d-1), l1].
Interval coherence_robustness(const DensityMatrix& rho);

/// Diagonal part of rho.
DensityMatrix dephased(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Named states

/// [[1-q, c e^{i theta}], [c e^{-i theta}, q]]
DensityMatrix qubit_state(double q, double c, double theta = 0.0);
/// cos(theta)|000> + sin(theta)|111>
DensityMatrix ghz_state(double theta);
/// (1-v)/d I + v |phi><phi|, phi the uniform superposition.
DensityMatrix werner_d_state(std::size_t d, double v);
/// v |psi><psi| + (1-v)/4 I, psi = cos(theta)|00> + sin(theta)|11>.
DensityMatrix werner2_state(double v, double theta);
/// [(1-v) I + (4v-1) |psi><psi|] / 3, psi = sqrt(lambda)|00> + sqrt(1-lambda)|11>.
DensityMatrix isotropic_state(double v, double lambda);
/// sqrt(lambda)|00> + sqrt(1-lambda)|11>
DensityMatrix schmidt_pair_state(double lambda);
/// Three-qubit canonical form
/// l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>.
DensityMatrix acin_state(std::span<const double> l, double theta);
/// (|100> + |010> + |001>)/sqrt(3)
DensityMatrix w_state();

}  // namespace ergokit
