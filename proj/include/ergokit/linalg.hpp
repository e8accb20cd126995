#pragma once

// Dense complex linear algebra for small Hilbert spaces (d up to a few dozen).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ergokit/errors.hpp"

namespace ergokit {

using cplx = std::complex<double>;

/// Square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const cplx> values);
  /// |v><v|
  static ComplexMatrix outer(std::span<const cplx> v);

  std::size_t dim() const noexcept { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }
  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  /// Largest |M - M^dagger| entry is at most tol.
  bool is_hermitian(double tol) const;
  /// Largest |M M^dagger - I| entry is at most tol.
  bool is_unitary(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
/// Re Tr[a b] without forming the product.
double trace_product_real(const ComplexMatrix& a, const ComplexMatrix& b);
/// U m U^dagger
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);

/// Real eigenvalues sorted ascending.
class Spectrum {
 public:
  Spectrum() = default;
  /// Sorts the given values ascending.
  explicit Spectrum(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }
  double sum() const;

 private:
  std::vector<double> values_;
};

struct Eigensystem {
  Spectrum values;
  ComplexMatrix vectors;  // column k belongs to values[k]
};

inline constexpr int kJacobiSweepBudget = 100;
inline constexpr double kDegeneracyTol = 1e-10;

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Eigenvectors inside a cluster of
/// eigenvalues closer than kDegeneracyTol are ordered by the index of their
/// largest-magnitude component, then by the real parts compared
/// lexicographically. Each eigenvector is rephased so that its
/// largest-magnitude component is real and positive.
///
/// Throws NotHermitian if m fails is_hermitian(tol) and NoConvergence if the
/// off-diagonal mass does not drop below 1e-12 * ||m||_F within
/// kJacobiSweepBudget sweeps.
Eigensystem eig_hermitian(const ComplexMatrix& m, double tol = 1e-9);

/// Kronecker product a (x) b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced matrix on the subsystems listed in `keep` (any order; the result
/// is ordered by ascending subsystem index). `keep` must be a nonempty
/// proper subset of {0, ..., dims.size()-1}.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// p is majorized by q: descending partial sums of q dominate those of p
/// (compared at 1e-12). Throws LengthMismatch on unequal lengths.
bool majorizes(const Spectrum& p, const Spectrum& q);

}  // namespace ergokit
