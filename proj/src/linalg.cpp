#include "ergokit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ergokit {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorCode::InvalidBlochParameters: return "InvalidBlochParameters";
    case ErrorCode::InvalidCoefficients: return "InvalidCoefficients";
    case ErrorCode::NotEquispaced: return "NotEquispaced";
    case ErrorCode::EntropyOutOfRange: return "EntropyOutOfRange";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::WcfRequiresTripartite: return "WcfRequiresTripartite";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_)
    throw Error(ErrorCode::DimensionMismatch,
                "matrix of dimension " + std::to_string(dim_) + " needs " +
                    std::to_string(dim_ * dim_) + " entries, got " +
                    std::to_string(data_.size()));
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v) {
  ComplexMatrix m(v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) acc += (*this)(r, k) * std::conj((*this)(c, k));
      if (std::abs(acc - (r == c ? 1.0 : 0.0)) > tol) return false;
    }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix sum of unequal dimensions");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix difference of unequal dimensions");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix product of unequal dimensions");
  const std::size_t d = a.dim();
  ComplexMatrix out(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const cplx ark = a(r, k);
      if (ark == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "comparing matrices of unequal dimensions");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) s += std::norm(x);
  return std::sqrt(s);
}

double trace_product_real(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "trace of product of unequal dimensions");
  double t = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t k = 0; k < a.dim(); ++k) t += (a(r, k) * b(k, r)).real();
  return t;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

double Spectrum::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

// ---------------------------------------------------------------------------
// Jacobi

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Annihilates a(p,q) with J = P R P^dagger, P = diag(1, e^{-i phi}),
// where a(p,q) = |a(p,q)| e^{i phi} and R is the real Jacobi rotation of the
// block [[a_pp, |a_pq|], [|a_pq|, a_qq]].
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const cplx phase = apq / g;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double zeta = (aqq - app) / (2.0 * g);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t d = a.dim();
  // Column update A <- A J, J = [[c, s e^{i phi}], [-s e^{-i phi}, c]].
  for (std::size_t k = 0; k < d; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - s * std::conj(phase) * akq;
    a(k, q) = s * phase * akp + c * akq;
  }
  // Row update A <- J^dagger A.
  for (std::size_t k = 0; k < d; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * std::conj(phase) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < d; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - s * std::conj(phase) * vkq;
    v(k, q) = s * phase * vkp + c * vkq;
  }
}

std::size_t dominant_index(const ComplexMatrix& v, std::size_t col) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t r = 0; r < v.dim(); ++r) {
    const double mag = std::abs(v(r, col));
    if (mag > best_mag + 1e-12) {
      best_mag = mag;
      best = r;
    }
  }
  return best;
}

}  // namespace

Eigensystem eig_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_hermitian(tol)) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  const std::size_t d = m.dim();

  // Work on the exactly Hermitian part.
  ComplexMatrix a(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  ComplexMatrix v = ComplexMatrix::identity(d);

  const double scale = frobenius_norm(a);
  const double threshold = 1e-12 * scale;
  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kJacobiSweepBudget && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded its sweep budget");

  // Rephase so the dominant component of each eigenvector is real positive.
  for (std::size_t col = 0; col < d; ++col) {
    const std::size_t r = dominant_index(v, col);
    const double mag = std::abs(v(r, col));
    if (mag == 0.0) continue;
    const cplx ph = std::conj(v(r, col)) / mag;
    for (std::size_t k = 0; k < d; ++k) v(k, col) *= ph;
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  // Reorder inside degenerate clusters.
  auto cluster_less = [&](std::size_t i, std::size_t j) {
    const std::size_t di = dominant_index(v, i);
    const std::size_t dj = dominant_index(v, j);
    if (di != dj) return di < dj;
    for (std::size_t k = 0; k < d; ++k) {
      const double ri = v(k, i).real();
      const double rj = v(k, j).real();
      if (ri != rj) return ri < rj;
    }
    return false;
  };
  std::size_t begin = 0;
  while (begin < d) {
    std::size_t end = begin + 1;
    while (end < d && a(order[end], order[end]).real() - a(order[end - 1], order[end - 1]).real() < kDegeneracyTol)
      ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(end), cluster_less);
    begin = end;
  }

  std::vector<double> values(d);
  ComplexMatrix vectors(d);
  for (std::size_t k = 0; k < d; ++k) {
    values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < d; ++r) vectors(r, k) = v(r, order[k]);
  }
  return {Spectrum(std::move(values)), std::move(vectors)};
}

// ---------------------------------------------------------------------------
// Composite systems

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t n = dims.size();
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "subsystem dimension must be positive");
    total *= d;
  }
  if (total != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "product of subsystem dimensions (" + std::to_string(total) +
                                                  ") differs from matrix dimension (" + std::to_string(m.dim()) + ")");
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw Error(ErrorCode::InvalidArgument, "kept subsystem index out of range");
    if (kept[k]) throw Error(ErrorCode::InvalidArgument, "kept subsystem listed twice");
    kept[k] = true;
  }
  if (keep.empty() || keep.size() == n)
    throw Error(ErrorCode::InvalidArgument, "kept subsystems must form a nonempty proper subset");

  // Split every global index into (kept index, traced index).
  std::vector<std::size_t> kept_idx(total), traced_idx(total);
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < n; ++s)
    if (kept[s]) kept_dim *= dims[s];
  for (std::size_t g = 0; g < total; ++g) {
    std::size_t rem = g;
    std::size_t ki = 0, ti = 0, kstride = 1, tstride = 1;
    for (std::size_t s = n; s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        ki += digit * kstride;
        kstride *= dims[s];
      } else {
        ti += digit * tstride;
        tstride *= dims[s];
      }
    }
    kept_idx[g] = ki;
    traced_idx[g] = ti;
  }

  ComplexMatrix out(kept_dim);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_idx[i] == traced_idx[j]) out(kept_idx[i], kept_idx[j]) += m(i, j);
  return out;
}

bool majorizes(const Spectrum& p, const Spectrum& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::LengthMismatch, "majorization needs vectors of equal length");
  double sp = 0.0, sq = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    sp += p[k];
    sq += q[k];
    if (sq < sp - 1e-12) return false;
  }
  return true;
}

}  // namespace ergokit
