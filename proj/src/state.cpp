#include "ergokit/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ergokit {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix)
    : DensityMatrix(std::move(matrix), std::vector<std::size_t>{}) {}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.dim() == 0) throw Error(ErrorCode::InvalidState, "state has dimension 0");
  if (dims_.empty()) dims_ = {matrix_.dim()};
  if (std::find(dims_.begin(), dims_.end(), std::size_t{0}) != dims_.end())
    throw Error(ErrorCode::InvalidState, "subsystem dimension 0");
  if (product(dims_) != matrix_.dim())
    throw Error(ErrorCode::DimensionMismatch, "subsystem dimensions multiply to " + std::to_string(product(dims_)) +
                                                  ", matrix has dimension " + std::to_string(matrix_.dim()));
  if (!matrix_.is_hermitian(kStateTol)) throw Error(ErrorCode::NotHermitian, "state is not Hermitian");
  const cplx tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kStateTol)
    throw Error(ErrorCode::InvalidState, "state trace " + std::to_string(tr.real()) + " differs from 1");

  auto eig = eig_hermitian(matrix_, kStateTol);
  std::vector<double> values(eig.values.values().begin(), eig.values.values().end());
  if (values.front() < -kStateTol)
    throw Error(ErrorCode::InvalidState, "state has negative eigenvalue " + std::to_string(values.front()));
  for (auto& x : values)
    if (x < 0.0) x = 0.0;
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  for (auto& x : values) x /= total;
  spectrum_ = Spectrum(std::move(values));
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> amplitudes, std::vector<std::size_t> dims) {
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (norm <= 0.0) throw Error(ErrorCode::InvalidState, "zero state vector");
  std::vector<cplx> psi(amplitudes.begin(), amplitudes.end());
  for (auto& a : psi) a /= std::sqrt(norm);
  return DensityMatrix(ComplexMatrix::outer(psi), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

double DensityMatrix::purity() const {
  double s = 0.0;
  for (double x : spectrum_.values()) s += x * x;
  return s;
}

DensityMatrix DensityMatrix::reduced(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> kept_dims;
  for (auto k : sorted) {
    if (k >= dims_.size()) throw Error(ErrorCode::InvalidArgument, "subsystem index out of range");
    kept_dims.push_back(dims_[k]);
  }
  return DensityMatrix(partial_trace(matrix_, dims_, sorted), std::move(kept_dims));
}

// ---------------------------------------------------------------------------
// Hamiltonian

Hamiltonian Hamiltonian::explicit_matrix(ComplexMatrix m) {
  auto eig = eig_hermitian(m);
  Hamiltonian h;
  h.matrix_ = std::move(m);
  h.energies_ = std::move(eig.values);
  h.eigenbasis_ = std::move(eig.vectors);
  return h;
}

Hamiltonian Hamiltonian::equispaced(std::size_t levels, double quantum) {
  if (levels == 0) throw Error(ErrorCode::InvalidArgument, "equispaced Hamiltonian needs at least one level");
  if (!(quantum > 0.0) || !std::isfinite(quantum))
    throw Error(ErrorCode::InvalidArgument, "equispaced energy quantum must be positive and finite");
  std::vector<double> e(levels);
  for (std::size_t j = 0; j < levels; ++j) e[j] = static_cast<double>(j) * quantum;
  Hamiltonian h;
  h.matrix_ = ComplexMatrix::diagonal(std::span<const double>(e));
  h.energies_ = Spectrum(e);
  h.eigenbasis_ = ComplexMatrix::identity(levels);
  h.ladder_ = Equispaced{levels, quantum};
  return h;
}

Hamiltonian Hamiltonian::composite(std::vector<Hamiltonian> locals) {
  if (locals.empty()) throw Error(ErrorCode::InvalidArgument, "composite Hamiltonian needs local terms");
  for (const auto& l : locals)
    if (l.is_composite()) throw Error(ErrorCode::InvalidArgument, "local terms must not be composite");

  std::size_t total = 1;
  for (const auto& l : locals) total *= l.dim();

  ComplexMatrix sum(total);
  for (std::size_t i = 0; i < locals.size(); ++i) {
    ComplexMatrix term = ComplexMatrix::identity(1);
    for (std::size_t j = 0; j < locals.size(); ++j)
      term = tensor(term, i == j ? locals[j].matrix() : ComplexMatrix::identity(locals[j].dim()));
    sum += term;
  }

  // Product eigenbasis; energies are sums of local energies, stable-sorted.
  ComplexMatrix basis = ComplexMatrix::identity(1);
  std::vector<double> energies{0.0};
  for (const auto& l : locals) {
    basis = tensor(basis, l.eigenbasis());
    std::vector<double> next;
    next.reserve(energies.size() * l.dim());
    for (double e : energies)
      for (double el : l.energies().values()) next.push_back(e + el);
    energies = std::move(next);
  }
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });

  Hamiltonian h;
  std::vector<double> sorted(total);
  h.eigenbasis_ = ComplexMatrix(total);
  for (std::size_t k = 0; k < total; ++k) {
    sorted[k] = energies[order[k]];
    for (std::size_t r = 0; r < total; ++r) h.eigenbasis_(r, k) = basis(r, order[k]);
  }
  h.matrix_ = std::move(sum);
  h.energies_ = Spectrum(std::move(sorted));
  h.locals_ = std::move(locals);
  return h;
}

std::vector<std::size_t> Hamiltonian::subsystem_dims() const {
  if (!is_composite()) return {dim()};
  std::vector<std::size_t> dims;
  for (const auto& l : locals_) dims.push_back(l.dim());
  return dims;
}

std::optional<Hamiltonian::Equispaced> Hamiltonian::equispaced_params() const {
  if (ladder_) return ladder_;
  const auto e = energies_.values();
  if (e.size() < 2) return std::nullopt;
  const double quantum = e[1] - e[0];
  if (!(quantum > 0.0)) return std::nullopt;
  const double tol = 1e-9 * std::max(1.0, std::abs(e.back()));
  for (std::size_t j = 0; j < e.size(); ++j)
    if (std::abs(e[j] - static_cast<double>(j) * quantum) > tol) return std::nullopt;
  return Equispaced{e.size(), quantum};
}

Hamiltonian Hamiltonian::negated() const { return explicit_matrix(matrix_ * cplx(-1.0)); }

Hamiltonian Hamiltonian::restricted(std::span<const std::size_t> indices) const {
  if (!is_composite()) throw Error(ErrorCode::StructureMismatch, "restriction needs a composite Hamiltonian");
  if (indices.empty()) throw Error(ErrorCode::StructureMismatch, "empty subsystem block");
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  for (auto i : sorted)
    if (i >= locals_.size()) throw Error(ErrorCode::StructureMismatch, "subsystem index out of range");
  if (sorted.size() == 1) return locals_[sorted.front()];
  std::vector<Hamiltonian> picked;
  for (auto i : sorted) picked.push_back(locals_[i]);
  return composite(std::move(picked));
}

// ---------------------------------------------------------------------------
// Entropies

double shannon_entropy(std::span<const double> probabilities, double base) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log(p);
  return std::max(0.0, s / std::log(base));
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho, double base) {
  if (!(base > 1.0)) throw Error(ErrorCode::InvalidArgument, "entropy log base must exceed 1");
  return {EntropyKind::VonNeumann, base, shannon_entropy(rho.spectrum().values(), base)};
}

EntropyValue tsallis_entropy(const DensityMatrix& rho, double order) {
  if (!(order > 1.0)) throw Error(ErrorCode::InvalidArgument, "Tsallis order must exceed 1");
  double s = 0.0;
  for (double x : rho.spectrum().values()) s += std::pow(x, order);
  return {EntropyKind::Tsallis, order, std::max(0.0, (1.0 - s) / (order - 1.0))};
}

EntropyValue linear_entropy(const DensityMatrix& rho) {
  auto t = tsallis_entropy(rho, 2.0);
  return {EntropyKind::Linear, 2.0, t.value};
}

// ---------------------------------------------------------------------------
// Coherence

double coherence_l1(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  double s = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      if (r != c) s += std::abs(m(r, c));
  return s;
}

DensityMatrix dephased(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  std::vector<double> diag(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) diag[i] = m(i, i).real();
  return DensityMatrix(ComplexMatrix::diagonal(std::span<const double>(diag)),
                       std::vector<std::size_t>(rho.dims().begin(), rho.dims().end()));
}

double coherence_relative_entropy(const DensityMatrix& rho, double base) {
  const double s_inc = von_neumann_entropy(dephased(rho), base).value;
  const double s = von_neumann_entropy(rho, base).value;
  return std::max(0.0, s_inc - s);
}

Interval coherence_robustness(const DensityMatrix& rho) {
  const double l1 = coherence_l1(rho);
  const std::size_t d = rho.dim();
  if (d <= 2 || rho.spectrum().back() >= 1.0 - kStateTol) return {l1, l1};
  return {l1 / static_cast<double>(d - 1), l1};
}

// ---------------------------------------------------------------------------
// Named states

DensityMatrix qubit_state(double q, double c, double theta) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidBlochParameters, "population q must lie in [0, 1]");
  if (!(c >= 0.0) || c > std::sqrt(q * (1.0 - q)) + 1e-12)
    throw Error(ErrorCode::InvalidBlochParameters, "coherence c must lie in [0, sqrt(q(1-q))]");
  ComplexMatrix m(2);
  m(0, 0) = 1.0 - q;
  m(1, 1) = q;
  m(0, 1) = c * std::polar(1.0, theta);
  m(1, 0) = c * std::polar(1.0, -theta);
  return DensityMatrix(std::move(m));
}

DensityMatrix ghz_state(double theta) {
  std::vector<cplx> psi(8, 0.0);
  psi[0] = std::cos(theta);
  psi[7] = std::sin(theta);
  return DensityMatrix::pure(psi, {2, 2, 2});
}

DensityMatrix werner_d_state(std::size_t d, double v) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "Werner state needs d >= 2");
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidArgument, "Werner weight v must lie in [0, 1]");
  const double dd = static_cast<double>(d);
  ComplexMatrix m(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = v / dd + (r == c ? (1.0 - v) / dd : 0.0);
  return DensityMatrix(std::move(m));
}

DensityMatrix werner2_state(double v, double theta) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidArgument, "Werner weight v must lie in [0, 1]");
  std::vector<cplx> psi{std::cos(theta), 0.0, 0.0, std::sin(theta)};
  ComplexMatrix m = ComplexMatrix::outer(psi) * cplx(v) + ComplexMatrix::identity(4) * cplx((1.0 - v) / 4.0);
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix isotropic_state(double v, double lambda) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidArgument, "isotropic weight v must lie in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  std::vector<cplx> psi{std::sqrt(lambda), 0.0, 0.0, std::sqrt(1.0 - lambda)};
  ComplexMatrix m = (ComplexMatrix::identity(4) * cplx(1.0 - v) + ComplexMatrix::outer(psi) * cplx(4.0 * v - 1.0)) *
                    cplx(1.0 / 3.0);
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix schmidt_pair_state(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  std::vector<cplx> psi{std::sqrt(lambda), 0.0, 0.0, std::sqrt(1.0 - lambda)};
  return DensityMatrix::pure(psi, {2, 2});
}

DensityMatrix acin_state(std::span<const double> l, double theta) {
  if (l.size() != 5) throw Error(ErrorCode::InvalidCoefficients, "canonical three-qubit form needs 5 coefficients");
  double norm = 0.0;
  for (double x : l) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidCoefficients, "coefficients must be nonnegative");
    norm += x * x;
  }
  if (std::abs(norm - 1.0) > kStateTol) throw Error(ErrorCode::InvalidCoefficients, "squared coefficients must sum to 1");
  if (!(theta >= 0.0 && theta <= M_PI)) throw Error(ErrorCode::InvalidCoefficients, "phase must lie in [0, pi]");
  std::vector<cplx> psi(8, 0.0);
  psi[0b000] = l[0];
  psi[0b100] = l[1] * std::polar(1.0, theta);
  psi[0b101] = l[2];
  psi[0b110] = l[3];
  psi[0b111] = l[4];
  return DensityMatrix::pure(psi, {2, 2, 2});
}

DensityMatrix w_state() {
  std::vector<cplx> psi(8, 0.0);
  psi[0b100] = psi[0b010] = psi[0b001] = 1.0 / std::sqrt(3.0);
  return DensityMatrix::pure(psi, {2, 2, 2});
}

}  // namespace ergokit
