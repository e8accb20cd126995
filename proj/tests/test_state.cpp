#include <doctest.h>

#include <cmath>

#include "ergokit/state_io.hpp"
#include "support.hpp"

using namespace ergokit;
using testing::rng;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("DensityMatrix validation") {
  ComplexMatrix skew(2);
  skew(0, 0) = 0.5;
  skew(1, 1) = 0.5;
  skew(0, 1) = 0.1;
  CHECK(code_of([&] { DensityMatrix{skew}; }) == ErrorCode::NotHermitian);
  CHECK(code_of([] { DensityMatrix{ComplexMatrix::identity(2)}; }) == ErrorCode::InvalidState);

  const std::vector<double> negative{1.1, -0.1};
  CHECK(code_of([&] { DensityMatrix{ComplexMatrix::diagonal(std::span<const double>(negative))}; }) ==
        ErrorCode::InvalidState);
  CHECK(code_of([] { DensityMatrix(ComplexMatrix::identity(4) * cplx(0.25), {2, 3}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("DensityMatrix clamps solver-level negative eigenvalues") {
  const std::vector<double> p{1.0 + 5e-10, -5e-10};
  const DensityMatrix rho(ComplexMatrix::diagonal(std::span<const double>(p)));
  CHECK(rho.spectrum()[0] == 0.0);
  CHECK(std::abs(rho.spectrum().sum() - 1.0) <= 1e-15);
}

TEST_CASE("DensityMatrix basics") {
  const auto mm = DensityMatrix::maximally_mixed(3);
  CHECK(mm.purity() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const std::vector<cplx> psi{1.0, cplx(0.0, 1.0)};
  const auto pure = DensityMatrix::pure(psi, {2});
  CHECK(pure.purity() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(pure.matrix()(0, 1) - cplx(0.0, -0.5)) <= 1e-15);

  const auto ghz = ghz_state(0.4);
  const std::vector<std::size_t> keep{1, 2};
  const auto bc = ghz.reduced(keep);
  CHECK(bc.dims().size() == 2);
  CHECK(bc.dim() == 4);
  CHECK(bc.spectrum().back() == doctest::Approx(std::cos(0.4) * std::cos(0.4)));
}

TEST_CASE("Hamiltonian forms") {
  const auto ladder = Hamiltonian::equispaced(4, 0.5);
  for (std::size_t i = 0; i < 4; ++i) CHECK(ladder.energies()[i] == 0.5 * static_cast<double>(i));
  REQUIRE(ladder.equispaced_params());
  CHECK(ladder.equispaced_params()->levels == 4);

  const auto pair = testing::qubit_sum(2);
  const std::vector<double> expect{0.0, 1.0, 1.0, 2.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(pair.energies()[i] == expect[i]);
  CHECK_FALSE(pair.equispaced_params());
  CHECK(pair.subsystem_dims() == std::vector<std::size_t>{2, 2});

  const std::vector<double> d{0.0, 4.0, 2.0};
  const auto explicit_ladder = Hamiltonian::explicit_matrix(ComplexMatrix::diagonal(std::span<const double>(d)));
  REQUIRE(explicit_ladder.equispaced_params());
  CHECK(explicit_ladder.equispaced_params()->quantum == doctest::Approx(2.0));

  // composite energies are all sums of local energies
  auto g = rng(10);
  const auto h1 = testing::random_hamiltonian(2, g), h2 = testing::random_hamiltonian(3, g);
  const auto sum = Hamiltonian::composite({h1, h2});
  std::vector<double> sums;
  for (double a : h1.energies().values())
    for (double b : h2.energies().values()) sums.push_back(a + b);
  const Spectrum ref(sums);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(sum.energies()[i] - ref[i]) <= 1e-12);
  CHECK(max_abs_diff(conjugate_by(sum.eigenbasis(), ComplexMatrix::diagonal(sum.energies().values())), sum.matrix()) <=
        1e-12);

  const auto neg = ladder.negated();
  CHECK(neg.energies()[0] == doctest::Approx(-1.5));
  const std::vector<std::size_t> second{1};
  CHECK(sum.restricted(second).dim() == 3);
}

TEST_CASE("entropy values") {
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(von_neumann_entropy(ghz_state(0.0)).value == 0.0);
  CHECK(von_neumann_entropy(testing::diag_state({0.3, 0.7})).value == doctest::Approx(0.881291).epsilon(1e-6));

  CHECK(tsallis_entropy(ghz_state(0.0), 3.0).value == doctest::Approx(0.0));
  CHECK(tsallis_entropy(DensityMatrix::maximally_mixed(2), 2.0).value == doctest::Approx(0.5));
  CHECK(tsallis_entropy(werner_d_state(3, 0.5), 2.0).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(linear_entropy(DensityMatrix::maximally_mixed(5)).value == doctest::Approx(0.8));
  CHECK(linear_entropy(testing::diag_state({0.217157, 0.782843})).value == doctest::Approx(0.34).epsilon(1e-6));
}

TEST_CASE("entropy ordering on random states") {
  auto g = rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto rho = testing::random_state(2 + static_cast<std::size_t>(i % 5), g);
    const double s_nat = von_neumann_entropy(rho, std::exp(1.0)).value;
    const double lin = linear_entropy(rho).value;
    CHECK(s_nat >= lin - 1e-12);
    CHECK(lin == tsallis_entropy(rho, 2.0).value);
    double prev = 1e300;
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
      const double t = tsallis_entropy(rho, p).value;
      CHECK(t <= prev + 1e-12);
      CHECK(t >= 0.0);
      prev = t;
    }
  }
}

TEST_CASE("coherence measures") {
  CHECK(coherence_l1(testing::diag_state({0.2, 0.3, 0.5})) == 0.0);
  CHECK(coherence_l1(qubit_state(0.3, 0.2)) == doctest::Approx(0.4));
  for (std::size_t d : {2, 3, 5})
    for (double v : {0.2, 0.9})
      CHECK(coherence_l1(werner_d_state(d, v)) == doctest::Approx(v * static_cast<double>(d - 1)));

  CHECK(coherence_relative_entropy(testing::diag_state({0.2, 0.8})) == 0.0);
  std::vector<cplx> plus(4, 0.5);
  CHECK(coherence_relative_entropy(DensityMatrix::pure(plus, {4})) == doctest::Approx(2.0).epsilon(1e-12));
  const auto w = werner_d_state(4, 0.6);
  CHECK(coherence_relative_entropy(w) == doctest::Approx(2.0 - von_neumann_entropy(w).value).epsilon(1e-12));

  const auto q = coherence_robustness(qubit_state(0.3, 0.2));
  CHECK(q.lower == doctest::Approx(0.4));
  CHECK(q.upper == doctest::Approx(0.4));
  const auto z = coherence_robustness(testing::diag_state({0.1, 0.2, 0.7}));
  CHECK(z.lower == 0.0);
  CHECK(z.upper == 0.0);
  const auto wr = coherence_robustness(werner_d_state(3, 0.5));
  CHECK(wr.lower == doctest::Approx(0.5));
  CHECK(wr.upper == doctest::Approx(1.0));
}

TEST_CASE("coherence: diagonal phases and dephasing") {
  auto g = rng(12);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 4);
    const auto rho = testing::random_state(d, g);
    std::vector<cplx> phases(d);
    for (auto& p : phases) p = std::polar(1.0, angle(g));
    const DensityMatrix rotated(conjugate_by(ComplexMatrix::diagonal(std::span<const cplx>(phases)), rho.matrix()));
    CHECK(std::abs(coherence_l1(rotated) - coherence_l1(rho)) <= 1e-12);
    CHECK(std::abs(coherence_relative_entropy(rotated) - coherence_relative_entropy(rho)) <= 1e-9);
    const auto deph = dephased(rho);
    CHECK(coherence_l1(deph) == 0.0);
    CHECK(coherence_relative_entropy(deph) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("named states") {
  CHECK(code_of([] { qubit_state(0.3, 0.5); }) == ErrorCode::InvalidBlochParameters);
  CHECK(code_of([] { qubit_state(1.2, 0.0); }) == ErrorCode::InvalidBlochParameters);
  const std::vector<double> bad{0.5, 0.5, 0.5, 0.5, 0.5};
  CHECK(code_of([&] { acin_state(bad, 0.0); }) == ErrorCode::InvalidCoefficients);

  const auto w = werner2_state(0.5, 0.7853981633974483);
  CHECK(w.spectrum().back() == doctest::Approx((1.0 + 3.0 * 0.5) / 4.0));
  const auto iso = isotropic_state(0.25, 0.5);
  CHECK(max_abs_diff(iso.matrix(), ComplexMatrix::identity(4) * cplx(0.25)) <= 1e-15);
  CHECK(w_state().purity() == doctest::Approx(1.0));
  CHECK(schmidt_pair_state(0.3).dims().size() == 2);
}

TEST_CASE("state JSON") {
  using nlohmann::json;
  const auto q = state_from_json(json::parse(R"({"name":"qubit","q":0.3,"c":0.2,"theta":0.0})"));
  CHECK(max_abs_diff(q.matrix(), qubit_state(0.3, 0.2).matrix()) == 0.0);
  const auto iso = state_from_json(json::parse(R"({"name":"isotropic","v":0.75})"));
  CHECK(max_abs_diff(iso.matrix(), isotropic_state(0.75, 0.5).matrix()) == 0.0);
  CHECK(state_from_json(json::parse(R"({"name":"w3"})")).dim() == 8);
  CHECK(state_from_json(json::parse(R"({"name":"acin","l":[0.7071067811865476,0,0,0,0.7071067811865476]})")).dim() == 8);

  const auto explicit_state = state_from_json(
      json::parse(R"({"dims":[2,2],"matrix":[[[0.5,0],[0,0],[0,0],[0.5,0]],[[0,0],[0,0],[0,0],[0,0]],
                      [[0,0],[0,0],[0,0],[0,0]],[[0.5,0],[0,0],[0,0],[0.5,0]]]})"));
  CHECK(explicit_state.dims().size() == 2);

  auto g = rng(13);
  const auto rho = random_density({2, 3}, HilbertSchmidt{}, g);
  const auto back = state_from_json(json::parse(state_to_json(rho).dump()));
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) == 0.0);

  CHECK(code_of([] { state_from_json(json::parse(R"({"name":"nope"})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { state_from_json(json::parse(R"({"matrix":[[1,0]]})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_json_source("{not json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_json_source("/nonexistent/file.json"); }) == ErrorCode::IoError);
}
