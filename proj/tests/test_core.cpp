#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergokit/core.hpp"
#include "ergokit/types.hpp"

using namespace ergokit;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  // Mixture of a few Haar vectors; full rank with probability 1.
  Matrix m = Matrix::Zero(dim, dim);
  double w = 1.0;
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const PureState psi = random_pure_state(dim, seed * 7 + k);
    m += w * (psi.amplitudes * psi.amplitudes.adjoint());
    total += w;
    w *= 0.5;
  }
  return DensityMatrix(m / total);
}

}  // namespace

TEST_CASE("type validation") {
  CHECK_THROWS_AS(DensityMatrix(diag2(0.6, 0.6)), validation_error);  // trace
  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = Complex(0.3, 0.0);
  CHECK_THROWS_AS(HermitianOperator(nh, HermitianOperator::Role::hamiltonian),
                  validation_error);
  Matrix neg = diag2(1.5, -0.5);
  CHECK_THROWS_AS((DensityMatrix{neg}), validation_error);  // not PSD
  Vector v(2);
  v << 0.5, 0.5;
  CHECK_THROWS_AS((PureState{v}), validation_error);  // norm != 1

  RealVector bad(3);
  bad << 0.0, 0.4, 0.9;  // top must be 1
  CHECK_THROWS_AS(HermitianOperator::cell_hamiltonian(bad), validation_error);
}

TEST_CASE("spectral decomposition basics") {
  const auto sd = spectral_decomposition(HermitianOperator(diag2(0, 1)));
  CHECK(sd.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sd.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(sd.eigenvectors(1, 0)) == doctest::Approx(1.0));

  const auto id = spectral_decomposition(HermitianOperator(Matrix::Identity(2, 2)));
  CHECK(id.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(id.eigenvalues(1) == doctest::Approx(1.0));

  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto sx = spectral_decomposition(HermitianOperator(x));
  CHECK(sx.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sx.eigenvalues(1) == doctest::Approx(-1.0));
}

TEST_CASE("spectral decomposition reconstruction and trace on random input") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DensityMatrix rho = random_density(5, seed);
    const auto sd = spectral_decomposition(rho.entries);
    const Matrix rec = sd.eigenvectors *
                       sd.eigenvalues.cast<Complex>().asDiagonal() *
                       sd.eigenvectors.adjoint();
    CHECK((rec - rho.entries).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sd.eigenvalues.sum() ==
          doctest::Approx(rho.entries.trace().real()).epsilon(1e-10));
    for (int i = 0; i + 1 < 5; ++i)
      CHECK(sd.eigenvalues(i) >= sd.eigenvalues(i + 1) - 1e-14);
  }
}

TEST_CASE("mean energy") {
  const HermitianOperator h = HermitianOperator::qubit_cell();
  CHECK(mean_energy(DensityMatrix(diag2(0, 1)), h) == doctest::Approx(1.0));
  CHECK(mean_energy(DensityMatrix::maximally_mixed(2), h) ==
        doctest::Approx(0.5));
  Vector psi(2);
  psi << std::sqrt(0.3), std::sqrt(0.7);
  CHECK(mean_energy(PureState(psi).to_density(), h) == doctest::Approx(0.7));
  CHECK_THROWS_AS(
      mean_energy(DensityMatrix::maximally_mixed(3), h), validation_error);
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix(diag2(0, 1))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  const double h2 = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  CHECK(von_neumann_entropy(DensityMatrix(diag2(0.75, 0.25))) ==
        doctest::Approx(h2).epsilon(1e-12));
  CHECK(h2 == doctest::Approx(0.5623351).epsilon(1e-6));
}

TEST_CASE("tensor products") {
  Vector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  const Vector v = tensor_product(e0, e1);
  CHECK(std::abs(v(1) - Complex(1.0)) < 1e-15);

  const HermitianOperator h = HermitianOperator::qubit_cell();
  const HermitianOperator h2 = array_hamiltonian(h, 2);
  CHECK(std::abs(h2.entries(0, 0)) < 1e-15);
  CHECK(std::abs(h2.entries(1, 1) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(h2.entries(2, 2) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(h2.entries(3, 3) - Complex(2.0)) < 1e-15);

  const DensityMatrix quarter = tensor_product(DensityMatrix::maximally_mixed(2),
                                               DensityMatrix::maximally_mixed(2));
  CHECK((quarter.entries - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("partial trace") {
  const DensityMatrix a = random_density(2, 11);
  const DensityMatrix b = random_density(3, 12);
  const DensityMatrix ab = tensor_product(a, b);
  CHECK((partial_trace(ab, {2, 3}, 0).entries - a.entries)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((partial_trace(ab, {2, 3}, 1).entries - b.entries)
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  Vector bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  const DensityMatrix rho = PureState(bell).to_density();
  for (int keep : {0, 1})
    CHECK((partial_trace(rho, {2, 2}, keep).entries -
           Matrix::Identity(2, 2) / 2.0)
              .cwiseAbs()
              .maxCoeff() < 1e-12);

  const double e = 1.0;
  Vector psi(4);
  psi << std::sqrt(1 - e / 2), 0, 0, std::sqrt(e / 2);
  const DensityMatrix m = partial_trace(PureState(psi).to_density(), {2, 2}, 0);
  CHECK(m.entries(0, 0).real() == doctest::Approx(0.5));
  CHECK(m.entries(1, 1).real() == doctest::Approx(0.5));

  CHECK_THROWS_AS(partial_trace(rho, {2, 3}, 0), validation_error);
}

TEST_CASE("random states and unitaries are deterministic") {
  const PureState a = random_pure_state(6, 42);
  const PureState b = random_pure_state(6, 42);
  CHECK((a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((random_pure_state(6, 43).amplitudes - a.amplitudes)
            .cwiseAbs()
            .maxCoeff() > 1e-3);

  const Matrix u = random_unitary(4, 7);
  CHECK((u * u.adjoint() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);

  const HermitianOperator h = HermitianOperator::qubit_cell();
  const Matrix v = random_energy_preserving_unitary(h, 5);
  CHECK((v * h.entries - h.entries * v).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((v * v.adjoint() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("entropy additivity on random product states") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const DensityMatrix a = random_density(2, seed);
    const DensityMatrix b = random_density(3, seed + 1000);
    const double lhs = von_neumann_entropy(tensor_product(a, b));
    const double rhs = von_neumann_entropy(a) + von_neumann_entropy(b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("energy additivity over marginals") {
  const HermitianOperator h = HermitianOperator::qubit_cell();
  const HermitianOperator h3 = array_hamiltonian(h, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DensityMatrix rho = random_density(8, seed);
    double sum = 0.0;
    for (int j = 0; j < 3; ++j)
      sum += mean_energy(partial_trace(rho, {2, 2, 2}, j), h);
    CHECK(mean_energy(rho, h3) == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(check_dim_cap(8192), size_error);
  CHECK_NOTHROW(check_dim_cap(4096));
}
