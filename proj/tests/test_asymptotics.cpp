#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergokit/asymptotics.hpp"
#include "ergokit/channels.hpp"
#include "ergokit/core.hpp"
#include "ergokit/search.hpp"
#include "ergokit/work.hpp"

using namespace ergokit;

namespace {

const HermitianOperator kQubit = HermitianOperator::qubit_cell();

HermitianOperator equally_spaced(int d) {
  RealVector s(d);
  for (int i = 0; i < d; ++i) s(i) = double(i) / (d - 1);
  return HermitianOperator::cell_hamiltonian(s);
}

}  // namespace

TEST_CASE("dephasing capacitances collapse to e") {
  for (double kappa : {0.0, 0.5, 1.0}) {
    for (double e : {0.0, 0.7, 1.0}) {
      const auto pts = dephasing_capacitances(kappa, e);
      CHECK(pts.size() == 4);
      for (const auto& p : pts) {
        CHECK(p.value == doctest::Approx(e).epsilon(1e-12));
        CHECK(p.provenance == "closed_form");
      }
    }
  }
  CHECK_THROWS_AS(dephasing_capacitances(0.5, 1.2), validation_error);
}

TEST_CASE("dephasing free-energy capacitance") {
  CHECK(dephasing_free_energy_capacitance(0.5, 0.5, 1.0, kQubit) ==
        doctest::Approx(0.5 + std::log(1.0 + std::exp(-1.0))).epsilon(1e-12));
  CHECK(dephasing_free_energy_capacitance(0.2, 0.0, std::log(2.0), kQubit) ==
        doctest::Approx(std::log(1.5) / std::log(2.0)).epsilon(1e-12));
  // large beta limit -> e
  CHECK(dephasing_free_energy_capacitance(0.3, 0.4, 500.0, kQubit) ==
        doctest::Approx(0.4).epsilon(1e-9));
  CHECK_THROWS_AS(dephasing_free_energy_capacitance(0.5, 0.5, 0.0, kQubit),
                  validation_error);
}

TEST_CASE("depolarizing single-site formulas") {
  CHECK(depolarizing_single_site(1.0, 0.8, kQubit,
                                 DepolVariant::ergotropy_exact_shell) ==
        doctest::Approx(0.8));
  CHECK(depolarizing_single_site(0.5, 0.8, kQubit,
                                 DepolVariant::ergotropy_exact_shell) ==
        doctest::Approx(0.4));
  CHECK(depolarizing_single_site(-1.0 / 3.0, 0.8, kQubit,
                                 DepolVariant::ergotropy_at_most) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(depolarizing_single_site(-1.0 / 3.0, 0.2, kQubit,
                                 DepolVariant::ergotropy_exact_shell) ==
        doctest::Approx(-0.2 / 3.0 + 1.0 / 3.0));
  CHECK_THROWS_AS(depolarizing_single_site(-0.4, 0.5, kQubit,
                                           DepolVariant::ergotropy_at_most),
                  validation_error);
}

TEST_CASE("depolarizing output entropy") {
  CHECK(depolarizing_Sd(0.0, 4) == doctest::Approx(std::log(4.0)));
  CHECK(depolarizing_Sd(1.0, 3) == doctest::Approx(0.0));
  const double expect = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  CHECK(depolarizing_Sd(0.5, 2) == doctest::Approx(expect).epsilon(1e-12));

  // matches the actual channel output entropy on pure inputs
  for (int d : {2, 3}) {
    const DensityMatrix psi = random_pure_state(d, 5).to_density();
    for (double lambda : {depolarizing_lambda_min(d) + 1e-6, 0.4, 0.9}) {
      CHECK(von_neumann_entropy(apply_depolarizing(lambda, psi)) ==
            doctest::Approx(depolarizing_Sd(lambda, d)).epsilon(1e-9));
    }
  }
}

TEST_CASE("D_tot reduces to D(lambda) for qubits") {
  for (double lambda : {-1.0 / 3.0, -0.1, 0.0, 0.3, 0.7, 1.0}) {
    const double expect = lambda >= 0.0 ? 0.0 : -lambda;
    CHECK(std::abs(depolarizing_Dtot(lambda, kQubit) - expect) < 1e-8);
  }
}

TEST_CASE("D_tot is positive for d = 5 at intermediate lambda") {
  const HermitianOperator h5 = equally_spaced(5);
  for (double lambda : {0.2, 0.5, 0.8})
    CHECK(depolarizing_Dtot(lambda, h5) > 1e-4);
  CHECK(std::abs(depolarizing_Dtot(1.0, h5)) < 1e-9);
}

TEST_CASE("beta-star residual in the D_tot pipeline") {
  const HermitianOperator h5 = equally_spaced(5);
  for (double lambda : {0.1, 0.5, 0.9}) {
    const GibbsSolution sol = gibbs_beta_star(depolarizing_Sd(lambda, 5), h5);
    CHECK(!sol.infinite);
    CHECK(sol.residual <= 1e-10);
  }
}

TEST_CASE("depolarizing capacitance hierarchy") {
  for (int d : {2, 3, 5}) {
    const HermitianOperator h = equally_spaced(d);
    for (double lambda : {depolarizing_lambda_min(d), 0.0, 0.4, 1.0}) {
      double prev_ce = -1.0;
      for (double e : {0.0, 0.3, 0.6, 1.0}) {
        const auto pts = depolarizing_capacitances(lambda, e, h);
        double ce = 0, csep = 0, cloc = 0, cseploc = 0;
        for (const auto& p : pts) {
          CHECK(p.value >= -1e-12);
          CHECK(p.value <= 1.0 + 1e-12);
          if (p.functional == "C_E") ce = p.value;
          if (p.functional == "C_sep") csep = p.value;
          if (p.functional == "C_loc") cloc = p.value;
          if (p.functional == "C_sep_loc") cseploc = p.value;
        }
        CHECK(ce == doctest::Approx(csep).epsilon(1e-12));
        CHECK(cloc == doctest::Approx(cseploc).epsilon(1e-12));
        CHECK(ce >= cloc - 1e-9);
        if (d == 2) CHECK(ce == doctest::Approx(cloc).epsilon(1e-9));
        if (d > 2 && lambda > 0.0 && lambda < 1.0) CHECK(ce > cloc + 1e-6);
        CHECK(ce >= prev_ce - 1e-9);  // monotone in e
        prev_ce = ce;
      }
    }
  }
}

TEST_CASE("noiseless depolarizing capacitances equal e") {
  const HermitianOperator h3 = equally_spaced(3);
  for (double e : {0.0, 0.5, 1.0})
    for (const auto& p : depolarizing_capacitances(1.0, e, h3))
      CHECK(p.value == doctest::Approx(e).epsilon(1e-9));
}

TEST_CASE("mawer trichotomy") {
  CHECK(mawer(Channel::dephasing(0.0)).value == doctest::Approx(1.0));
  CHECK(mawer(Channel::dephasing(1.0)).value == doctest::Approx(1.0));
  const MawerValue d2 = mawer(Channel::depolarizing(0.3, 2));
  CHECK(!d2.infinite);
  CHECK(d2.value == doctest::Approx(0.3));
  CHECK(mawer(Channel::depolarizing(0.3, 3)).infinite);
  CHECK(mawer(Channel::depolarizing(-0.2, 2)).infinite);
  CHECK_THROWS_AS(
      mawer(Channel::replacement(DensityMatrix::maximally_mixed(2))),
      validation_error);
}

TEST_CASE("dephasing rate sequence satisfies the sandwich") {
  SearchConfig cfg;
  cfg.starts = 24;
  for (double e : {0.3, 0.5}) {
    const auto rates =
        rate_sequence(Channel::dephasing(0.5), kQubit, e, 4, cfg);
    CHECK(rates.size() == 4);
    for (const auto& r : rates) {
      CHECK(r.w <= e + 1e-8);
      CHECK(r.w >= e - 1.0 / r.n - 1e-8);
    }
    // n = 1 matches the closed form (at_most maximum over E' <= e is at e)
    const double cf =
        e - 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * 0.5 * e * (1.0 - e)));
    CHECK(rates[0].w == doctest::Approx(cf).epsilon(1e-6));
  }
}

TEST_CASE("total-ergotropy rates obey the same sandwich") {
  SearchConfig cfg;
  cfg.starts = 24;
  cfg.functional = Functional::total_ergotropy;
  const double e = 0.5;
  const auto rates = rate_sequence(Channel::dephasing(0.5), kQubit, e, 2, cfg);
  for (const auto& r : rates) {
    CHECK(r.w <= e + 1e-6);
    CHECK(r.w >= e - 1.0 / r.n - 1e-6);
  }
}

TEST_CASE("separable witness reproduces the analytic lower bound") {
  // |1>^{k} (x) |psi_dE> on n cells, complete-ish dephasing: output work
  // E - dE with dE = (1 - sqrt(1 - 4 kappa E'(1-E')))/2 on the fractional cell
  const double kappa = 0.5;
  const int n = 3;
  const double e_total = 2.3;
  const int k = 2;
  const double frac = e_total - k;
  Vector cell0 = Vector::Zero(2), cell1 = Vector::Zero(2), cellf(2);
  cell0(0) = 1.0;
  cell1(1) = 1.0;
  cellf << std::sqrt(1.0 - frac), std::sqrt(frac);
  Vector psi = tensor_product(tensor_product(cell1, cell1), cellf);
  const DensityMatrix out = apply_tensor_power(
      Channel::dephasing(kappa), n, PureState(psi).to_density(), kQubit);
  const double value = ergotropy(out, array_hamiltonian(kQubit, n));
  const double de =
      0.5 * (1.0 - std::sqrt(1.0 - 4.0 * kappa * frac * (1.0 - frac)));
  CHECK(value == doctest::Approx(e_total - de).epsilon(1e-9));
}

TEST_CASE("king additivity spot check at n = 2") {
  for (double lambda : {0.3, 0.7}) {
    const double single = depolarizing_Sd(lambda, 2);
    double min_s = 1e9;
    const Channel ch = Channel::depolarizing(lambda);
    for (std::uint64_t seed = 0; seed < 100000; ++seed) {
      const DensityMatrix rho = random_pure_state(4, seed).to_density();
      min_s = std::min(
          min_s, von_neumann_entropy(apply_tensor_power(ch, 2, rho, kQubit)));
    }
    CHECK(min_s >= 2.0 * single - 1e-6);
  }
}

TEST_CASE("replacement gap demo") {
  const HermitianOperator h3 = HermitianOperator::cell_hamiltonian(
      (RealVector(3) << 0.0, 0.5, 1.0).finished());
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.3;
  m(2, 2) = 0.2;
  const ReplacementGapReport rep = replacement_gap_demo(DensityMatrix(m), h3);
  CHECK(std::abs(rep.ergotropy_rho0) < 1e-12);
  CHECK(rep.total_ergotropy_rho0 > 1e-4);
  CHECK(rep.c_loc == doctest::Approx(0.0));
  CHECK(rep.c_sep_loc == doctest::Approx(0.0));
  CHECK(rep.c_e == doctest::Approx(rep.total_ergotropy_rho0));
  CHECK(rep.c_loc_tot == doctest::Approx(rep.total_ergotropy_rho0));
  CHECK(rep.gap == doctest::Approx(rep.total_ergotropy_rho0).epsilon(1e-12));

  // Gibbs-shaped rho0: no gap
  const double beta = 1.7;
  Matrix g = Matrix::Zero(3, 3);
  double z = 0.0;
  for (int i = 0; i < 3; ++i) z += std::exp(-beta * h3.entries(i, i).real());
  for (int i = 0; i < 3; ++i)
    g(i, i) = std::exp(-beta * h3.entries(i, i).real()) / z;
  const ReplacementGapReport gr = replacement_gap_demo(DensityMatrix(g), h3);
  CHECK(std::abs(gr.gap) < 1e-10);

  // qubit exception: any passive rho0 has zero gap
  Matrix q = Matrix::Zero(2, 2);
  q(0, 0) = 0.7;
  q(1, 1) = 0.3;
  const ReplacementGapReport qr =
      replacement_gap_demo(DensityMatrix(q), kQubit);
  CHECK(std::abs(qr.gap) < 1e-9);

  // non-passive rho0 rejected
  Matrix np = Matrix::Zero(3, 3);
  np(0, 0) = 0.2;
  np(1, 1) = 0.3;
  np(2, 2) = 0.5;
  CHECK_THROWS_AS(replacement_gap_demo(DensityMatrix(np), h3),
                  validation_error);
}
