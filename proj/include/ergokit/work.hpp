#pragma once

#include <cstdint>
#include <vector>

#include "ergokit/types.hpp"

namespace ergokit {

struct GibbsSolution {
  double beta_star = 0.0;  // meaningful only when !infinite
  bool infinite = false;   // target entropy at/below the beta->inf limit
  double gibbs_energy = 0.0;
  double gibbs_entropy = 0.0;
  double residual = 0.0;  // |S_beta - target|
};

struct WorkReport {
  double mean_energy = 0.0;
  double ergotropy = 0.0;
  double total_ergotropy = 0.0;
  double free_energy_work = 0.0;
  double local_ergotropy = 0.0;
  double passive_energy = 0.0;
};

/// rho_pass = sum_l lambda_l |E_l><E_l| with populations descending and
/// energies ascending; same spectrum as rho.
DensityMatrix passive_state(const DensityMatrix& rho,
                            const HermitianOperator& h);

double passive_energy(const DensityMatrix& rho, const HermitianOperator& h);
double ergotropy(const DensityMatrix& rho, const HermitianOperator& h);

/// Ergotropy of a classical distribution over the eigenlevels of h:
/// mean energy minus the descending-populations / ascending-energies pairing.
double distribution_ergotropy(const RealVector& populations,
                              const RealVector& energies_ascending);

double log_partition_function(const HermitianOperator& h, double beta);
double gibbs_mean_energy(const HermitianOperator& h, double beta);
double gibbs_entropy(const HermitianOperator& h, double beta);

/// Solve S_beta = target_entropy (nats) by bracketed bisection plus a Newton
/// polish on dS/dbeta = -beta Var(H).
GibbsSolution gibbs_beta_star(double target_entropy,
                              const HermitianOperator& h);

double total_ergotropy(const DensityMatrix& rho, const HermitianOperator& h);

/// W_beta = E - S/beta + ln Z_beta / beta; zero on the Gibbs state.
double free_energy_work(const DensityMatrix& rho, const HermitianOperator& h,
                        double beta);

/// Exact local ergotropy for a non-interacting total Hamiltonian: the
/// per-cell maximizations decouple, so it is the sum of marginal ergotropies.
double local_ergotropy(const DensityMatrix& rho_n, const std::vector<int>& dims,
                       const std::vector<HermitianOperator>& local_hs);

/// Throws unless h_total == sum_j h_j on the given cell split.
void require_noninteracting(const HermitianOperator& h_total,
                            const std::vector<int>& dims,
                            const std::vector<HermitianOperator>& local_hs);

struct VariationalResult {
  double value = 0.0;
  bool converged = false;
};

/// Multi-start maximization over product unitaries, each cell parametrized
/// by d^2 Hermitian-generator coefficients. Lower-bounds the true value;
/// exists to cross-validate the marginal-sum path.
VariationalResult variational_local_ergotropy(
    const DensityMatrix& rho_n, const std::vector<int>& dims,
    const std::vector<HermitianOperator>& local_hs, int starts = 32,
    std::uint64_t seed = 0);

WorkReport make_work_report(const DensityMatrix& rho,
                            const HermitianOperator& h, double beta,
                            const std::vector<int>& dims = {},
                            const std::vector<HermitianOperator>& local_hs = {});

}  // namespace ergokit
