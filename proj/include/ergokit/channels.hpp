#pragma once

#include <memory>
#include <optional>

#include "ergokit/types.hpp"

namespace ergokit {

/// Admissible depolarizing range is lambda in [-1/(d^2-1), 1].
double depolarizing_lambda_min(int d);

DensityMatrix apply_dephasing(double kappa, const DensityMatrix& rho,
                              const HermitianOperator& h_basis);
DensityMatrix apply_depolarizing(double lambda, const DensityMatrix& rho);
DensityMatrix apply_replacement(const DensityMatrix& rho0,
                                const DensityMatrix& rho);

/// Output energy of the n-cell depolarizing channel on a state of energy E:
/// E' = lambda E + (1 - lambda) n Tr[h]/d.
double depolarized_energy(double lambda, double e, int n,
                          const HermitianOperator& h);

struct Channel {
  enum class Kind { dephasing, depolarizing, replacement, composed };

  Kind kind = Kind::dephasing;
  int cell_dim = 2;
  double kappa = 0.0;   // dephasing
  double lambda = 1.0;  // depolarizing
  DensityMatrix rho0;   // replacement

  // Off-diagonal damping coefficients for d > 2 dephasing; when absent the
  // uniform sqrt(1 - kappa) model applies to every off-diagonal pair.
  std::optional<Eigen::MatrixXd> dephasing_coeffs;

  // Two-slot composition: unitary before/after a base channel.
  std::shared_ptr<Channel> base;
  Matrix unitary;
  bool unitary_first = false;

  static Channel dephasing(double kappa, int cell_dim = 2);
  static Channel depolarizing(double lambda, int cell_dim = 2);
  static Channel replacement(DensityMatrix rho0);
  static Channel composed(Channel base, Matrix unitary, bool unitary_first);

  /// Both dephasing and depolarizing commute with diagonal-phase unitaries
  /// at every tensor power.
  bool covariant_all_n() const {
    return kind == Kind::dephasing || kind == Kind::depolarizing;
  }

  DensityMatrix apply(const DensityMatrix& rho,
                      const HermitianOperator& h_cell) const;
};

/// Cell-by-cell action of ch on an n-cell state; no d^n x d^n superoperator
/// is ever formed.
DensityMatrix apply_tensor_power(const Channel& ch, int n,
                                 const DensityMatrix& rho_n,
                                 const HermitianOperator& h_cell);

}  // namespace ergokit
