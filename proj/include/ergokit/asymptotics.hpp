#pragma once

#include <string>
#include <vector>

#include "ergokit/channels.hpp"
#include "ergokit/search.hpp"
#include "ergokit/types.hpp"

namespace ergokit {

struct CapacitancePoint {
  std::string functional;  // "C_E", "C_sep", "C_loc", "C_sep_loc", "C_beta", ...
  double e = 0.0;          // input energy fraction
  double value = 0.0;
  std::string provenance;  // "closed_form" or "numeric_bound(n=k)"
};

struct MawerValue {
  double value = 0.0;
  bool infinite = false;
};

/// All four ergotropic capacitances equal the energy fraction, for every
/// kappa; the hierarchy collapses.
std::vector<CapacitancePoint> dephasing_capacitances(double kappa, double e);

/// C_beta = e + ln Z_beta(h) / beta.
double dephasing_free_energy_capacitance(double kappa, double e, double beta,
                                         const HermitianOperator& h);

enum class DepolVariant {
  ergotropy_exact_shell,
  ergotropy_at_most,
  total_exact_shell,
  total_at_most,
};

double depolarizing_single_site(double lambda, double e,
                                const HermitianOperator& h,
                                DepolVariant which);

/// Output entropy of the depolarizing channel on any pure input, in nats.
double depolarizing_Sd(double lambda, int d);

/// D_tot(lambda; h) = (1-lambda)/d Tr[h] - Gibbs energy at the entropy-matched
/// beta; collapses to D(lambda) for d = 2.
double depolarizing_Dtot(double lambda, const HermitianOperator& h);

/// beta <= 0 skips the free-energy capacitance entry.
std::vector<CapacitancePoint> depolarizing_capacitances(
    double lambda, double e, const HermitianOperator& h, double beta = 0.0);

MawerValue mawer(const Channel& ch);

struct RatePoint {
  int n = 0;
  double w = 0.0;  // W^(n)(Lambda; n e) / n
};

/// Numeric per-cell rates w^(n) for n = 1..n_max on the at-most shell.
std::vector<RatePoint> rate_sequence(const Channel& ch,
                                     const HermitianOperator& h_cell, double e,
                                     int n_max, const SearchConfig& cfg);

struct ReplacementGapReport {
  double ergotropy_rho0 = 0.0;
  double total_ergotropy_rho0 = 0.0;
  double gap = 0.0;
  double c_loc = 0.0, c_sep_loc = 0.0;          // = ergotropy(rho0)
  double c_e = 0.0, c_sep = 0.0;                // = total ergotropy(rho0)
  double c_loc_tot = 0.0, c_sep_loc_tot = 0.0;  // = total ergotropy(rho0)
};

/// Replacement-channel counterexample: a passive but not completely passive
/// rho0 separates the plain-local capacitances (zero) from their
/// total-ergotropy variants (positive).
ReplacementGapReport replacement_gap_demo(const DensityMatrix& rho0,
                                          const HermitianOperator& h);

}  // namespace ergokit
