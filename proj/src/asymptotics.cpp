#include "ergokit/asymptotics.hpp"

#include <cmath>

#include "ergokit/core.hpp"
#include "ergokit/work.hpp"

namespace ergokit {

namespace {

void check_fraction(double e) {
  if (e < -1e-12 || e > 1.0 + 1e-12)
    throw validation_error("energy fraction outside [0, 1]");
}

double depol_D(double lambda) { return lambda >= 0.0 ? 0.0 : -lambda; }

}  // namespace

std::vector<CapacitancePoint> dephasing_capacitances(double kappa, double e) {
  if (kappa < 0.0 || kappa > 1.0)
    throw validation_error("kappa outside [0, 1]");
  check_fraction(e);
  std::vector<CapacitancePoint> out;
  for (const char* name : {"C_E", "C_sep", "C_loc", "C_sep_loc"})
    out.push_back({name, e, e, "closed_form"});
  return out;
}

double dephasing_free_energy_capacitance(double kappa, double e, double beta,
                                         const HermitianOperator& h) {
  if (kappa < 0.0 || kappa > 1.0)
    throw validation_error("kappa outside [0, 1]");
  check_fraction(e);
  if (!(beta > 0.0)) throw validation_error("beta must be positive");
  return e + log_partition_function(h, beta) / beta;
}

double depolarizing_single_site(double lambda, double e,
                                const HermitianOperator& h,
                                DepolVariant which) {
  const int d = h.dim;
  const double lo = depolarizing_lambda_min(d);
  if (lambda < lo - 1e-12 || lambda > 1.0 + 1e-12)
    throw validation_error("lambda outside admissible range");
  check_fraction(e);
  switch (which) {
    case DepolVariant::ergotropy_exact_shell:
      return lambda * e + depol_D(lambda);
    case DepolVariant::ergotropy_at_most:
      return lambda >= 0.0 ? lambda * e : -lambda;
    case DepolVariant::total_exact_shell:
      return lambda * e + depolarizing_Dtot(lambda, h);
    case DepolVariant::total_at_most:
      return lambda >= 0.0 ? lambda * e + depolarizing_Dtot(lambda, h)
                           : depolarizing_Dtot(lambda, h);
  }
  throw validation_error("unknown variant");
}

double depolarizing_Sd(double lambda, int d) {
  const double lo = depolarizing_lambda_min(d);
  if (lambda < lo - 1e-12 || lambda > 1.0 + 1e-12)
    throw validation_error("lambda outside admissible range");
  const double l1 = lambda + (1.0 - lambda) / d;
  const double l2 = (1.0 - lambda) / d;
  double s = 0.0;
  if (l1 > 0.0) s -= l1 * std::log(l1);
  if (l2 > 0.0) s -= (d - 1) * l2 * std::log(l2);
  return std::max(s, 0.0);
}

double depolarizing_Dtot(double lambda, const HermitianOperator& h) {
  const double sd = depolarizing_Sd(lambda, h.dim);
  const GibbsSolution sol = gibbs_beta_star(sd, h);
  return (1.0 - lambda) / h.dim * h.entries.trace().real() - sol.gibbs_energy;
}

std::vector<CapacitancePoint> depolarizing_capacitances(
    double lambda, double e, const HermitianOperator& h, double beta) {
  check_fraction(e);
  std::vector<CapacitancePoint> out;
  const double c_global =
      depolarizing_single_site(lambda, e, h, DepolVariant::total_at_most);
  const double c_local =
      depolarizing_single_site(lambda, e, h, DepolVariant::ergotropy_at_most);
  out.push_back({"C_E", e, c_global, "closed_form"});
  out.push_back({"C_sep", e, c_global, "closed_form"});
  out.push_back({"C_loc", e, c_local, "closed_form"});
  out.push_back({"C_sep_loc", e, c_local, "closed_form"});
  if (beta > 0.0) {
    const double f1 = lambda * e +
                      (1.0 - lambda) / h.dim * h.entries.trace().real() -
                      depolarizing_Sd(lambda, h.dim) / beta;
    out.push_back(
        {"C_beta", e, f1 + log_partition_function(h, beta) / beta,
         "closed_form"});
  }
  return out;
}

MawerValue mawer(const Channel& ch) {
  MawerValue out;
  switch (ch.kind) {
    case Channel::Kind::dephasing:
      out.value = 1.0;
      return out;
    case Channel::Kind::depolarizing:
      if (ch.lambda < 0.0 || ch.cell_dim > 2) {
        out.infinite = true;
        return out;
      }
      out.value = ch.lambda;
      return out;
    default:
      throw validation_error("mawer: only dephasing and depolarizing");
  }
}

std::vector<RatePoint> rate_sequence(const Channel& ch,
                                     const HermitianOperator& h_cell, double e,
                                     int n_max, const SearchConfig& cfg) {
  check_fraction(e);
  std::vector<RatePoint> out;
  for (int n = 1; n <= n_max; ++n) {
    EnergyShell shell{n, n * e, ShellMode::at_most};
    SearchConfig c = cfg;
    if (ch.kind == Channel::Kind::dephasing &&
        cfg.functional == Functional::ergotropy)
      c.upper_bound = n * e;  // mean energy is conserved
    const SearchResult r = max_output_functional(ch, h_cell, shell, c);
    out.push_back({n, r.value / n});
  }
  return out;
}

ReplacementGapReport replacement_gap_demo(const DensityMatrix& rho0,
                                          const HermitianOperator& h) {
  if (rho0.dim != h.dim)
    throw validation_error("replacement_gap_demo: dim mismatch");
  // rho0 must be diagonal in the (ascending) energy eigenbasis with
  // non-increasing populations, i.e. passive.
  for (int i = 0; i < rho0.dim; ++i)
    for (int j = 0; j < rho0.dim; ++j)
      if (i != j && std::abs(rho0.entries(i, j)) > 1e-12)
        throw validation_error("replacement_gap_demo: rho0 must be diagonal");
  for (int i = 0; i + 1 < rho0.dim; ++i)
    if (rho0.entries(i, i).real() <
        rho0.entries(i + 1, i + 1).real() - 1e-12)
      throw validation_error(
          "replacement_gap_demo: rho0 populations must be non-increasing");

  ReplacementGapReport rep;
  rep.ergotropy_rho0 = ergotropy(rho0, h);
  rep.total_ergotropy_rho0 = total_ergotropy(rho0, h);
  rep.gap = rep.total_ergotropy_rho0 - rep.ergotropy_rho0;
  rep.c_loc = rep.c_sep_loc = rep.ergotropy_rho0;
  rep.c_e = rep.c_sep = rep.total_ergotropy_rho0;
  rep.c_loc_tot = rep.c_sep_loc_tot = rep.total_ergotropy_rho0;
  return rep;
}

}  // namespace ergokit
