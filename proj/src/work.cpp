#include "ergokit/work.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ergokit/core.hpp"
#include "ergokit/optim.hpp"

namespace ergokit {

namespace {

RealVector ascending_spectrum(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // Eigen sorts ascending
}

// Spectrum shifted so the ground level sits at zero; avoids overflow in
// exp(-beta E) at large beta.
struct ShiftedSpectrum {
  RealVector e;  // ascending, e[0] == 0
  double e_min = 0.0;
  int ground_degeneracy = 1;

  explicit ShiftedSpectrum(const HermitianOperator& h) {
    RealVector raw = ascending_spectrum(h);
    e_min = raw[0];
    e = raw.array() - e_min;
    ground_degeneracy = 0;
    for (int i = 0; i < e.size(); ++i)
      if (e[i] <= 1e-12) ++ground_degeneracy;
  }

  // ln Z, mean energy, entropy and energy variance of the Gibbs state at
  // beta, all in shifted units.
  void stats(double beta, double& ln_z, double& energy, double& entropy,
             double& variance) const {
    const int d = static_cast<int>(e.size());
    double z = 0.0, ze = 0.0, ze2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double w = std::exp(-beta * e[i]);
      z += w;
      ze += w * e[i];
      ze2 += w * e[i] * e[i];
    }
    ln_z = std::log(z);
    energy = ze / z;
    variance = ze2 / z - energy * energy;
    entropy = beta * energy + ln_z;
  }
};

}  // namespace

DensityMatrix passive_state(const DensityMatrix& rho,
                            const HermitianOperator& h) {
  if (rho.dim != h.dim) throw validation_error("passive_state: dim mismatch");
  const SpectralDecomposition sr = spectral_decomposition(rho.entries);
  const SpectralDecomposition sh = spectral_decomposition(h);
  const int d = rho.dim;
  Matrix out = Matrix::Zero(d, d);
  // sr descending; h eigenvectors reversed to ascending energy order.
  for (int l = 0; l < d; ++l) {
    const auto v = sh.eigenvectors.col(d - 1 - l);
    out += sr.eigenvalues[l] * v * v.adjoint();
  }
  out = (out + out.adjoint().eval()) / 2.0;
  return DensityMatrix(std::move(out));
}

double passive_energy(const DensityMatrix& rho, const HermitianOperator& h) {
  if (rho.dim != h.dim) throw validation_error("passive_energy: dim mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries, Eigen::EigenvaluesOnly);
  const RealVector pops_asc = es.eigenvalues();
  const RealVector energies = ascending_spectrum(h);
  const int d = rho.dim;
  double acc = 0.0;
  for (int l = 0; l < d; ++l) acc += pops_asc[d - 1 - l] * energies[l];
  return acc;
}

double ergotropy(const DensityMatrix& rho, const HermitianOperator& h) {
  return mean_energy(rho, h) - passive_energy(rho, h);
}

double distribution_ergotropy(const RealVector& populations,
                              const RealVector& energies_ascending) {
  const int d = static_cast<int>(populations.size());
  if (d != energies_ascending.size())
    throw validation_error("distribution_ergotropy: size mismatch");
  std::vector<double> p(populations.data(), populations.data() + d);
  double mean = 0.0;
  for (int i = 0; i < d; ++i) mean += p[i] * energies_ascending[i];
  std::sort(p.begin(), p.end(), std::greater<double>());
  double pass = 0.0;
  for (int i = 0; i < d; ++i) pass += p[i] * energies_ascending[i];
  return mean - pass;
}

double log_partition_function(const HermitianOperator& h, double beta) {
  ShiftedSpectrum s(h);
  double ln_z, e, ent, var;
  s.stats(beta, ln_z, e, ent, var);
  return ln_z - beta * s.e_min;
}

double gibbs_mean_energy(const HermitianOperator& h, double beta) {
  ShiftedSpectrum s(h);
  double ln_z, e, ent, var;
  s.stats(beta, ln_z, e, ent, var);
  return e + s.e_min;
}

double gibbs_entropy(const HermitianOperator& h, double beta) {
  ShiftedSpectrum s(h);
  double ln_z, e, ent, var;
  s.stats(beta, ln_z, e, ent, var);
  return ent;
}

GibbsSolution gibbs_beta_star(double target_entropy,
                              const HermitianOperator& h) {
  const double ln_d = std::log(static_cast<double>(h.dim));
  if (target_entropy < -1e-12 || target_entropy > ln_d + 1e-12)
    throw validation_error("gibbs_beta_star: target entropy " +
                           std::to_string(target_entropy) +
                           " outside [0, ln d]");
  target_entropy = std::clamp(target_entropy, 0.0, ln_d);

  ShiftedSpectrum s(h);
  const double s_floor = std::log(static_cast<double>(s.ground_degeneracy));
  GibbsSolution sol;

  if (target_entropy <= s_floor + 1e-15) {
    sol.infinite = true;
    sol.gibbs_energy = s.e_min;
    sol.gibbs_entropy = s_floor;
    sol.residual = std::abs(s_floor - target_entropy);
    return sol;
  }

  double ln_z, e, ent, var;
  if (target_entropy >= ln_d - 1e-15) {
    s.stats(0.0, ln_z, e, ent, var);
    sol.beta_star = 0.0;
    sol.gibbs_energy = e + s.e_min;
    sol.gibbs_entropy = ent;
    sol.residual = std::abs(ent - target_entropy);
    return sol;
  }

  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    s.stats(hi, ln_z, e, ent, var);
    if (ent < target_entropy) break;
    lo = hi;
    hi *= 2.0;
  }
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    s.stats(mid, ln_z, e, ent, var);
    if (ent > target_entropy)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * (1.0 + hi)) break;
  }
  double beta = 0.5 * (lo + hi);
  // Newton polish; dS/dbeta = -beta Var(H).
  for (int k = 0; k < 8; ++k) {
    s.stats(beta, ln_z, e, ent, var);
    const double deriv = -beta * var;
    if (std::abs(deriv) < 1e-300) break;
    const double step = (ent - target_entropy) / deriv;
    const double next = beta - step;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    beta = next;
    if (std::abs(step) <= 1e-16 * (1.0 + beta)) break;
  }
  s.stats(beta, ln_z, e, ent, var);
  sol.beta_star = beta;
  sol.gibbs_energy = e + s.e_min;
  sol.gibbs_entropy = ent;
  sol.residual = std::abs(ent - target_entropy);
  return sol;
}

double total_ergotropy(const DensityMatrix& rho, const HermitianOperator& h) {
  const GibbsSolution sol = gibbs_beta_star(von_neumann_entropy(rho), h);
  return mean_energy(rho, h) - sol.gibbs_energy;
}

double free_energy_work(const DensityMatrix& rho, const HermitianOperator& h,
                        double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw validation_error("free_energy_work: beta must be positive finite");
  const double e = mean_energy(rho, h);
  const double s = von_neumann_entropy(rho);
  return e - s / beta + log_partition_function(h, beta) / beta;
}

void require_noninteracting(const HermitianOperator& h_total,
                            const std::vector<int>& dims,
                            const std::vector<HermitianOperator>& local_hs) {
  long dn = 1;
  for (int d : dims) dn *= d;
  if (dn != h_total.dim || dims.size() != local_hs.size())
    throw validation_error("require_noninteracting: inconsistent cell split");
  Matrix sum = Matrix::Zero(dn, dn);
  long left = 1;
  for (size_t j = 0; j < dims.size(); ++j) {
    long right = dn / (left * dims[j]);
    sum += tensor_product(
        tensor_product(Matrix::Identity(left, left), local_hs[j].entries),
        Matrix::Identity(right, right));
    left *= dims[j];
  }
  if ((sum - h_total.entries).cwiseAbs().maxCoeff() > 1e-10)
    throw validation_error(
        "local ergotropy for interacting Hamiltonians is unsupported");
}

double local_ergotropy(const DensityMatrix& rho_n, const std::vector<int>& dims,
                       const std::vector<HermitianOperator>& local_hs) {
  if (dims.size() != local_hs.size())
    throw validation_error("local_ergotropy: dims/Hamiltonians mismatch");
  double acc = 0.0;
  for (size_t j = 0; j < dims.size(); ++j)
    acc += ergotropy(partial_trace(rho_n, dims, static_cast<int>(j)),
                     local_hs[j]);
  return acc;
}

namespace {

// Hermitian matrix from d^2 real coefficients: diagonal entries first, then
// (re, im) for each upper-triangular pair.
Matrix generator_from_params(const double* th, int d) {
  Matrix g = Matrix::Zero(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) g(i, i) = th[k++];
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Complex z(th[k], th[k + 1]);
      k += 2;
      g(i, j) = z;
      g(j, i) = std::conj(z);
    }
  return g;
}

Matrix exp_i_hermitian(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const int d = static_cast<int>(g.rows());
  Vector phases(d);
  for (int i = 0; i < d; ++i) phases[i] = std::polar(1.0, es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

VariationalResult variational_local_ergotropy(
    const DensityMatrix& rho_n, const std::vector<int>& dims,
    const std::vector<HermitianOperator>& local_hs, int starts,
    std::uint64_t seed) {
  if (starts < 1) throw validation_error("variational: starts must be >= 1");
  const int ncells = static_cast<int>(dims.size());
  int nparams = 0;
  for (int d : dims) nparams += d * d;

  long dn = 1;
  for (int d : dims) dn *= d;
  Matrix h_total = Matrix::Zero(dn, dn);
  {
    long left = 1;
    for (int j = 0; j < ncells; ++j) {
      long right = dn / (left * dims[j]);
      h_total += tensor_product(
          tensor_product(Matrix::Identity(left, left), local_hs[j].entries),
          Matrix::Identity(right, right));
      left *= dims[j];
    }
  }
  const double e_in = (rho_n.entries * h_total).trace().real();

  auto objective = [&](const std::vector<double>& th) {
    Matrix u = Matrix::Identity(1, 1);
    int off = 0;
    for (int j = 0; j < ncells; ++j) {
      u = tensor_product(
          u, exp_i_hermitian(generator_from_params(th.data() + off, dims[j])));
      off += dims[j] * dims[j];
    }
    const double e_out =
        (u * rho_n.entries * u.adjoint() * h_total).trace().real();
    return e_out - e_in;  // minimized; extracted work is -this
  };

  std::vector<double> values(starts);
  std::vector<char> flags(starts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < starts; ++s) {
    std::vector<double> x0(nparams, 0.0);
    if (s > 0) {
      std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + s);
      std::uniform_real_distribution<double> uni(-1.5, 1.5);
      for (double& v : x0) v = uni(rng);
    }
    NmOptions opt;
    opt.max_iter = 5000;
    opt.tol = 1e-10;
    const NmResult r = nelder_mead(objective, std::move(x0), opt);
    values[s] = -r.value;
    flags[s] = r.converged ? 1 : 0;
  }

  VariationalResult out;
  out.value = values[0];
  out.converged = flags[0] != 0;
  for (int s = 1; s < starts; ++s) {
    if (values[s] > out.value) {
      out.value = values[s];
      out.converged = flags[s] != 0;
    }
  }
  return out;
}

WorkReport make_work_report(const DensityMatrix& rho,
                            const HermitianOperator& h, double beta,
                            const std::vector<int>& dims,
                            const std::vector<HermitianOperator>& local_hs) {
  WorkReport rep;
  rep.mean_energy = mean_energy(rho, h);
  rep.passive_energy = passive_energy(rho, h);
  rep.ergotropy = rep.mean_energy - rep.passive_energy;
  rep.total_ergotropy = total_ergotropy(rho, h);
  rep.free_energy_work = free_energy_work(rho, h, beta);
  rep.local_ergotropy = dims.empty()
                            ? rep.ergotropy
                            : local_ergotropy(rho, dims, local_hs);
  return rep;
}

}  // namespace ergokit
