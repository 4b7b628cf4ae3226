#include "ergokit/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ergokit/core.hpp"
#include "ergokit/optim.hpp"
#include "ergokit/work.hpp"

namespace ergokit {

namespace {

// Cell Hamiltonian replaced by its ascending diagonal form; every quantity
// we optimize is invariant under this fixed basis change.
HermitianOperator diagonal_cell(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries, Eigen::EigenvaluesOnly);
  Matrix m = Matrix::Zero(h.dim, h.dim);
  for (int i = 0; i < h.dim; ++i) m(i, i) = es.eigenvalues()[i];
  return HermitianOperator(std::move(m), h.role);
}

struct Problem {
  Channel ch;
  HermitianOperator h_cell;  // diagonal, ascending
  HermitianOperator h_total;
  RealVector level_energies;
  std::vector<int> dims;
  std::vector<HermitianOperator> local_hs;
  int n = 1;
  long dim = 0;
  EnergyShell shell;
  SearchConfig cfg;

  Problem(const Channel& channel, const HermitianOperator& h,
          const EnergyShell& sh, const SearchConfig& c)
      : ch(channel), h_cell(diagonal_cell(h)), shell(sh), cfg(c) {
    n = sh.n;
    if (n < 1) throw validation_error("shell: n must be >= 1");
    const double e_max =
        n * h_cell.entries(h_cell.dim - 1, h_cell.dim - 1).real();
    if (sh.energy < -1e-12 || sh.energy > e_max + 1e-12)
      throw validation_error("infeasible shell: E outside [0, n]");
    h_total = array_hamiltonian(h_cell, n);
    dim = h_total.dim;
    level_energies = product_basis_energies(h_cell, n);
    dims.assign(n, h_cell.dim);
    local_hs.assign(n, h_cell);
  }

  double value_of(const DensityMatrix& input) const {
    const DensityMatrix out = apply_tensor_power(ch, n, input, h_cell);
    switch (cfg.functional) {
      case Functional::ergotropy:
        return ergotropy(out, h_total);
      case Functional::total_ergotropy:
        return total_ergotropy(out, h_total);
      case Functional::free_energy:
        return free_energy_work(out, h_total, cfg.beta);
      case Functional::local_ergotropy:
        return local_ergotropy(out, dims, local_hs);
    }
    return 0.0;
  }

  double input_energy(const Vector& psi) const {
    double e = 0.0;
    for (long x = 0; x < dim; ++x) e += std::norm(psi[x]) * level_energies[x];
    return e;
  }
};

Vector psi_from_params(const Problem& pb, const std::vector<double>& x) {
  Vector psi(pb.dim);
  if (pb.cfg.nonneg_amplitudes) {
    for (long i = 0; i < pb.dim; ++i) psi[i] = std::abs(x[i]);
  } else {
    for (long i = 0; i < pb.dim; ++i) psi[i] = Complex(x[2 * i], x[2 * i + 1]);
  }
  const double nrm = psi.norm();
  if (nrm < 1e-14) {
    psi.setZero();
    psi[0] = 1.0;
  } else {
    psi /= nrm;
  }
  repair_energy(psi, pb.level_energies, pb.shell);
  return psi;
}

std::vector<double> params_from_psi(const Problem& pb, const Vector& psi) {
  std::vector<double> x;
  if (pb.cfg.nonneg_amplitudes) {
    x.resize(pb.dim);
    for (long i = 0; i < pb.dim; ++i) x[i] = std::abs(psi[i]);
  } else {
    x.resize(2 * pb.dim);
    for (long i = 0; i < pb.dim; ++i) {
      x[2 * i] = psi[i].real();
      x[2 * i + 1] = psi[i].imag();
    }
  }
  return x;
}

// Representative basis index for each distinct basis energy, ascending.
std::vector<std::pair<double, long>> distinct_levels(const RealVector& en) {
  std::vector<long> idx(en.size());
  for (long i = 0; i < en.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](long a, long b) { return en[a] < en[b]; });
  std::vector<std::pair<double, long>> out;
  for (long i : idx)
    if (out.empty() || en[i] > out.back().first + 1e-12)
      out.emplace_back(en[i], i);
  return out;
}

// Two-point vertex states between representatives of basis energy levels
// bracketing E, plus the per-cell product state at uniform energy fraction.
std::vector<Vector> seed_states(const Problem& pb) {
  std::vector<Vector> seeds;
  const double e = pb.shell.energy;
  const auto levels = distinct_levels(pb.level_energies);

  for (size_t a = 0; a < levels.size(); ++a) {
    if (levels[a].first > e + 1e-12) break;
    for (size_t b = a; b < levels.size(); ++b) {
      if (levels[b].first < e - 1e-12) continue;
      const double ea = levels[a].first, eb = levels[b].first;
      const double t = (eb > ea + 1e-12) ? (e - ea) / (eb - ea) : 0.0;
      if (t < -1e-12 || t > 1.0 + 1e-12) continue;
      Vector v = Vector::Zero(pb.dim);
      v[levels[a].second] = std::sqrt(std::max(0.0, 1.0 - t));
      v[levels[b].second] += std::sqrt(std::max(0.0, t));
      v /= v.norm();
      seeds.push_back(std::move(v));
    }
  }

  // |psi_(E/n)> per cell, two-level between ground and top.
  {
    const int d = pb.h_cell.dim;
    const double frac = std::clamp(e / pb.n, 0.0, 1.0);
    Vector cell = Vector::Zero(d);
    cell[0] = std::sqrt(1.0 - frac);
    cell[d - 1] = std::sqrt(frac);
    Vector v = cell;
    for (int k = 1; k < pb.n; ++k) v = tensor_product(v, cell);
    seeds.push_back(std::move(v));
  }

  // Uniform positive vector, repaired onto the shell.
  {
    Vector v = Vector::Constant(pb.dim, 1.0 / std::sqrt((double)pb.dim));
    repair_energy(v, pb.level_energies, pb.shell);
    seeds.push_back(std::move(v));
  }
  return seeds;
}

struct StartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  Vector psi;
  bool converged = false;
};

StartOutcome run_start(const Problem& pb, const Vector& psi0) {
  auto objective = [&](const std::vector<double>& x) {
    const Vector psi = psi_from_params(pb, x);
    return -pb.value_of(PureState(psi).to_density());
  };
  NmOptions opt;
  opt.max_iter = 5000;
  opt.tol = 1e-10;
  opt.init_step = 0.15;
  const NmResult r = nelder_mead(objective, params_from_psi(pb, psi0), opt);
  StartOutcome out;
  out.psi = psi_from_params(pb, r.x);
  out.value = -r.value;
  out.converged = r.converged;
  return out;
}

SearchResult reduce_outcomes(const Problem& pb,
                             const std::vector<StartOutcome>& outs) {
  SearchResult res;
  res.starts = static_cast<int>(outs.size());
  int best = 0;
  for (size_t i = 1; i < outs.size(); ++i)
    if (outs[i].value > outs[best].value) best = static_cast<int>(i);
  res.value = outs[best].value;
  res.witness = outs[best].psi;
  res.achieved_energy = pb.input_energy(outs[best].psi);
  res.converged = outs[best].converged;
  return res;
}

}  // namespace

int default_starts(int n) {
  if (n <= 1) return 16;
  if (n == 2) return 64;
  return 256;
}

RealVector product_basis_energies(const HermitianOperator& h_cell, int n) {
  const int d = h_cell.dim;
  long dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  check_dim_cap(dim);
  RealVector eps(d);
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h_cell.entries,
                                             Eigen::EigenvaluesOnly);
    eps = es.eigenvalues();
  }
  RealVector en(dim);
  for (long x = 0; x < dim; ++x) {
    long t = x;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += eps[t % d];
      t /= d;
    }
    en[x] = acc;
  }
  return en;
}

void repair_energy(Vector& psi, const RealVector& level_energies,
                   const EnergyShell& shell) {
  const long dim = psi.size();
  const double e_top = level_energies.maxCoeff();
  double e = 0.0;
  for (long x = 0; x < dim; ++x) e += std::norm(psi[x]) * level_energies[x];

  const double target = shell.energy;
  double t = 0.0;
  long anchor = -1;
  if (e > target + 1e-15) {
    // blend populations toward the ground basis state
    long bottom = 0;
    const double e_bot = level_energies.minCoeff(&bottom);
    if (e <= e_bot) return;
    t = (e - target) / (e - e_bot);
    anchor = bottom;
  } else if (e < target - 1e-15 && shell.mode == ShellMode::exact) {
    if (e_top <= e) return;
    t = (target - e) / (e_top - e);
    long top = 0;
    level_energies.maxCoeff(&top);
    anchor = top;
  } else {
    return;
  }
  t = std::clamp(t, 0.0, 1.0);
  for (long x = 0; x < dim; ++x) {
    double p = (1.0 - t) * std::norm(psi[x]);
    if (x == anchor) p += t;
    const double mag = std::abs(psi[x]);
    const Complex phase = (mag > 1e-15) ? psi[x] / mag : Complex(1.0, 0.0);
    psi[x] = phase * std::sqrt(p);
  }
}

SearchResult max_output_functional(const Channel& ch,
                                   const HermitianOperator& h_cell,
                                   const EnergyShell& shell,
                                   const SearchConfig& cfg) {
  Problem pb(ch, h_cell, shell, cfg);
  const int starts = cfg.starts > 0 ? cfg.starts : default_starts(shell.n);

  std::vector<Vector> seeds = seed_states(pb);
  std::vector<StartOutcome> outs;
  outs.reserve(starts + seeds.size());
  for (const Vector& s : seeds) outs.push_back(run_start(pb, s));

  // If a seed already sits at a known analytic ceiling, random starts
  // cannot improve on it.
  bool done = false;
  if (std::isfinite(cfg.upper_bound)) {
    for (const auto& o : outs)
      if (o.value >= cfg.upper_bound - 0.1 * cfg.tolerance) done = true;
  }

  const int nrandom = done ? 0 : std::max(0, starts - (int)seeds.size());
  std::vector<StartOutcome> rnd(nrandom);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
#endif
  for (int s = 0; s < nrandom; ++s) {
    const PureState p =
        random_pure_state((int)pb.dim, cfg.seed * 0x9e3779b97f4a7c15ULL + s + 1);
    Vector v = p.amplitudes;
    if (cfg.nonneg_amplitudes)
      for (long i = 0; i < pb.dim; ++i) v[i] = std::abs(v[i]);
    repair_energy(v, pb.level_energies, pb.shell);
    rnd[s] = run_start(pb, v);
  }
  outs.insert(outs.end(), rnd.begin(), rnd.end());
  return reduce_outcomes(pb, outs);
}

namespace {

// Separable inputs: per-cell two-level states sqrt(1-t)|0> + e^{i phi}
// sqrt(t)|top>, with the partition {t_j} repaired onto the shell.
struct SepParams {
  std::vector<double> t;
  std::vector<double> phi;
};

SepParams sep_from_raw(const Problem& pb, const std::vector<double>& x) {
  SepParams sp;
  sp.t.resize(pb.n);
  sp.phi.assign(pb.n, 0.0);
  const bool with_phase = !pb.cfg.nonneg_amplitudes;
  for (int j = 0; j < pb.n; ++j) {
    const double s = std::sin(x[j]);
    sp.t[j] = s * s;
    if (with_phase) sp.phi[j] = x[pb.n + j];
  }
  double sum = 0.0;
  for (double v : sp.t) sum += v;
  const double target = pb.shell.energy;
  if (sum > target + 1e-15) {
    const double f = target / sum;
    for (double& v : sp.t) v *= f;
  } else if (sum < target - 1e-15 && pb.shell.mode == ShellMode::exact) {
    double room = 0.0;
    for (double v : sp.t) room += 1.0 - v;
    if (room > 1e-15) {
      const double f = (target - sum) / room;
      for (double& v : sp.t) v += f * (1.0 - v);
    }
  }
  return sp;
}

Vector sep_state(const Problem& pb, const SepParams& sp) {
  const int d = pb.h_cell.dim;
  Vector v;
  for (int j = 0; j < pb.n; ++j) {
    Vector cell = Vector::Zero(d);
    cell[0] = std::sqrt(std::max(0.0, 1.0 - sp.t[j]));
    cell[d - 1] = std::polar(std::sqrt(std::max(0.0, sp.t[j])), sp.phi[j]);
    v = (j == 0) ? cell : tensor_product(v, cell);
  }
  return v;
}

}  // namespace

SearchResult max_output_separable(const Channel& ch,
                                  const HermitianOperator& h_cell,
                                  const EnergyShell& shell,
                                  const SearchConfig& cfg) {
  Problem pb(ch, h_cell, shell, cfg);
  const int starts = cfg.starts > 0 ? cfg.starts : default_starts(shell.n);
  const bool with_phase = !cfg.nonneg_amplitudes;
  const int nparams = with_phase ? 2 * pb.n : pb.n;

  auto objective = [&](const std::vector<double>& x) {
    const Vector psi = sep_state(pb, sep_from_raw(pb, x));
    return -pb.value_of(PureState(psi).to_density());
  };

  auto polish = [&](std::vector<double> x0) {
    NmOptions opt;
    opt.max_iter = 5000;
    opt.tol = 1e-10;
    opt.init_step = 0.1;
    const NmResult r = nelder_mead(objective, std::move(x0), opt);
    StartOutcome out;
    out.psi = sep_state(pb, sep_from_raw(pb, r.x));
    out.value = -r.value;
    out.converged = r.converged;
    return out;
  };

  std::vector<StartOutcome> outs;
  {
    // Integer partition seed: fill cells to 1 in order, remainder on the next.
    std::vector<double> x(nparams, 0.0);
    double rem = shell.energy;
    for (int j = 0; j < pb.n; ++j) {
      const double tj = std::clamp(rem, 0.0, 1.0);
      rem -= tj;
      x[j] = std::asin(std::sqrt(tj));
    }
    outs.push_back(polish(x));
  }
  {
    // Uniform split.
    std::vector<double> x(nparams, 0.0);
    const double tj = std::clamp(shell.energy / pb.n, 0.0, 1.0);
    for (int j = 0; j < pb.n; ++j) x[j] = std::asin(std::sqrt(tj));
    outs.push_back(polish(x));
  }

  bool done = false;
  if (std::isfinite(cfg.upper_bound)) {
    for (const auto& o : outs)
      if (o.value >= cfg.upper_bound - 0.1 * cfg.tolerance) done = true;
  }
  const int nrandom = done ? 0 : std::max(0, starts - (int)outs.size());
  std::vector<StartOutcome> rnd(nrandom);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
#endif
  for (int s = 0; s < nrandom; ++s) {
    std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 7919 + s);
    std::uniform_real_distribution<double> uni(0.0, M_PI / 2.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * M_PI);
    std::vector<double> x(nparams, 0.0);
    for (int j = 0; j < pb.n; ++j) x[j] = uni(rng);
    if (with_phase)
      for (int j = 0; j < pb.n; ++j) x[pb.n + j] = uphi(rng);
    rnd[s] = polish(std::move(x));
  }
  outs.insert(outs.end(), rnd.begin(), rnd.end());
  return reduce_outcomes(pb, outs);
}

double dephasing_diagonal_vertex_optimum(int n, double e,
                                         const HermitianOperator& h) {
  const HermitianOperator hd = diagonal_cell(h);
  const RealVector en = product_basis_energies(hd, n);
  std::vector<double> sorted(en.data(), en.data() + en.size());
  std::sort(sorted.begin(), sorted.end());
  const auto levels = distinct_levels(en);

  double best = -std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < levels.size(); ++a) {
    if (levels[a].first > e + 1e-12) break;
    for (size_t b = a; b < levels.size(); ++b) {
      if (levels[b].first < e - 1e-12) continue;
      const double ea = levels[a].first, eb = levels[b].first;
      const double t = (eb > ea + 1e-12) ? (e - ea) / (eb - ea) : 0.0;
      if (t < -1e-12 || t > 1.0 + 1e-12) continue;
      // passive energy of the two-point distribution {1-t, t}
      const double hi = std::max(1.0 - t, t), lo = std::min(1.0 - t, t);
      const double pass = hi * sorted[0] + (en.size() > 1 ? lo * sorted[1] : 0.0);
      best = std::max(best, e - pass);
    }
  }
  return best;
}

double full_dephasing_diagonal_solver(int n, double e,
                                      const HermitianOperator& h) {
  double best = dephasing_diagonal_vertex_optimum(n, e, h);
  // Pure-state search path; skipped for large n where the vertex optimum is
  // already exact and the high-dimensional polish adds nothing but time.
  if (n <= 4) {
    SearchConfig cfg;
    cfg.functional = Functional::ergotropy;
    cfg.nonneg_amplitudes = true;
    cfg.starts = default_starts(n);
    cfg.upper_bound = best;  // convex objective: vertices are optimal
    EnergyShell shell{n, e, ShellMode::exact};
    const SearchResult r =
        max_output_functional(Channel::dephasing(1.0, h.dim), h, shell, cfg);
    best = std::max(best, r.value);
  }
  return best;
}

double brute_force_shell_oracle(const Channel& ch,
                                const HermitianOperator& h_cell,
                                const EnergyShell& shell,
                                const SearchConfig& cfg, long samples) {
  Problem pb(ch, h_cell, shell, cfg);
  if (pb.dim > 64)
    throw size_error("brute_force_shell_oracle: instance too large");
  if (samples < 1) throw validation_error("oracle: samples must be >= 1");

  const int nthreads =
#ifdef _OPENMP
      cfg.parallel ? omp_get_max_threads() : 1;
#else
      1;
#endif
  std::vector<double> best(nthreads,
                           -std::numeric_limits<double>::infinity());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (cfg.parallel)
#endif
  for (long s = 0; s < samples; ++s) {
    const int tid =
#ifdef _OPENMP
        omp_get_thread_num();
#else
        0;
#endif
    Vector v = random_pure_state((int)pb.dim,
                                 cfg.seed * 0x9e3779b97f4a7c15ULL + s)
                   .amplitudes;
    if (cfg.nonneg_amplitudes)
      for (long i = 0; i < pb.dim; ++i) v[i] = std::abs(v[i]);
    repair_energy(v, pb.level_energies, pb.shell);
    const double val = pb.value_of(PureState(v).to_density());
    if (val > best[tid]) best[tid] = val;
  }
  return *std::max_element(best.begin(), best.end());
}

}  // namespace ergokit
