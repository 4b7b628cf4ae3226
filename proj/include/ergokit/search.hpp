#pragma once

#include <cstdint>
#include <limits>

#include "ergokit/channels.hpp"
#include "ergokit/types.hpp"

namespace ergokit {

enum class ShellMode { exact, at_most };

struct EnergyShell {
  int n = 1;
  double energy = 0.0;
  ShellMode mode = ShellMode::exact;
};

enum class Functional { ergotropy, total_ergotropy, free_energy, local_ergotropy };
enum class InputClass { global_pure, separable_pure, diagonal };

struct SearchConfig {
  Functional functional = Functional::ergotropy;
  InputClass input_class = InputClass::global_pure;
  int starts = 0;  // 0 = pick by n (16 / 64 / 256)
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  bool nonneg_amplitudes = true;  // sound for covariant channels
  double beta = 1.0;              // free_energy functional only
  bool parallel = true;           // serial reference path when false
  // When finite, starts stop early once a start reaches this value within
  // tolerance (e.g. the E upper bound for dephasing).
  double upper_bound = std::numeric_limits<double>::infinity();
};

struct SearchResult {
  double value = 0.0;
  Vector witness;                 // input amplitudes, cell energy eigenbasis
  double achieved_energy = 0.0;   // input energy of the witness
  int starts = 0;
  bool converged = false;
};

int default_starts(int n);

/// Multi-start maximization of the output work functional over pure input
/// states on the energy shell. The returned value is a certified lower
/// bound; the witness satisfies the shell constraint within 1e-10.
SearchResult max_output_functional(const Channel& ch,
                                   const HermitianOperator& h_cell,
                                   const EnergyShell& shell,
                                   const SearchConfig& cfg);

/// Same search restricted to products of per-cell pure states, optimizing
/// the energy partition jointly with the cell states.
SearchResult max_output_separable(const Channel& ch,
                                  const HermitianOperator& h_cell,
                                  const EnergyShell& shell,
                                  const SearchConfig& cfg);

/// Complete-dephasing optimum on the exact shell. The output is diagonal,
/// so the problem reduces to distributions over basis-state energies; the
/// objective is convex in the distribution, so the optimum sits on a
/// two-point-support vertex, which is enumerated exactly. A pure-state
/// search path cross-validates it in the tests.
double full_dephasing_diagonal_solver(int n, double e,
                                      const HermitianOperator& h);

/// Exact two-point vertex enumeration used as the distribution-space polish.
double dephasing_diagonal_vertex_optimum(int n, double e,
                                         const HermitianOperator& h);

/// Dense random-sampling lower bound over the constrained family; tiny
/// instances only (dim <= 64). Certifies optimizer output from below.
double brute_force_shell_oracle(const Channel& ch,
                                const HermitianOperator& h_cell,
                                const EnergyShell& shell,
                                const SearchConfig& cfg, long samples);

/// Basis-state energies of the n-cell product eigenbasis, ascending cell
/// spectrum, cell 1 = most significant digit.
RealVector product_basis_energies(const HermitianOperator& h_cell, int n);

/// Mix a state's populations with the ground (or top) basis state so its
/// mean energy lands exactly on the shell; phases are preserved.
void repair_energy(Vector& psi, const RealVector& level_energies,
                   const EnergyShell& shell);

}  // namespace ergokit
