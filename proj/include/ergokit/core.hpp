#pragma once

#include <cstdint>
#include <vector>

#include "ergokit/types.hpp"

namespace ergokit {

/// Eigendecomposition with eigenvalues sorted non-increasing and
/// phase-fixed eigenvectors (largest-magnitude component real positive).
SpectralDecomposition spectral_decomposition(const HermitianOperator& a);
SpectralDecomposition spectral_decomposition(const Matrix& a);

double mean_energy(const DensityMatrix& rho, const HermitianOperator& h);

/// Von Neumann entropy in nats. Eigenvalues in (-1e-10, 0) are clamped to 0.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_populations(const RealVector& populations);

Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product(const Vector& a, const Vector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

/// n-fold Kronecker power of a cell operator (cell 1 = leftmost factor).
Matrix kron_power(const Matrix& cell, int n);

/// Non-interacting total Hamiltonian sum_j h_j on n identical cells.
HermitianOperator array_hamiltonian(const HermitianOperator& h, int n);

/// Reduced state of cell `keep` (0-based) of a state on cells with the
/// given dimensions.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims, int keep);

PureState random_pure_state(int dim, std::uint64_t seed);

/// Haar-random unitary (QR of a Ginibre matrix), used by brute-force oracles.
Matrix random_unitary(int dim, std::uint64_t seed);

/// Diagonal-phase unitary in the eigenbasis of h, phases uniform in [0, 2pi).
Matrix random_energy_preserving_unitary(const HermitianOperator& h,
                                        std::uint64_t seed);

}  // namespace ergokit
