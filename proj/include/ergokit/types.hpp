#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ergokit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Largest Hilbert space dimension we handle (12 qubits).
inline constexpr int kDimCap = 4096;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

class size_error : public std::runtime_error {
public:
  explicit size_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check_dim_cap(long dim) {
  if (dim > kDimCap)
    throw size_error("dimension " + std::to_string(dim) + " exceeds cap " +
                     std::to_string(kDimCap));
}

/// Max-abs deviation of A from its conjugate transpose.
inline double hermiticity_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

struct HermitianOperator {
  enum class Role { hamiltonian, generic };

  int dim = 0;
  Matrix entries;
  Role role = Role::generic;

  HermitianOperator() = default;
  HermitianOperator(Matrix m, Role r = Role::generic);

  /// Single q-cell Hamiltonian from a sorted spectrum; checks the
  /// eps_1 = 0, eps_d = 1 normalization.
  static HermitianOperator cell_hamiltonian(const RealVector& spectrum);
  /// Standard qubit cell diag(0, 1).
  static HermitianOperator qubit_cell();
};

struct DensityMatrix {
  int dim = 0;
  Matrix entries;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m);

  static DensityMatrix maximally_mixed(int dim);
};

struct PureState {
  int dim = 0;
  Vector amplitudes;

  PureState() = default;
  explicit PureState(Vector amps);

  DensityMatrix to_density() const;
};

struct SpectralDecomposition {
  RealVector eigenvalues;  // sorted non-increasing
  Matrix eigenvectors;     // columns, same order
};

}  // namespace ergokit
