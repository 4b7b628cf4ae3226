#include "ergokit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ergokit {

HermitianOperator::HermitianOperator(Matrix m, Role r) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw validation_error("operator must be a non-empty square matrix");
  const double defect = hermiticity_defect(m);
  if (defect > kHermTol)
    throw validation_error("operator is not Hermitian, max asymmetry " +
                           std::to_string(defect));
  dim = static_cast<int>(m.rows());
  check_dim_cap(dim);
  entries = std::move(m);
  role = r;
}

HermitianOperator HermitianOperator::cell_hamiltonian(
    const RealVector& spectrum) {
  const int d = static_cast<int>(spectrum.size());
  if (d < 2) throw validation_error("cell Hamiltonian needs dimension >= 2");
  for (int i = 0; i + 1 < d; ++i)
    if (spectrum[i] > spectrum[i + 1])
      throw validation_error("cell spectrum must be sorted ascending");
  if (std::abs(spectrum[0]) > kHermTol || std::abs(spectrum[d - 1] - 1.0) > kHermTol)
    throw validation_error(
        "cell Hamiltonian must be normalized to eps_1 = 0, eps_d = 1");
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = spectrum[i];
  return HermitianOperator(std::move(m), Role::hamiltonian);
}

HermitianOperator HermitianOperator::qubit_cell() {
  RealVector s(2);
  s << 0.0, 1.0;
  return cell_hamiltonian(s);
}

DensityMatrix::DensityMatrix(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw validation_error("density matrix must be square");
  const double defect = hermiticity_defect(m);
  if (defect > kHermTol)
    throw validation_error("density matrix not Hermitian, max asymmetry " +
                           std::to_string(defect));
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw validation_error("density matrix trace " + std::to_string(tr) +
                           " is not 1");
  dim = static_cast<int>(m.rows());
  check_dim_cap(dim);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues().minCoeff();
  if (lam_min < -kPsdTol)
    throw validation_error("density matrix has eigenvalue " +
                           std::to_string(lam_min) + " below -1e-10");
  entries = std::move(m);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

PureState::PureState(Vector amps) {
  if (amps.size() == 0) throw validation_error("empty state vector");
  const double nrm = amps.norm();
  if (std::abs(nrm - 1.0) > kHermTol)
    throw validation_error("state vector norm " + std::to_string(nrm) +
                           " is not 1");
  dim = static_cast<int>(amps.size());
  check_dim_cap(dim);
  amplitudes = std::move(amps);
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix(amplitudes * amplitudes.adjoint());
}

namespace {

void phase_fix_column(Matrix& v, int col) {
  int imax = 0;
  double best = -1.0;
  for (int i = 0; i < v.rows(); ++i) {
    const double a = std::abs(v(i, col));
    if (a > best + 1e-14) {
      best = a;
      imax = i;
    }
  }
  const Complex z = v(imax, col);
  if (std::abs(z) > 0) v.col(col) *= std::conj(z) / std::abs(z);
}

}  // namespace

SpectralDecomposition spectral_decomposition(const Matrix& a) {
  const double defect = hermiticity_defect(a);
  if (defect > kHermTol)
    throw validation_error("spectral_decomposition: non-Hermitian input, "
                           "max asymmetry " + std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const int d = static_cast<int>(a.rows());
  SpectralDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  // Eigen returns ascending order; flip to non-increasing.
  for (int i = 0; i < d; ++i) {
    out.eigenvalues[i] = es.eigenvalues()[d - 1 - i];
    out.eigenvectors.col(i) = es.eigenvectors().col(d - 1 - i);
    phase_fix_column(out.eigenvectors, i);
  }
  return out;
}

SpectralDecomposition spectral_decomposition(const HermitianOperator& a) {
  return spectral_decomposition(a.entries);
}

double mean_energy(const DensityMatrix& rho, const HermitianOperator& h) {
  if (rho.dim != h.dim)
    throw validation_error("mean_energy: dimension mismatch");
  const Complex tr = (rho.entries * h.entries).trace();
  if (std::abs(tr.imag()) > 1e-12)
    throw validation_error("mean_energy: imaginary residue " +
                           std::to_string(tr.imag()));
  return tr.real();
}

double entropy_of_populations(const RealVector& populations) {
  double s = 0.0;
  for (int i = 0; i < populations.size(); ++i) {
    double p = populations[i];
    if (p < -kPsdTol)
      throw validation_error("entropy: population " + std::to_string(p) +
                             " below -1e-10");
    if (p <= 0) continue;
    s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries, Eigen::EigenvaluesOnly);
  return entropy_of_populations(es.eigenvalues());
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  check_dim_cap(a.rows() * b.rows());
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor_product(const Vector& a, const Vector& b) {
  check_dim_cap(a.size() * b.size());
  Vector out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor_product(a.entries, b.entries));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState(tensor_product(a.amplitudes, b.amplitudes));
}

Matrix kron_power(const Matrix& cell, int n) {
  if (n < 1) throw validation_error("kron_power: n must be >= 1");
  Matrix out = cell;
  for (int k = 1; k < n; ++k) out = tensor_product(out, cell);
  return out;
}

HermitianOperator array_hamiltonian(const HermitianOperator& h, int n) {
  if (n < 1) throw validation_error("array_hamiltonian: n must be >= 1");
  const int d = h.dim;
  long dn = 1;
  for (int k = 0; k < n; ++k) {
    dn *= d;
    check_dim_cap(dn);
  }
  Matrix total = Matrix::Zero(dn, dn);
  long left = 1;
  long right = dn / d;
  for (int j = 0; j < n; ++j) {
    const Matrix term = tensor_product(
        tensor_product(Matrix::Identity(left, left), h.entries),
        Matrix::Identity(right, right));
    total += term;
    left *= d;
    right /= d;
  }
  return HermitianOperator(std::move(total), HermitianOperator::Role::generic);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims, int keep) {
  long prod = 1;
  for (int d : dims) prod *= d;
  if (prod != rho.dim)
    throw validation_error("partial_trace: cell dims do not factor the state");
  if (keep < 0 || keep >= static_cast<int>(dims.size()))
    throw validation_error("partial_trace: keep index out of range");

  const int dk = dims[keep];
  long left = 1, right = 1;
  for (int j = 0; j < keep; ++j) left *= dims[j];
  for (int j = keep + 1; j < static_cast<int>(dims.size()); ++j)
    right *= dims[j];

  Matrix out = Matrix::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (long l = 0; l < left; ++l)
        for (long r = 0; r < right; ++r) {
          const long row = (l * dk + a) * right + r;
          const long col = (l * dk + b) * right + r;
          acc += rho.entries(row, col);
        }
      out(a, b) = acc;
    }
  // Numerical symmetrization keeps the type invariant at 1e-12.
  out = (out + out.adjoint().eval()) / 2.0;
  return DensityMatrix(std::move(out));
}

PureState random_pure_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  v /= v.norm();
  return PureState(std::move(v));
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex z = r(j, j);
    if (std::abs(z) > 0) q.col(j) *= z / std::abs(z);
  }
  return q;
}

Matrix random_energy_preserving_unitary(const HermitianOperator& h,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
  const SpectralDecomposition sd = spectral_decomposition(h);
  Matrix v = Matrix::Zero(h.dim, h.dim);
  for (int l = 0; l < h.dim; ++l) {
    const Complex phase = std::polar(1.0, uni(rng));
    v += phase * sd.eigenvectors.col(l) * sd.eigenvectors.col(l).adjoint();
  }
  return v;
}

}  // namespace ergokit
