#include "ergokit/channels.hpp"

#include <cmath>

#include "ergokit/core.hpp"

namespace ergokit {

double depolarizing_lambda_min(int d) {
  return -1.0 / (static_cast<double>(d) * d - 1.0);
}

namespace {

void check_kappa(double kappa) {
  if (kappa < 0.0 || kappa > 1.0)
    throw validation_error("dephasing kappa " + std::to_string(kappa) +
                           " outside [0, 1]");
}

void check_lambda(double lambda, int d) {
  const double lo = depolarizing_lambda_min(d);
  if (lambda < lo - 1e-12 || lambda > 1.0 + 1e-12)
    throw validation_error("depolarizing lambda " + std::to_string(lambda) +
                           " outside [" + std::to_string(lo) + ", 1]");
}

bool is_diagonal(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > 1e-14) return false;
  return true;
}

// Damping factor between cell levels a and b.
double pair_coeff(const Channel& ch, int a, int b) {
  if (a == b) return 1.0;
  if (ch.dephasing_coeffs) return (*ch.dephasing_coeffs)(a, b);
  return std::sqrt(1.0 - ch.kappa);
}

// Dephase an n-cell matrix already expressed in the product energy basis.
void dephase_in_basis(const Channel& ch, int n, Matrix& m) {
  const int d = ch.cell_dim;
  const long dim = m.rows();
  std::vector<int> xd(n), yd(n);
  for (long x = 0; x < dim; ++x) {
    long t = x;
    for (int j = n - 1; j >= 0; --j) {
      xd[j] = static_cast<int>(t % d);
      t /= d;
    }
    for (long y = 0; y < dim; ++y) {
      if (x == y) continue;
      t = y;
      for (int j = n - 1; j >= 0; --j) {
        yd[j] = static_cast<int>(t % d);
        t /= d;
      }
      double f = 1.0;
      for (int j = 0; j < n; ++j) f *= pair_coeff(ch, xd[j], yd[j]);
      m(x, y) *= f;
    }
  }
}

// Single-cell depolarizing action on cell j of an n-cell matrix, in place:
// rho -> lambda rho + (1 - lambda)/d * (I_j (x) Tr_j[rho]).
void depolarize_cell(double lambda, int d, int n, int j, Matrix& m) {
  long right = 1;
  for (int k = j + 1; k < n; ++k) right *= d;
  const long dim = m.rows();
  const long block = right * d;
  const long left = dim / block;

  Matrix out = lambda * m;
  const double w = (1.0 - lambda) / d;
  for (long l = 0; l < left; ++l)
    for (long lp = 0; lp < left; ++lp)
      for (long r = 0; r < right; ++r)
        for (long rp = 0; rp < right; ++rp) {
          Complex tr = 0.0;
          for (int c = 0; c < d; ++c)
            tr += m((l * d + c) * right + r, (lp * d + c) * right + rp);
          for (int a = 0; a < d; ++a)
            out((l * d + a) * right + r, (lp * d + a) * right + rp) += w * tr;
        }
  m = std::move(out);
}

DensityMatrix apply_power_impl(const Channel& ch, int n,
                               const DensityMatrix& rho_n,
                               const HermitianOperator& h_cell) {
  const int d = ch.cell_dim;
  long dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  if (rho_n.dim != dim)
    throw validation_error("apply_tensor_power: state dim " +
                           std::to_string(rho_n.dim) + " != cell_dim^n");
  check_dim_cap(dim);

  switch (ch.kind) {
    case Channel::Kind::dephasing: {
      check_kappa(ch.kappa);
      Matrix m = rho_n.entries;
      if (is_diagonal(h_cell.entries)) {
        dephase_in_basis(ch, n, m);
      } else {
        const SpectralDecomposition sd = spectral_decomposition(h_cell);
        const Matrix v = kron_power(sd.eigenvectors, n);
        Matrix t = v.adjoint() * m * v;
        dephase_in_basis(ch, n, t);
        m = v * t * v.adjoint();
      }
      m = (m + m.adjoint().eval()) / 2.0;
      return DensityMatrix(std::move(m));
    }
    case Channel::Kind::depolarizing: {
      check_lambda(ch.lambda, d);
      Matrix m = rho_n.entries;
      for (int j = 0; j < n; ++j) depolarize_cell(ch.lambda, d, n, j, m);
      m = (m + m.adjoint().eval()) / 2.0;
      return DensityMatrix(std::move(m));
    }
    case Channel::Kind::replacement: {
      Matrix out = ch.rho0.entries;
      for (int k = 1; k < n; ++k) out = tensor_product(out, ch.rho0.entries);
      return DensityMatrix(std::move(out));
    }
    case Channel::Kind::composed: {
      const Matrix u = kron_power(ch.unitary, n);
      if (ch.unitary_first) {
        DensityMatrix rotated(u * rho_n.entries * u.adjoint());
        return apply_power_impl(*ch.base, n, rotated, h_cell);
      }
      DensityMatrix mid = apply_power_impl(*ch.base, n, rho_n, h_cell);
      Matrix m = u * mid.entries * u.adjoint();
      m = (m + m.adjoint().eval()) / 2.0;
      return DensityMatrix(std::move(m));
    }
  }
  throw validation_error("apply_tensor_power: unknown channel kind");
}

}  // namespace

DensityMatrix apply_dephasing(double kappa, const DensityMatrix& rho,
                              const HermitianOperator& h_basis) {
  Channel ch = Channel::dephasing(kappa, rho.dim);
  return apply_power_impl(ch, 1, rho, h_basis);
}

DensityMatrix apply_depolarizing(double lambda, const DensityMatrix& rho) {
  check_lambda(lambda, rho.dim);
  Matrix m = lambda * rho.entries +
             (1.0 - lambda) / rho.dim * Matrix::Identity(rho.dim, rho.dim);
  return DensityMatrix(std::move(m));
}

DensityMatrix apply_replacement(const DensityMatrix& rho0,
                                const DensityMatrix& rho) {
  if (rho0.dim != rho.dim)
    throw validation_error("apply_replacement: dimension mismatch");
  return rho0;
}

double depolarized_energy(double lambda, double e, int n,
                          const HermitianOperator& h) {
  return lambda * e + (1.0 - lambda) * n * h.entries.trace().real() / h.dim;
}

Channel Channel::dephasing(double kappa, int cell_dim) {
  check_kappa(kappa);
  Channel ch;
  ch.kind = Kind::dephasing;
  ch.cell_dim = cell_dim;
  ch.kappa = kappa;
  return ch;
}

Channel Channel::depolarizing(double lambda, int cell_dim) {
  check_lambda(lambda, cell_dim);
  Channel ch;
  ch.kind = Kind::depolarizing;
  ch.cell_dim = cell_dim;
  ch.lambda = lambda;
  return ch;
}

Channel Channel::replacement(DensityMatrix rho0) {
  Channel ch;
  ch.kind = Kind::replacement;
  ch.cell_dim = rho0.dim;
  ch.rho0 = std::move(rho0);
  return ch;
}

Channel Channel::composed(Channel base, Matrix unitary, bool unitary_first) {
  Channel ch;
  ch.kind = Kind::composed;
  ch.cell_dim = base.cell_dim;
  ch.base = std::make_shared<Channel>(std::move(base));
  ch.unitary = std::move(unitary);
  ch.unitary_first = unitary_first;
  return ch;
}

DensityMatrix Channel::apply(const DensityMatrix& rho,
                             const HermitianOperator& h_cell) const {
  return apply_power_impl(*this, 1, rho, h_cell);
}

DensityMatrix apply_tensor_power(const Channel& ch, int n,
                                 const DensityMatrix& rho_n,
                                 const HermitianOperator& h_cell) {
  return apply_power_impl(ch, n, rho_n, h_cell);
}

}  // namespace ergokit
