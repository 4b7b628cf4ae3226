#include "ergokit/optim.hpp"

#include <algorithm>
#include <cmath>

namespace ergokit {

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, const NmOptions& opt) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<std::vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (int i = 0; i < n; ++i) xs[i + 1][i] += opt.init_step;
  for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);

  std::vector<int> order(n + 1);
  NmResult res;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    if (std::abs(fs[worst] - fs[best]) <=
        opt.tol * (1.0 + std::abs(fs[best]))) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int j = 0; j < n; ++j) centroid[j] += xs[i][j];
    }
    for (int j = 0; j < n; ++j) centroid[j] /= n;

    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j)
        x[j] = centroid[j] + t * (centroid[j] - xs[worst][j]);
      return x;
    };

    std::vector<double> xr = blend(alpha);
    const double fr = f(xr);
    if (fr < fs[best]) {
      std::vector<double> xe = blend(gamma);
      const double fe = f(xe);
      if (fe < fr) {
        xs[worst] = std::move(xe);
        fs[worst] = fe;
      } else {
        xs[worst] = std::move(xr);
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      xs[worst] = std::move(xr);
      fs[worst] = fr;
    } else {
      std::vector<double> xc = blend(fr < fs[worst] ? rho : -rho);
      const double fc = f(xc);
      if (fc < std::min(fr, fs[worst])) {
        xs[worst] = std::move(xc);
        fs[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int j = 0; j < n; ++j)
            xs[i][j] = xs[best][j] + sigma * (xs[i][j] - xs[best][j]);
          fs[i] = f(xs[i]);
        }
      }
    }
  }

  int ibest = 0;
  for (int i = 1; i <= n; ++i)
    if (fs[i] < fs[ibest]) ibest = i;
  res.x = xs[ibest];
  res.value = fs[ibest];
  res.iterations = it;
  return res;
}

}  // namespace ergokit
