// Compares the OpenMP multi-start kernels against the serial reference path
// (SearchConfig::parallel = false) and checks that both return identical
// values.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "ergokit/channels.hpp"
#include "ergokit/search.hpp"
#include "ergokit/types.hpp"

using namespace ergokit;

namespace {

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  const HermitianOperator h = HermitianOperator::qubit_cell();
  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]",
              "speedup");

  {
    const Channel ch = Channel::dephasing(0.6);
    EnergyShell shell{3, 1.3, ShellMode::exact};
    SearchConfig cfg;
    cfg.starts = 64;
    double v_ser = 0.0, v_par = 0.0;
    SearchConfig ser = cfg;
    ser.parallel = false;
    const double ts =
        timed([&] { v_ser = max_output_functional(ch, h, shell, ser).value; });
    const double tp =
        timed([&] { v_par = max_output_functional(ch, h, shell, cfg).value; });
    std::printf("%-34s %10.3f %10.3f %8.2f\n", "multi-start search (n=3)", ts,
                tp, ts / tp);
    if (std::abs(v_ser - v_par) > 1e-12) {
      std::fprintf(stderr, "serial/parallel mismatch: %.15g vs %.15g\n", v_ser,
                   v_par);
      return 1;
    }
  }

  {
    const Channel ch = Channel::depolarizing(0.5);
    EnergyShell shell{2, 1.0, ShellMode::exact};
    SearchConfig cfg;
    double v_ser = 0.0, v_par = 0.0;
    SearchConfig ser = cfg;
    ser.parallel = false;
    const long samples = 20000;
    const double ts = timed(
        [&] { v_ser = brute_force_shell_oracle(ch, h, shell, ser, samples); });
    const double tp = timed(
        [&] { v_par = brute_force_shell_oracle(ch, h, shell, cfg, samples); });
    std::printf("%-34s %10.3f %10.3f %8.2f\n", "oracle sampling (n=2, 2e4)",
                ts, tp, ts / tp);
    if (std::abs(v_ser - v_par) > 1e-12) {
      std::fprintf(stderr, "serial/parallel mismatch: %.15g vs %.15g\n", v_ser,
                   v_par);
      return 1;
    }
  }

  return 0;
}
