// ergo: command-line front end for the ergokit library. Emits CSV/JSON data
// and minimal SVG plots for work-extraction figures and tables.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "ergokit/asymptotics.hpp"
#include "ergokit/channels.hpp"
#include "ergokit/core.hpp"
#include "ergokit/io.hpp"
#include "ergokit/search.hpp"
#include "ergokit/work.hpp"

using namespace ergokit;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConverged = 3;

struct CommonOpts {
  std::string out = ".";
  std::vector<std::string> formats = {"csv", "json", "svg"};
  int threads = 0;
  int starts = 0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out, "Output directory (default: .)");
  cmd->add_option("--format", c.formats,
                  "Output formats, any of csv json svg (default: all)")
      ->delimiter(',');
  cmd->add_option("--threads", c.threads,
                  "Worker threads (default: ERGOKIT_THREADS env var, else "
                  "available parallelism)");
  cmd->add_option("--starts", c.starts,
                  "Optimizer starts per grid point (default: by n)");
  cmd->add_option("--seed", c.seed, "Random seed (default: 0)");
}

void apply_threads(const CommonOpts& c) {
  int t = c.threads;
  if (t <= 0) {
    if (const char* env = std::getenv("ERGOKIT_THREADS")) t = std::atoi(env);
  }
#ifdef _OPENMP
  if (t > 0) omp_set_num_threads(t);
#else
  (void)t;
#endif
}

bool wants(const CommonOpts& c, const std::string& fmt) {
  for (const auto& f : c.formats)
    if (f == fmt) return true;
  return false;
}

std::string out_path(const CommonOpts& c, const std::string& name) {
  if (c.out.empty() || c.out == ".") return name;
  return c.out + "/" + name;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
  return g;
}

HermitianOperator spectrum_hamiltonian(int dim,
                                       const std::vector<double>& spectrum) {
  if (!spectrum.empty()) {
    RealVector s(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) s(i) = spectrum[i];
    return HermitianOperator::cell_hamiltonian(s);
  }
  RealVector s(dim);
  for (int i = 0; i < dim; ++i) s(i) = dim == 1 ? 0.0 : double(i) / (dim - 1);
  return HermitianOperator::cell_hamiltonian(s);
}

// --- report ---------------------------------------------------------------

int cmd_report(const std::string& state_file, const std::string& ham_file,
               double beta, const CommonOpts& c) {
  const Matrix rho_m = matrix_from_json(json::parse(read_text_file(state_file)));
  const Matrix h_m = matrix_from_json(json::parse(read_text_file(ham_file)));
  const DensityMatrix rho(rho_m);
  const HermitianOperator h(h_m, HermitianOperator::Role::hamiltonian);
  const WorkReport rep = make_work_report(rho, h, beta);
  const std::string text = work_report_to_json(rep).dump(2) + "\n";
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path(c, "report.json"), text);
    std::cout << "wrote " << out_path(c, "report.json") << "\n";
  }
  return kExitOk;
}

// --- fig-dephasing ----------------------------------------------------------

int cmd_fig_dephasing(int n, int grid, const CommonOpts& c) {
  if (n != 1 && n != 2) throw validation_error("fig-dephasing: n must be 1 or 2");
  apply_threads(c);
  const HermitianOperator h = HermitianOperator::qubit_cell();
  const auto kappas = linspace(0.0, 1.0, grid);
  const auto energies = linspace(0.0, double(n), grid);

  std::ostringstream csv;
  csv << "kappa,E,value" << (n == 2 ? ",separable,boost,converged" : "")
      << "\n";
  json rows = json::array();
  std::vector<std::vector<double>> surface(grid, std::vector<double>(grid));
  std::vector<std::vector<double>> boost_map;
  if (n == 2) boost_map.assign(grid, std::vector<double>(grid, 0.0));
  bool all_converged = true;

  for (int r = 0; r < grid; ++r) {
    const double e = energies[r];
    for (int col = 0; col < grid; ++col) {
      const double kappa = kappas[col];
      if (n == 1) {
        const double disc = 1.0 - 4.0 * kappa * e * (1.0 - e);
        const double v = e - 0.5 * (1.0 - std::sqrt(std::max(disc, 0.0)));
        surface[r][col] = v;
        csv << format_number(kappa) << ',' << format_number(e) << ','
            << format_number(v) << '\n';
        rows.push_back({{"kappa", kappa}, {"E", e}, {"value", v}});
      } else {
        const Channel ch = Channel::dephasing(kappa);
        EnergyShell shell{2, e, ShellMode::exact};
        SearchConfig cfg;
        cfg.starts = c.starts;
        cfg.seed = c.seed;
        cfg.upper_bound = e;  // dephasing preserves energy
        const SearchResult g = max_output_functional(ch, h, shell, cfg);
        const SearchResult s = max_output_separable(ch, h, shell, cfg);
        const double boost = g.value - s.value;
        surface[r][col] = g.value;
        boost_map[r][col] = boost;
        if (!g.converged || !s.converged) all_converged = false;
        csv << format_number(kappa) << ',' << format_number(e) << ','
            << format_number(g.value) << ',' << format_number(s.value) << ','
            << format_number(boost) << ',' << (g.converged && s.converged)
            << '\n';
        rows.push_back({{"kappa", kappa},
                        {"E", e},
                        {"value", g.value},
                        {"separable", s.value},
                        {"boost", boost},
                        {"converged", g.converged && s.converged}});
      }
    }
  }

  const std::string stem = "fig_dephasing_n" + std::to_string(n);
  if (wants(c, "csv")) write_text_file(out_path(c, stem + ".csv"), csv.str());
  if (wants(c, "json"))
    write_text_file(out_path(c, stem + ".json"), json(rows).dump(2) + "\n");
  if (wants(c, "svg")) {
    write_text_file(
        out_path(c, stem + ".svg"),
        svg_heatmap(surface, 0.0, 1.0, 0.0, double(n), "kappa", "E",
                    "max output ergotropy, n=" + std::to_string(n)));
    if (n == 2)
      write_text_file(out_path(c, stem + "_boost.svg"),
                      svg_heatmap(boost_map, 0.0, 1.0, 0.0, 2.0, "kappa", "E",
                                  "entanglement boost (global - separable)"));
  }
  std::cout << "fig-dephasing n=" << n << ": " << grid << "x" << grid
            << " grid written to " << c.out << "\n";
  return all_converged ? kExitOk : kExitNonConverged;
}

// --- fig-halffill -----------------------------------------------------------

int cmd_fig_halffill(int n_max, const CommonOpts& c) {
  if (n_max < 1 || n_max > 9)
    throw validation_error("fig-halffill: n max must be in 1..9");
  apply_threads(c);
  const HermitianOperator h = HermitianOperator::qubit_cell();
  std::ostringstream csv;
  csv << "n,value\n";
  json rows = json::array();
  SvgSeries series{"half-filling rate", {}, {}};
  for (int n = 1; n <= n_max; ++n) {
    double v;
    if (n % 2 == 0) {
      v = 1.0;  // integer-energy saturation at E = n/2
    } else {
      v = full_dephasing_diagonal_solver(n, 0.5 * n, h) / (0.5 * n);
    }
    csv << n << ',' << format_number(v) << '\n';
    rows.push_back({{"n", n}, {"value", v}});
    series.x.push_back(n);
    series.y.push_back(v);
  }
  if (wants(c, "csv")) write_text_file(out_path(c, "fig_halffill.csv"), csv.str());
  if (wants(c, "json"))
    write_text_file(out_path(c, "fig_halffill.json"),
                    json(rows).dump(2) + "\n");
  if (wants(c, "svg"))
    write_text_file(out_path(c, "fig_halffill.svg"),
                    svg_line_plot({series}, "n", "normalized work",
                                  "complete dephasing at half filling"));
  std::cout << "fig-halffill: n=1.." << n_max << " written to " << c.out
            << "\n";
  return kExitOk;
}

// --- fig-depolarizing -------------------------------------------------------

int cmd_fig_depolarizing(int dim, const std::vector<double>& spectrum,
                         int grid, const CommonOpts& c) {
  apply_threads(c);
  const HermitianOperator h = spectrum_hamiltonian(dim, spectrum);
  const double lo = depolarizing_lambda_min(h.dim);
  const auto lambdas = linspace(lo, 1.0, grid);
  const auto efracs = linspace(0.0, 1.0, grid);

  std::ostringstream csv;
  csv << "lambda,e,ergotropy,total\n";
  json rows = json::array();
  std::vector<std::vector<double>> erg(grid, std::vector<double>(grid));
  std::vector<std::vector<double>> tot(grid, std::vector<double>(grid));
  for (int r = 0; r < grid; ++r) {
    const double e = efracs[r];
    for (int col = 0; col < grid; ++col) {
      const double l = lambdas[col];
      const double v_erg =
          depolarizing_single_site(l, e, h, DepolVariant::ergotropy_at_most);
      const double v_tot =
          depolarizing_single_site(l, e, h, DepolVariant::total_at_most);
      erg[r][col] = v_erg;
      tot[r][col] = v_tot;
      csv << format_number(l) << ',' << format_number(e) << ','
          << format_number(v_erg) << ',' << format_number(v_tot) << '\n';
      rows.push_back(
          {{"lambda", l}, {"e", e}, {"ergotropy", v_erg}, {"total", v_tot}});
    }
  }
  if (wants(c, "csv"))
    write_text_file(out_path(c, "fig_depolarizing.csv"), csv.str());
  if (wants(c, "json"))
    write_text_file(out_path(c, "fig_depolarizing.json"),
                    json(rows).dump(2) + "\n");
  if (wants(c, "svg")) {
    write_text_file(out_path(c, "fig_depolarizing_erg.svg"),
                    svg_heatmap(erg, lo, 1.0, 0.0, 1.0, "lambda", "e",
                                "single-site max output ergotropy"));
    write_text_file(out_path(c, "fig_depolarizing_tot.svg"),
                    svg_heatmap(tot, lo, 1.0, 0.0, 1.0, "lambda", "e",
                                "single-site max output total ergotropy"));
  }
  std::cout << "fig-depolarizing d=" << h.dim << ": " << grid << "x" << grid
            << " grid written to " << c.out << "\n";
  return kExitOk;
}

// --- capacitance / mawer ----------------------------------------------------

struct ChannelOpts {
  double kappa = -1.0;
  double lambda = -10.0;
  int dim = 2;
  std::vector<double> spectrum;
};

Channel channel_from_opts(const ChannelOpts& co, const HermitianOperator& h) {
  const bool has_kappa = co.kappa >= 0.0;
  const bool has_lambda = co.lambda > -9.0;
  if (has_kappa == has_lambda)
    throw validation_error("pass exactly one of --kappa or --lambda");
  if (has_kappa) return Channel::dephasing(co.kappa, h.dim);
  return Channel::depolarizing(co.lambda, h.dim);
}

int cmd_capacitance(const ChannelOpts& co, std::vector<double> efracs,
                    double beta, const CommonOpts& c) {
  const HermitianOperator h = spectrum_hamiltonian(co.dim, co.spectrum);
  const Channel ch = channel_from_opts(co, h);
  if (efracs.empty()) efracs = linspace(0.0, 1.0, 11);

  std::vector<CapacitancePoint> points;
  double param = 0.0;
  std::string name;
  if (ch.kind == Channel::Kind::dephasing) {
    param = ch.kappa;
    name = "dephasing";
    for (double e : efracs) {
      auto pts = dephasing_capacitances(ch.kappa, e);
      points.insert(points.end(), pts.begin(), pts.end());
      if (beta > 0.0)
        points.push_back(
            {"C_beta", e,
             dephasing_free_energy_capacitance(ch.kappa, e, beta, h),
             "closed_form"});
    }
  } else {
    param = ch.lambda;
    name = "depolarizing";
    for (double e : efracs) {
      auto pts = depolarizing_capacitances(ch.lambda, e, h, beta);
      points.insert(points.end(), pts.begin(), pts.end());
    }
  }

  const std::string csv = capacitance_csv(name, param, points);
  json rows = json::array();
  for (const auto& p : points)
    rows.push_back({{"channel", name},
                    {"param", param},
                    {"functional", p.functional},
                    {"e", p.e},
                    {"value", p.value},
                    {"provenance", p.provenance}});
  if (wants(c, "csv")) write_text_file(out_path(c, "capacitance.csv"), csv);
  if (wants(c, "json"))
    write_text_file(out_path(c, "capacitance.json"),
                    json(rows).dump(2) + "\n");
  std::cout << csv;
  return kExitOk;
}

int cmd_mawer(const ChannelOpts& co, const CommonOpts& c) {
  const HermitianOperator h = spectrum_hamiltonian(co.dim, co.spectrum);
  const Channel ch = channel_from_opts(co, h);
  const MawerValue m = mawer(ch);
  const std::string name =
      ch.kind == Channel::Kind::dephasing ? "dephasing" : "depolarizing";
  const double param =
      ch.kind == Channel::Kind::dephasing ? ch.kappa : ch.lambda;
  json j{{"channel", name},
         {"param", param},
         {"dim", h.dim},
         {"infinite", m.infinite}};
  if (!m.infinite) j["value"] = m.value;
  if (wants(c, "json"))
    write_text_file(out_path(c, "mawer.json"), j.dump(2) + "\n");
  if (wants(c, "csv")) {
    std::ostringstream os;
    os << "channel,param,dim,mawer\n"
       << name << ',' << format_number(param) << ',' << h.dim << ','
       << (m.infinite ? std::string("infinity") : format_number(m.value))
       << '\n';
    write_text_file(out_path(c, "mawer.csv"), os.str());
  }
  std::cout << "MAWER(" << name << ") = "
            << (m.infinite ? std::string("infinity") : format_number(m.value))
            << "\n";
  return kExitOk;
}

// --- rate-sequence ----------------------------------------------------------

int cmd_rate_sequence(const ChannelOpts& co, double efrac, int n_max,
                      const CommonOpts& c) {
  if (n_max < 1 || n_max > 8)
    throw validation_error("rate-sequence: n max must be in 1..8");
  apply_threads(c);
  const HermitianOperator h = spectrum_hamiltonian(co.dim, co.spectrum);
  const Channel ch = channel_from_opts(co, h);
  SearchConfig cfg;
  cfg.starts = c.starts;
  cfg.seed = c.seed;
  const auto rates = rate_sequence(ch, h, efrac, n_max, cfg);

  std::ostringstream csv;
  csv << "n,rate\n";
  json rows = json::array();
  SvgSeries series{"w^(n)", {}, {}};
  for (const auto& r : rates) {
    csv << r.n << ',' << format_number(r.w) << '\n';
    rows.push_back({{"n", r.n}, {"rate", r.w}});
    series.x.push_back(r.n);
    series.y.push_back(r.w);
  }
  if (wants(c, "csv"))
    write_text_file(out_path(c, "rate_sequence.csv"), csv.str());
  if (wants(c, "json"))
    write_text_file(out_path(c, "rate_sequence.json"),
                    json(rows).dump(2) + "\n");
  if (wants(c, "svg"))
    write_text_file(out_path(c, "rate_sequence.svg"),
                    svg_line_plot({series}, "n", "work per cell",
                                  "numeric work rates"));
  std::cout << csv.str();
  return kExitOk;
}

// --- replacement-demo -------------------------------------------------------

int cmd_replacement_demo(std::vector<double> populations,
                         std::vector<double> spectrum, const CommonOpts& c) {
  if (populations.empty()) populations = {0.5, 0.3, 0.2};
  if (spectrum.empty()) spectrum = {0.0, 0.5, 1.0};
  if (populations.size() != spectrum.size())
    throw validation_error(
        "replacement-demo: populations and spectrum sizes differ");
  const int d = static_cast<int>(populations.size());
  const HermitianOperator h = spectrum_hamiltonian(d, spectrum);
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = populations[i];
  const DensityMatrix rho0(m);
  const ReplacementGapReport rep = replacement_gap_demo(rho0, h);
  json j{{"ergotropy_rho0", rep.ergotropy_rho0},
         {"total_ergotropy_rho0", rep.total_ergotropy_rho0},
         {"gap", rep.gap},
         {"C_loc", rep.c_loc},
         {"C_sep_loc", rep.c_sep_loc},
         {"C_E", rep.c_e},
         {"C_sep", rep.c_sep},
         {"C_loc_tot", rep.c_loc_tot},
         {"C_sep_loc_tot", rep.c_sep_loc_tot}};
  if (wants(c, "json"))
    write_text_file(out_path(c, "replacement_demo.json"), j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ergokit: work-extraction functionals of noisy quantum batteries"};
  app.require_subcommand(1);

  CommonOpts common;
  int grid = 101;  // default grid resolution, points per axis
  int n = 1;
  double beta = 0.0, efrac = 0.5;
  std::string state_file, ham_file;
  ChannelOpts co;
  std::vector<double> efracs, populations, spectrum;

  auto* report = app.add_subcommand(
      "report", "Work functionals of a state/Hamiltonian pair");
  report->add_option("--state", state_file, "Density matrix JSON file")
      ->required();
  report->add_option("--hamiltonian", ham_file, "Hamiltonian JSON file")
      ->required();
  report->add_option("--beta", beta, "Inverse temperature (required, > 0)")
      ->required();
  add_common(report, common);

  auto* figd = app.add_subcommand(
      "fig-dephasing",
      "Max output ergotropy over a (kappa, E) grid; n=1 closed form, n=2 "
      "optimizer + entanglement-boost map");
  figd->add_option("--n", n, "Cells: 1 or 2 (default 1)");
  figd->add_option("--grid", grid, "Points per axis (default 101)");
  add_common(figd, common);

  int n_max = 7;
  auto* figh = app.add_subcommand(
      "fig-halffill",
      "Normalized complete-dephasing work at half filling for n=1..n_max");
  figh->add_option("--n", n_max, "Largest n (default 7, max 9)");
  add_common(figh, common);

  auto* figp = app.add_subcommand(
      "fig-depolarizing",
      "Single-site max output (total) ergotropy over a (lambda, e) grid");
  figp->add_option("--dim", co.dim, "Cell dimension (default 2)");
  figp->add_option("--spectrum", spectrum,
                   "Cell spectrum, ascending, first 0 last 1 (default equally "
                   "spaced)")
      ->delimiter(',');
  figp->add_option("--grid", grid, "Points per axis (default 101)");
  add_common(figp, common);

  auto* cap = app.add_subcommand(
      "capacitance", "Closed-form work capacitance table over an e grid");
  cap->add_option("--kappa", co.kappa, "Dephasing strength in [0, 1]");
  cap->add_option("--lambda", co.lambda, "Depolarizing parameter");
  cap->add_option("--dim", co.dim, "Cell dimension (default 2)");
  cap->add_option("--spectrum", spectrum, "Cell spectrum (default equally "
                  "spaced)")->delimiter(',');
  cap->add_option("--efrac", efracs,
                  "Energy fractions (default: 11-point grid on [0, 1])")
      ->delimiter(',');
  cap->add_option("--beta", beta,
                  "Inverse temperature for the free-energy capacitance "
                  "(omitted when <= 0)");
  add_common(cap, common);

  auto* maw = app.add_subcommand("mawer",
                                 "Maximal asymptotic work/energy ratio");
  maw->add_option("--kappa", co.kappa, "Dephasing strength in [0, 1]");
  maw->add_option("--lambda", co.lambda, "Depolarizing parameter");
  maw->add_option("--dim", co.dim, "Cell dimension (default 2)");
  add_common(maw, common);

  auto* rate = app.add_subcommand(
      "rate-sequence",
      "Numeric per-cell work rates w^(n) on the at-most shell, n=1..n_max");
  rate->add_option("--kappa", co.kappa, "Dephasing strength in [0, 1]");
  rate->add_option("--lambda", co.lambda, "Depolarizing parameter");
  rate->add_option("--dim", co.dim, "Cell dimension (default 2)");
  rate->add_option("--spectrum", spectrum, "Cell spectrum (default equally "
                   "spaced)")->delimiter(',');
  rate->add_option("--efrac", efrac, "Energy fraction e (default 0.5)");
  rate->add_option("--n", n_max, "Largest n (default 4, max 8)")
      ->default_val(4);
  add_common(rate, common);

  auto* repl = app.add_subcommand(
      "replacement-demo",
      "Replacement-channel gap between local and total-ergotropy "
      "capacitances");
  repl->add_option("--populations", populations,
                   "Diagonal populations of rho0 (default 0.5,0.3,0.2)")
      ->delimiter(',');
  repl->add_option("--spectrum", spectrum,
                   "Cell spectrum (default 0,0.5,1)")->delimiter(',');
  add_common(repl, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    co.spectrum = spectrum;
    if (report->parsed()) return cmd_report(state_file, ham_file, beta, common);
    if (figd->parsed()) return cmd_fig_dephasing(n, grid, common);
    if (figh->parsed()) return cmd_fig_halffill(n_max, common);
    if (figp->parsed())
      return cmd_fig_depolarizing(co.dim, spectrum, grid, common);
    if (cap->parsed()) return cmd_capacitance(co, efracs, beta, common);
    if (maw->parsed()) return cmd_mawer(co, common);
    if (rate->parsed()) return cmd_rate_sequence(co, efrac, n_max, common);
    if (repl->parsed())
      return cmd_replacement_demo(populations, spectrum, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
