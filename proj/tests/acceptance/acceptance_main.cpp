// Acceptance suite: one pass/fail line per benchmark criterion, exit code 0
// only if every criterion holds. Tolerances are pinned here, next to each
// check. Expected runtime is dominated by the split-step runs; on two cores
// the full suite takes roughly 15-25 minutes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "biphoton/analysis.hpp"
#include "biphoton/analytic.hpp"
#include "biphoton/config.hpp"
#include "biphoton/runner.hpp"
#include "biphoton/schemes.hpp"

using namespace biphoton;
using nlohmann::json;

namespace {

int failures = 0;
auto suite_start = std::chrono::steady_clock::now();

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::printf("[%s] criterion %d: %s  (%s)  [t=%.0fs]\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str(), elapsed);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

int hw_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

RunConfig make_run(const json& extra) {
  json root = extra;
  return parse_config(root);
}

// Benchmark runs used by several criteria.
struct AsymmetricResults {
  double purity_none = 0.0;
  double purity_npm = 0.0;
  double purity_gvd_split = 0.0;
  double purity_gvd_hod = 0.0;
  double df_mean = 0.0;
};

}  // namespace

int main() {
  std::printf("benchmark acceptance suite\n");
  AsymmetricResults asym;

  // ------------------------------------------------------------------
  // 1. Asymmetric scheme, no effects: heralded purity 99.1% +- 0.5 abs.
  //    Split-step at n = 1024, dz = 2 cm.
  {
    const RunConfig config = make_run({{"scheme", "asymmetric"},
                                       {"length", "10 m"},
                                       {"seed", 1},
                                       {"solver", {{"dz", "2 cm"}}}});
    const auto t0 = std::chrono::steady_clock::now();
    const RunArtifacts artifacts = execute_run(resolve(config));
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    asym.purity_none = artifacts.report.purity;
    const bool purity_ok = std::abs(artifacts.report.purity - 0.991) <= 0.005;
    const bool rate_ok = std::abs(artifacts.report.pair_probability - 0.2) <= 1e-3 * 0.2;
    const bool runtime_ok = runtime < 600.0;
    report(1, "asymmetric, no effects",
           purity_ok && rate_ok && runtime_ok,
           "P=" + fmt(artifacts.report.purity) + " target 0.991+-0.005, R=" +
               fmt(artifacts.report.pair_probability) + ", runtime " + fmt(runtime) + "s");
  }

  // ------------------------------------------------------------------
  // 2. Asymmetric + NPM at R = 0.2: purity 74.0% +- 3 abs.
  {
    const RunConfig config = make_run({{"scheme", "asymmetric"},
                                       {"length", "10 m"},
                                       {"seed", 1},
                                       {"effects", json::array({"npm"})}});
    const RunArtifacts artifacts = execute_run(resolve(config));
    asym.purity_npm = artifacts.report.purity;
    const bool ok = std::abs(artifacts.report.purity - 0.740) <= 0.03;
    report(2, "asymmetric + NPM", ok,
           "P=" + fmt(artifacts.report.purity) + " target 0.740+-0.03, R=" +
               fmt(artifacts.report.pair_probability) +
               " scale=" + fmt(artifacts.calibration.scale));
  }

  // ------------------------------------------------------------------
  // 3. Asymmetric + GVD: purity 78.3% +- 2 abs from the simulated field
  //    (pump GVD on, beta2 on all fields). The degenerate-pump closed form
  //    cross-checks the solver at fidelity >= 0.995 inside its validity
  //    window beta2 sigma_p^2 L <= 0.5; at the benchmark length that
  //    parameter is 5 and the first-order form underestimates the purity
  //    (converged value 0.757), so it anchors the field comparison, not the
  //    headline number.
  {
    const RunConfig config = make_run({{"scheme", "asymmetric"},
                                       {"length", "10 m"},
                                       {"seed", 1},
                                       {"effects", json::array({"gvd"})},
                                       {"solver", {{"dz", "2 cm"}}}});
    const RunArtifacts artifacts = execute_run(resolve(config));
    asym.purity_gvd_split = artifacts.report.purity;
    const bool purity_ok = std::abs(asym.purity_gvd_split - 0.783) <= 0.02;

    const SchemeSpec spec = asymmetric_scheme(10.0, EffectSet{false, false, true});
    const Grid2D grid = make_grid(1024, 800e-12, 0.5e-11 * 10.0);
    WaveguideSpec wg = spec.wg;
    wg.gamma_sp = wg.gamma_sq = wg.gamma_ip = wg.gamma_iq = 0.0;
    asym.purity_gvd_hod = purity(sample_hod(grid, wg, spec.pumps.p, HodPhase::Textbook));
    // sanity band for the first-order form itself: its converged value sits
    // below the full solution because it ignores the pump-pulse spreading
    // (a wrong beta2 sign convention would push it near 0.59)
    const bool hod_sane = asym.purity_gvd_hod > 0.74 && asym.purity_gvd_hod < 0.79;

    // fidelity cross-check where the first-order solution is valid
    const RunConfig vconfig = make_run({{"scheme", "asymmetric"},
                                        {"length", "1 m"},
                                        {"seed", 1},
                                        {"effects", json::array({"gvd"})},
                                        {"grid", {{"n", 512}, {"time_span", "80 ps"}}},
                                        {"solver", {{"dz", "2.5 mm"}}}});
    const ValidationReport validation =
        execute_validate(resolve(vconfig), ValidationRegime::Hod);
    const bool fidelity_ok = validation.fidelity >= 0.995;
    report(3, "asymmetric + GVD", purity_ok && fidelity_ok && hod_sane,
           "P=" + fmt(asym.purity_gvd_split) + " target 0.783+-0.02, P_eq20=" +
               fmt(asym.purity_gvd_hod) + ", fidelity(L=1m)=" + fmt(validation.fidelity) +
               " >= 0.995");
  }

  // ------------------------------------------------------------------
  // 4. Asymmetric + DF ensemble (sigma_dw = 0.5 sigma_p, Lc = 10 cm),
  //    100 paths: mean purity in [0.85, 0.97], below criterion 1, and the
  //    single-realization benchmark 0.918 inside the 5-95% band.
  {
    const RunConfig config = make_run({{"scheme", "asymmetric"},
                                       {"length", "10 m"},
                                       {"seed", 1},
                                       {"effects", json::array({"df"})},
                                       {"grid", {{"n", 512}, {"time_span", "400 ps"}}},
                                       {"solver", {{"dz", "2.5 cm"}}}});
    const EnsembleResult ensemble = execute_ensemble(resolve(config), 100, hw_threads());
    asym.df_mean = ensemble.mean_purity;
    const bool band_ok = ensemble.mean_purity >= 0.85 && ensemble.mean_purity <= 0.97;
    const bool below_ok = ensemble.mean_purity < asym.purity_none;
    const bool quantile_ok = ensemble.q05 <= 0.918 && 0.918 <= ensemble.q95;
    report(4, "asymmetric + DF ensemble", band_ok && below_ok && quantile_ok,
           "mean=" + fmt(ensemble.mean_purity) + " in [0.85,0.97], q05=" +
               fmt(ensemble.q05) + " q95=" + fmt(ensemble.q95) + " contain 0.918");
  }

  // ------------------------------------------------------------------
  // 5. Collision scheme, L >= 0.6 m: every single effect stays within 2 abs
  //    percentage points of the no-effect curve and above the asymmetric
  //    scheme's purity under the same effect.
  {
    const std::vector<double> lengths = {0.6, 0.8, 1.0};
    auto sweep_for = [&](json effects) {
      json root = {{"scheme", "collision"},
                   {"seed", 1},
                   {"effects", effects},
                   {"solver", {{"dz", "2 mm"}}}};
      return execute_sweep(parse_config(root), lengths, hw_threads());
    };
    const auto none = sweep_for(json::array({}));
    const auto gvd = sweep_for(json::array({"gvd"}));
    const auto npm = sweep_for(json::array({"npm"}));

    // DF rows as small ensembles (a single realization would be seed noise)
    std::vector<double> df_means;
    for (double length : lengths) {
      const RunConfig config = make_run({{"scheme", "collision"},
                                         {"length", json(std::to_string(length) + " m")},
                                         {"seed", 1},
                                         {"effects", json::array({"df"})},
                                         {"solver", {{"dz", "2 mm"}}}});
      const EnsembleResult ensemble = execute_ensemble(resolve(config), 16, hw_threads());
      df_means.push_back(ensemble.mean_purity);
    }

    bool ok = true;
    double worst_gvd = 0.0, worst_npm = 0.0, worst_df = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      const double base = none[i].purity;
      worst_gvd = std::max(worst_gvd, std::abs(gvd[i].purity - base));
      worst_npm = std::max(worst_npm, std::abs(npm[i].purity - base));
      worst_df = std::max(worst_df, std::abs(df_means[i] - base));
      ok = ok && gvd[i].purity > asym.purity_gvd_split;
      ok = ok && npm[i].purity > asym.purity_npm;
      ok = ok && df_means[i] > asym.df_mean;
    }
    ok = ok && worst_gvd <= 0.02 && worst_npm <= 0.02 && worst_df <= 0.02;
    report(5, "collision robustness for L >= 0.6 m", ok,
           "max |dP| vs no-effect: gvd=" + fmt(worst_gvd) + " npm=" + fmt(worst_npm) +
               " df=" + fmt(worst_df) + " (band 0.02); all above asymmetric counterparts");
  }

  // ------------------------------------------------------------------
  // 6. Asymmetric + NPM purity vs length has an interior maximum. Each
  //    length gets a grid sized for its own walk-off window and NPM
  //    bandwidth (the chirp grows with sqrt(L) at fixed pair rate).
  {
    auto npm_purity_at = [&](double length, int n, double span_ps) {
      const RunConfig config =
          make_run({{"scheme", "asymmetric"},
                    {"length", json(std::to_string(length) + " m")},
                    {"seed", 1},
                    {"effects", json::array({"npm"})},
                    {"grid", {{"n", n}, {"time_span", json(std::to_string(span_ps) + " ps")}}}});
      return execute_run(resolve(config)).report.purity;
    };
    const double p_short = npm_purity_at(0.5, 256, 32.0);
    const double p_mid = npm_purity_at(1.5, 512, 60.0);
    const double p_long = npm_purity_at(6.0, 1024, 240.0);
    const bool ok = p_mid > p_short && p_mid > p_long;
    report(6, "asymmetric + NPM interior optimum", ok,
           "P(0.5m)=" + fmt(p_short) + " P(1.5m)=" + fmt(p_mid) + " P(6m)=" + fmt(p_long));
  }

  // ------------------------------------------------------------------
  // 7. Oracle equivalence on a 512^2 grid: split-step vs the closed-form
  //    no-GVD solution (NPM + DF on): fidelity >= 0.999, |dP| <= 0.002.
  {
    const RunConfig config = make_run({{"scheme", "collision"},
                                       {"length", "1 m"},
                                       {"seed", 2},
                                       {"effects", json::array({"npm", "df"})},
                                       {"grid", {{"n", 512}, {"time_span", "80 ps"}}},
                                       {"solver", {{"dz", "2 mm"}}}});
    const ValidationReport validation =
        execute_validate(resolve(config), ValidationRegime::NoGvd);
    const bool ok = validation.fidelity >= 0.999 && validation.purity_delta <= 0.002;
    report(7, "split-step vs closed form (no GVD)", ok,
           "fidelity=" + fmt(validation.fidelity) + " >= 0.999, dP=" +
               fmt(validation.purity_delta) + " <= 0.002");
  }

  // ------------------------------------------------------------------
  // 8. Convergence order: dz halvings shrink the error against a Richardson
  //    reference by factors in [3, 5] (all effects on).
  {
    const RunConfig config = make_run({{"scheme", "collision"},
                                       {"length", "1 m"},
                                       {"seed", 3},
                                       {"effects", json::array({"npm", "gvd", "df"})},
                                       {"grid", {{"n", 256}, {"time_span", "80 ps"}}},
                                       {"solver", {{"dz", "1.6 cm"}}}});
    ResolvedRun run = resolve(config);

    std::optional<MismatchPath> path;
    {
      // frozen disorder realization shared by every step size
      FluctuationModel model = run.spec.fluctuations;
      model.seed = run.seed;
      const auto [n_steps, dz_actual] = solver_steps(run.spec.wg.length, run.spec.solver.dz);
      std::vector<double> z(2 * n_steps + 1);
      for (int k = 0; k <= 2 * n_steps; ++k) z[k] = k * (0.5 * dz_actual);
      z.back() = run.spec.wg.length;
      path = sample_path(model, z);
    }
    WaveguideSpec wg = run.spec.wg;
    wg.fluctuation_path = path;

    std::vector<ComplexMatrix> fields;
    for (double dz : {0.016, 0.008, 0.004, 0.002, 0.001}) {
      SolverConfig solver = run.spec.solver;
      solver.dz = dz;
      fields.push_back(propagate(wg, run.spec.pumps, solver, run.grid).field.values);
    }
    const ComplexMatrix reference = (4.0 * fields[4] - fields[3]) / 3.0;
    std::vector<double> errors;
    for (int k = 0; k < 3; ++k)
      errors.push_back((fields[k] - reference).norm() / reference.norm());
    const double r1 = errors[0] / errors[1];
    const double r2 = errors[1] / errors[2];
    const bool ok = r1 >= 3.0 && r1 <= 5.0 && r2 >= 3.0 && r2 <= 5.0;
    report(8, "second-order convergence in dz", ok,
           "ratios " + fmt(r1) + ", " + fmt(r2) + " in [3,5]");
  }

  // ------------------------------------------------------------------
  // 9. Property suite: norms, Parseval, separable purity, OU statistics,
  //    thread-count determinism.
  {
    bool ok = true;
    std::string detail;

    // norm preservation of linear and nonlinear steps over a propagation
    {
      const Grid2D grid = make_grid(128, 64e-12, 5e-12);
      SchemeSpec spec = collision_scheme(1.0, EffectSet{false, true, true});
      JointAmplitude field = make_vacuum(grid, Domain::Frequency);
      for (int ji = 0; ji < grid.n; ++ji)
        for (int js = 0; js < grid.n; ++js)
          field.values(js, ji) =
              Complex(std::sin(0.1 * js + 0.2 * ji), std::cos(0.3 * js - 0.1 * ji));
      SolverConfig solver = spec.solver;
      solver.dz = 0.01;
      solver.scattering = false;
      const PropagationResult result =
          propagate(spec.wg, spec.pumps, solver, grid, &field);
      const double drift =
          std::abs(result.field.values.norm() / field.values.norm() - 1.0);
      ok = ok && drift < 1e-10;
      detail += "norm drift " + fmt(drift * 1e10) + "e-10";
    }

    // Parseval on a random field
    {
      const Grid2D grid = make_grid(128, 64e-12);
      JointAmplitude a = make_vacuum(grid, Domain::Time);
      for (int ji = 0; ji < grid.n; ++ji)
        for (int js = 0; js < grid.n; ++js)
          a.values(js, ji) = Complex(std::sin(1.7 * js * ji + 0.4), std::cos(0.9 * js - ji));
      const double r_time = pair_probability(a);
      const double r_freq = pair_probability(to_frequency(a));
      const double err = std::abs(r_time - r_freq) / r_time;
      ok = ok && err < 1e-10;
      detail += ", parseval " + fmt(err * 1e10) + "e-10";
    }

    // separable state: purity 1 within 1e-10
    {
      const Grid2D grid = make_grid(256, 64e-12);
      JointAmplitude a = make_vacuum(grid, Domain::Time);
      for (int ji = 0; ji < grid.n; ++ji)
        for (int js = 0; js < grid.n; ++js) {
          const double ts = grid.time_at(js), ti = grid.time_at(ji);
          a.values(js, ji) = std::exp(-ts * ts / 8e-24) * std::exp(-ti * ti / 2e-24) *
                             std::polar(1.0, 1e12 * (ts + 0.5 * ti));
        }
      const double p = purity(a);
      ok = ok && std::abs(p - 1.0) < 1e-10;
      detail += ", sep purity 1-" + fmt((1.0 - p) * 1e10) + "e-10";
    }

    // OU statistics over 1e4 paths
    {
      const double sigma_dw = 5e11, corr = 0.1, slope = 1e-11;
      const int n_paths = 10000, lag = 5;
      std::vector<double> grid_z(51);
      for (int k = 0; k < 51; ++k) grid_z[k] = k * 0.02;
      double worst_std = 0.0, corr_acc = 0.0;
      long corr_count = 0;
      std::vector<double> sum_sq(grid_z.size(), 0.0);
      for (int p = 0; p < n_paths; ++p) {
        FluctuationModel model{sigma_dw, corr, static_cast<std::uint64_t>(p + 1), slope};
        const MismatchPath path = sample_path(model, grid_z);
        for (std::size_t k = 0; k < grid_z.size(); ++k)
          sum_sq[k] += path.delta_beta0[k] * path.delta_beta0[k];
        for (std::size_t k = 0; k + lag < grid_z.size(); ++k) {
          corr_acc += path.delta_beta0[k] * path.delta_beta0[k + lag];
          ++corr_count;
        }
      }
      const double target = sigma_dw * slope;
      for (double s : sum_sq)
        worst_std = std::max(worst_std, std::abs(std::sqrt(s / n_paths) / target - 1.0));
      const double autocorr = corr_acc / corr_count / (target * target);
      const bool std_ok = worst_std < 0.05;
      const bool corr_ok = std::abs(autocorr / std::exp(-1.0) - 1.0) < 0.10;
      ok = ok && std_ok && corr_ok;
      detail += ", OU std dev " + fmt(worst_std) + ", autocorr " + fmt(autocorr);
    }

    // determinism across thread counts, byte-identical payloads
    {
      json root = {{"scheme", "collision"},
                   {"length", "1 m"},
                   {"seed", 9},
                   {"effects", json::array({"df"})},
                   {"grid", {{"n", 128}, {"time_span", "64 ps"}}},
                   {"solver", {{"dz", "1 cm"}}}};
      const RunConfig base = parse_config(root);
      const std::vector<double> lengths = {0.5, 0.75, 1.0};
      const auto serial = execute_sweep(base, lengths, 1);
      const auto threaded = execute_sweep(base, lengths, hw_threads());
      std::string csv_a = sweep_csv(serial, "x"), csv_b = sweep_csv(threaded, "x");
      // strip the runtime column (wall clock, exempt from determinism)
      auto strip = [](std::string text) {
        std::string out;
        for (std::size_t pos = 0; pos < text.size();) {
          const std::size_t eol = text.find('\n', pos);
          const std::string line = text.substr(pos, eol - pos);
          const std::size_t comma = line.rfind(',');
          out += line.substr(0, comma);
          out += '\n';
          pos = eol + 1;
        }
        return out;
      };
      ok = ok && strip(csv_a) == strip(csv_b);
      detail += std::string(", determinism ") + (strip(csv_a) == strip(csv_b) ? "ok" : "FAIL");
    }

    report(9, "property suite", ok, detail);
  }

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "SUCCESS" : "FAILURE",
              failures);
  return failures == 0 ? 0 : 1;
}
