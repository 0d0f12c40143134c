// Batch front-end for the 2D MHD spectral simulator and its
// proof-diagnostics suites.
//
// Exit codes: 0 ok, 2 invalid config, 3 blow-up abort, 4 I/O failure,
// 5 resonant background without --allow-resonant.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhd2d/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitIo = 4;
constexpr int kExitCertificate = 5;

mhd2d::RunConfig load_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
  mhd2d::RunConfig cfg;
  if (!config_path.empty())
    cfg = mhd2d::config_from_entries(mhd2d::read_config_entries(config_path));
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw mhd2d::ConfigError("override is not key=value: " + kv);
    mhd2d::apply_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

int run_simulate(const std::string& config_path,
                 const std::vector<std::string>& overrides, bool allow_resonant) {
  mhd2d::RunConfig cfg = load_config(config_path, overrides);
  if (allow_resonant) cfg.allow_resonant = true;
  const mhd2d::RunResult result = mhd2d::run_simulation(cfg);
  const auto& s = result.summary;
  std::printf("run complete: %zu samples, t_end=%g, wall=%.1fs\n",
              result.samples.size(), result.final_state.t, s.wall_clock_seconds);
  std::printf("certificate: %s\n", mhd2d::certificate_json(s.certificate).c_str());
  std::printf("A=%g  sup |u|_HN+|b|_HN = %.6g  lyapunov violations: %zu\n",
              s.a_weight, s.sup_h_n, s.violation_count);
  for (const auto& gf : s.fits) {
    if (gf.fit.status == mhd2d::FitStatus::ok)
      std::printf("gamma=%g: exponent %.4f +- %.4f (theorem bound %.4f)\n", gf.gamma,
                  gf.fit.exponent, gf.fit.stderr_, gf.predicted_bound);
    else if (gf.fit.status == mhd2d::FitStatus::below_floor)
      std::printf("gamma=%g: below floor, decay faster than measurable\n", gf.gamma);
    else
      std::printf("gamma=%g: fit skipped\n", gf.gamma);
  }
  return kExitOk;
}

int run_verify(std::uint64_t seed) {
  const auto suites = mhd2d::verify_all(seed);
  int failed = 0;
  for (const auto& s : suites) {
    std::printf("%-20s %d passed, %d failed\n", s.name.c_str(), s.passed, s.failed);
    failed += s.failed;
  }
  std::printf("verify: %s\n", failed == 0 ? "PASS" : "FAIL");
  return failed == 0 ? kExitOk : 1;
}

int run_diophantine(const std::string& n_spec, double r, int K) {
  mhd2d::RunConfig cfg;
  mhd2d::apply_entry(cfg, "n", n_spec);
  const auto cert = mhd2d::diophantine_constant(cfg.n, r, K);
  std::printf("%s\n", mhd2d::certificate_json(cert).c_str());
  return cert.valid() ? kExitOk : kExitCertificate;
}

int run_cancellations(int modes, std::uint64_t seed, int m_order) {
  const auto lat = mhd2d::WaveLattice::make(modes);
  const auto u = mhd2d::random_divfree_field(lat, seed);
  const auto b = mhd2d::random_divfree_field(lat, seed + 1);
  const auto residuals = mhd2d::cancellation_suite(u, b, mhd2d::golden_vector(), m_order);
  bool ok = true;
  for (const auto& res : residuals) {
    std::printf("%-45s %.3e\n", res.name.c_str(), res.residual);
    ok = ok && res.residual <= 1e-11;
  }
  std::printf("cancellations: %s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitOk : 1;
}

int run_fit(const std::string& csv, const std::string& column, double t_min) {
  const auto series = mhd2d::read_csv_column(csv, column);
  std::vector<double> t, q;
  for (const auto& [ti, qi] : series) {
    t.push_back(ti);
    q.push_back(qi);
  }
  const auto fit = mhd2d::fit_decay(t, q, t_min);
  switch (fit.status) {
    case mhd2d::FitStatus::ok:
      std::printf("%s: exponent %.6f +- %.6f over t >= %g%s\n", column.c_str(),
                  fit.exponent, fit.stderr_, t_min,
                  fit.super_polynomial ? " (super-polynomial)" : "");
      return kExitOk;
    case mhd2d::FitStatus::below_floor:
      std::printf("%s: below floor: decay faster than measurable\n", column.c_str());
      return kExitOk;
    default:
      std::printf("%s: fewer than 10 samples past t_min\n", column.c_str());
      return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D MHD pseudo-spectral simulator and proof diagnostics"};
  app.require_subcommand(1);

  std::string config_path, n_spec = "golden", csv_path, column = "E";
  std::vector<std::string> overrides;
  bool allow_resonant = false;
  double r = 2.0, t_min = 5.0;
  int K = 1000, modes = 32, m_order = 2;
  std::uint64_t seed = 1;

  auto* simulate = app.add_subcommand("simulate", "run a simulation");
  simulate->add_option("-c,--config", config_path, "key=value config file");
  simulate->add_option("-s,--set", overrides, "override, key=value (repeatable)");
  simulate->add_flag("--allow-resonant", allow_resonant,
                     "proceed even if the background direction is resonant");

  auto* verify = app.add_subcommand("verify", "run the property suites of all modules");
  verify->add_option("--seed", seed, "base seed");

  auto* dioph = app.add_subcommand("diophantine", "scan a Diophantine constant");
  dioph->add_option("-n", n_spec, "golden, noble:<seed> or x,y");
  dioph->add_option("-r", r, "Diophantine exponent (> 1)");
  dioph->add_option("-K", K, "lattice search radius");

  auto* cancel = app.add_subcommand("cancellations", "energy cancellation residuals");
  cancel->add_option("-M,--modes", modes, "modes per dimension");
  cancel->add_option("--seed", seed, "random state seed");
  cancel->add_option("-m", m_order, "highest derivative weight");

  auto* fit = app.add_subcommand("fit", "decay-rate fit on a series CSV");
  fit->add_option("--csv", csv_path, "series CSV path")->required();
  fit->add_option("--column", column, "column to fit");
  fit->add_option("--t-min", t_min, "start of fit window");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(config_path, overrides, allow_resonant);
    if (verify->parsed()) return run_verify(seed);
    if (dioph->parsed()) return run_diophantine(n_spec, r, K);
    if (cancel->parsed()) return run_cancellations(modes, seed, m_order);
    if (fit->parsed()) return run_fit(csv_path, column, t_min);
  } catch (const mhd2d::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const mhd2d::BlowUpError& e) {
    std::fprintf(stderr, "blow-up abort: %s\n", e.what());
    return kExitBlowUp;
  } catch (const mhd2d::CertificateError& e) {
    std::fprintf(stderr, "certificate error: %s\n", e.what());
    return kExitCertificate;
  } catch (const mhd2d::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
