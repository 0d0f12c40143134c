#include "mhd2d/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace mhd2d {

namespace fs = std::filesystem;
using json = nlohmann::json;

// ---- config ---------------------------------------------------------------

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
  if (modes_per_dim <= 0 || modes_per_dim % 2 != 0)
    fail("modes_per_dim must be even and positive");
  if (epsilon < 0.0) fail("epsilon must be nonnegative");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl must lie in (0, 1]");
  if (!(dt_min > 0.0 && dt_min <= dt_max)) fail("requires 0 < dt_min <= dt_max");
  if (!(sample_interval > 0.0)) fail("sample_interval must be positive");
  if (t_end < 0.0) fail("t_end must be nonnegative");
  try {
    ProofParams pp = proof_params();
    for (double g : gamma_list) {
      pp.gamma = g;
      pp.validate();
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

ProofParams RunConfig::proof_params() const {
  ProofParams pp;
  pp.r = r;
  pp.alpha = alpha;
  pp.beta = beta;
  pp.n_sob = n_sob;
  pp.gamma = gamma_list.empty() ? pp.base_index() : gamma_list.front();
  pp.cross_exponents = ProofParams::default_cross_exponents(r, alpha);
  return pp;
}

int RunConfig::effective_dioph_K() const {
  const int lattice_k = static_cast<int>(
      std::ceil(WaveLattice::make(modes_per_dim).radius()));
  return std::max(dioph_K, lattice_k);
}

std::map<std::string, std::string> read_config_entries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string{};
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line is not key=value: " + line);
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

namespace {

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: " + v);
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not an integer: " + v);
  }
}

}  // namespace

void apply_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "modes_per_dim") {
    cfg.modes_per_dim = static_cast<int>(parse_long(key, value));
  } else if (key == "n") {
    if (value == "golden") {
      cfg.n_name = "golden";
      cfg.n = golden_vector();
    } else if (value.rfind("noble:", 0) == 0) {
      cfg.n_name = value;
      cfg.n = noble_vector(static_cast<std::uint64_t>(parse_long(key, value.substr(6))));
    } else {
      const auto comma = value.find(',');
      if (comma == std::string::npos)
        throw ConfigError("config key 'n': expected 'golden', 'noble:<seed>' or 'x,y'");
      cfg.n_name = "custom";
      cfg.n = {parse_double(key, value.substr(0, comma)),
               parse_double(key, value.substr(comma + 1))};
    }
  } else if (key == "r") {
    cfg.r = parse_double(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "beta") {
    cfg.beta = parse_double(key, value);
  } else if (key == "n_sob") {
    cfg.n_sob = parse_double(key, value);
  } else if (key == "gamma_list") {
    cfg.gamma_list.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      cfg.gamma_list.push_back(parse_double(key, item));
  } else if (key == "epsilon") {
    cfg.epsilon = parse_double(key, value);
  } else if (key == "t_end") {
    cfg.t_end = parse_double(key, value);
  } else if (key == "sample_interval") {
    cfg.sample_interval = parse_double(key, value);
  } else if (key == "cfl") {
    cfg.cfl = parse_double(key, value);
  } else if (key == "dt_max") {
    cfg.dt_max = parse_double(key, value);
  } else if (key == "dt_min") {
    cfg.dt_min = parse_double(key, value);
  } else if (key == "fit_t_min") {
    cfg.fit_t_min = parse_double(key, value);
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
  } else if (key == "allow_resonant") {
    cfg.allow_resonant = (value == "1" || value == "true");
  } else if (key == "dioph_K") {
    cfg.dioph_K = static_cast<int>(parse_long(key, value));
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else if (key == "csv_path") {
    cfg.csv_path = value;
  } else if (key == "summary_path") {
    cfg.summary_path = value;
  } else if (key == "mode") {
    // accepted for completeness; the CLI subcommand decides the mode
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

RunConfig config_from_entries(const std::map<std::string, std::string>& entries) {
  RunConfig cfg;
  for (const auto& [k, v] : entries) apply_entry(cfg, k, v);
  return cfg;
}

// ---- initial data ---------------------------------------------------------

namespace {

SpectralVector2 random_hermitian_pair(WaveLattice lat, std::mt19937_64& rng,
                                      double profile_exponent, bool gaussian_amp) {
  const int m = lat.modes;
  SpectralVector2 v(lat);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < m; ++i) {
    const int k1 = lat.wavenumber(i);
    for (int j = 0; j < m; ++j) {
      const int k2 = lat.wavenumber(j);
      if (lat.is_nyquist(i, j)) continue;
      if (k1 == 0 && k2 == 0) continue;
      if (k1 < 0 || (k1 == 0 && k2 < 0)) continue;  // mirror fills these
      const double q = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      const double amp = std::pow(1.0 + q, -profile_exponent / 2.0);
      for (SpectralScalar* comp : {&v.x1, &v.x2}) {
        const double mag = gaussian_amp ? amp * std::abs(gauss(rng)) : amp;
        const Complex c = std::polar(mag, phase(rng));
        comp->set(k1, k2, c);
        comp->set(-k1, -k2, std::conj(c));
      }
    }
  }
  return v;
}

}  // namespace

SpectralVector2 random_divfree_field(WaveLattice lat, std::uint64_t seed,
                                     double decay_exponent) {
  std::mt19937_64 rng(seed);
  SpectralVector2 v = random_hermitian_pair(lat, rng, decay_exponent, true);
  v = leray_project(v);
  v.x1.set(0, 0, Complex{0.0, 0.0});
  v.x2.set(0, 0, Complex{0.0, 0.0});
  return v;
}

FlowState synthesize_initial_data(const RunConfig& cfg) {
  const WaveLattice lat = WaveLattice::make(cfg.modes_per_dim);
  std::mt19937_64 rng(cfg.seed);
  const double profile = cfg.n_sob + 2.0;

  SpectralVector2 u = random_hermitian_pair(lat, rng, profile, false);
  SpectralVector2 b = random_hermitian_pair(lat, rng, profile, false);
  u = leray_project(u);
  b = leray_project(b);
  for (SpectralScalar* f : {&u.x1, &u.x2, &b.x1, &b.x2})
    f->set(0, 0, Complex{0.0, 0.0});

  const double total = sobolev_norm(u, cfg.n_sob) + sobolev_norm(b, cfg.n_sob);
  const double scale = total > 0.0 ? cfg.epsilon / total : 0.0;
  u *= scale;
  b *= scale;
  return FlowState(0.0, std::move(u), std::move(b));
}

// ---- decay fit ------------------------------------------------------------

FitResult fit_decay(const std::vector<double>& times,
                    const std::vector<double>& values, double t_min) {
  if (times.size() != values.size())
    throw std::invalid_argument("fit_decay: length mismatch");
  constexpr double floor = 1e-14;
  std::vector<double> x, y;
  bool hit_floor = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_min) continue;
    if (values[i] <= floor) {
      hit_floor = true;
      continue;
    }
    x.push_back(std::log1p(times[i]));
    y.push_back(std::log(values[i]));
  }
  FitResult res;
  if (hit_floor) {
    res.status = FitStatus::below_floor;
    return res;
  }
  for (double v : y)
    if (!std::isfinite(v))
      throw std::invalid_argument("fit_decay: nonpositive value in fit window");
  if (x.size() < 10) {
    res.status = FitStatus::too_few_samples;
    return res;
  }
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - my - slope * (x[i] - mx);
    ssr += resid * resid;
  }
  res.status = FitStatus::ok;
  res.exponent = slope;
  res.stderr_ = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  res.super_polynomial = slope < -20.0;
  return res;
}

// ---- CSV / JSON -----------------------------------------------------------

namespace {

std::string format_gamma(double g) {
  std::ostringstream os;
  os << g;
  return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("rename failed: " + target.string() + ": " + ec.message());
}

}  // namespace

void write_series_csv(const std::string& path, const std::vector<EnergySample>& samples,
                      const std::vector<double>& gamma_list) {
  std::ostringstream out;
  out << "t,l2_u,l2_b,grad_b_l2";
  for (double g : gamma_list)
    out << ",h_gamma_u_" << format_gamma(g) << ",h_gamma_b_" << format_gamma(g);
  out << ",h_N_u,h_N_b,cross,E,D,residual_l2,dE_dt_fd\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const EnergySample& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g", s.t);
    out << buf;
    put(s.l2_u);
    put(s.l2_b);
    put(s.grad_b_l2);
    for (std::size_t i = 0; i < gamma_list.size(); ++i) {
      put(s.h_gamma_u[i]);
      put(s.h_gamma_b[i]);
    }
    put(s.h_n_u);
    put(s.h_n_b);
    put(s.cross);
    put(s.energy);
    put(s.dissipation);
    put(s.residual_l2);
    put(s.de_dt_fd);
    out << '\n';
  }
  atomic_write(path, out.str());
}

std::string certificate_json(const DiophantineCertificate& cert) {
  json j;
  j["n"] = {cert.n[0], cert.n[1]};
  j["r"] = cert.r;
  j["K"] = cert.K;
  j["c_K"] = cert.c_K;
  j["argmin_k"] = {cert.argmin_k[0], cert.argmin_k[1]};
  j["valid"] = cert.valid();
  return j.dump();
}

void write_summary_json(const std::string& path, const RunSummary& s) {
  json j;
  j["config"] = {{"modes_per_dim", s.config.modes_per_dim},
                 {"n", {s.config.n[0], s.config.n[1]}},
                 {"n_name", s.config.n_name},
                 {"r", s.config.r},
                 {"alpha", s.config.alpha},
                 {"beta", s.config.beta},
                 {"n_sob", s.config.n_sob},
                 {"gamma_list", s.config.gamma_list},
                 {"epsilon", s.config.epsilon},
                 {"t_end", s.config.t_end},
                 {"sample_interval", s.config.sample_interval},
                 {"cfl", s.config.cfl},
                 {"dt_max", s.config.dt_max},
                 {"dt_min", s.config.dt_min},
                 {"fit_t_min", s.config.fit_t_min},
                 {"seed", s.config.seed},
                 {"allow_resonant", s.config.allow_resonant}};
  j["certificate"] = json::parse(certificate_json(s.certificate));
  j["A"] = s.a_weight;
  j["final_norms"] = {{"l2_u", s.final_l2_u},
                      {"l2_b", s.final_l2_b},
                      {"h_N_u", s.final_h_n_u},
                      {"h_N_b", s.final_h_n_b}};
  j["sup_h_N"] = s.sup_h_n;
  j["fits"] = json::array();
  for (const GammaFit& gf : s.fits) {
    json f;
    f["gamma"] = gf.gamma;
    f["predicted_bound"] = gf.predicted_bound;
    switch (gf.fit.status) {
      case FitStatus::ok:
        f["status"] = gf.fit.super_polynomial ? "super-polynomial" : "ok";
        f["exponent"] = gf.fit.exponent;
        f["stderr"] = gf.fit.stderr_;
        break;
      case FitStatus::below_floor:
        f["status"] = "below floor: decay faster than measurable";
        break;
      case FitStatus::too_few_samples:
        f["status"] = "skipped: fewer than 10 samples in window";
        break;
    }
    j["fits"].push_back(f);
  }
  j["lyapunov_violations"] = s.violation_count;
  j["resonant_override"] = s.resonant_override;
  j["wall_clock_seconds"] = s.wall_clock_seconds;
  atomic_write(path, j.dump(2) + "\n");
}

// ---- run orchestration ----------------------------------------------------

RunResult run_simulation(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (const char* dir = std::getenv("MHD2D_OUTPUT_DIR"); dir && *dir)
    cfg.output_dir = dir;
  if (cfg.csv_path.empty()) cfg.csv_path = cfg.output_dir + "/series.csv";
  if (cfg.summary_path.empty()) cfg.summary_path = cfg.output_dir + "/summary.json";
  cfg.validate();

  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  RunSummary& summary = result.summary;
  summary.config = cfg;

  const bool n_is_zero = cfg.n[0] == 0.0 && cfg.n[1] == 0.0;
  summary.certificate = n_is_zero
                            ? DiophantineCertificate{cfg.n, cfg.r, 0, 0.0, {0, 0}}
                            : diophantine_constant(cfg.n, cfg.r, cfg.effective_dioph_K());
  if (!summary.certificate.valid()) {
    if (!cfg.allow_resonant)
      throw CertificateError(
          "background direction is resonant on the lattice (c_K = 0 at k=(" +
          std::to_string(summary.certificate.argmin_k[0]) + "," +
          std::to_string(summary.certificate.argmin_k[1]) +
          ")); pass allow_resonant to proceed without a decay guarantee");
    summary.resonant_override = true;
  }

  BackgroundField bg{cfg.n, cfg.r, summary.certificate.c_K};
  ProofParams pp = cfg.proof_params();
  pp.a_weight = choose_A(bg, pp);
  summary.a_weight = pp.a_weight;

  FlowState state = synthesize_initial_data(cfg);

  StepControl ctl;
  ctl.cfl = cfg.cfl;
  ctl.dt_max = cfg.dt_max;
  ctl.dt_min = cfg.dt_min;
  ctl.t_end = cfg.t_end;
  ctl.sample_interval = cfg.sample_interval;

  std::vector<EnergySample>& samples = result.samples;
  const auto observer = [&](const FlowState& s) {
    samples.push_back(collect_sample(s, bg, pp, cfg.gamma_list));
    summary.sup_h_n =
        std::max(summary.sup_h_n, samples.back().h_n_u + samples.back().h_n_b);
  };
  result.final_state = advance_to(std::move(state), bg, ctl, observer);

  if (samples.size() >= 3) {
    const MonitorReport report = lyapunov_monitor(samples);
    summary.violation_count = report.violations.size();
  }

  const EnergySample& last = samples.back();
  summary.final_l2_u = last.l2_u;
  summary.final_l2_b = last.l2_b;
  summary.final_h_n_u = last.h_n_u;
  summary.final_h_n_b = last.h_n_b;

  const double denom = cfg.n_sob - cfg.r - cfg.alpha - 3.0;
  for (std::size_t gi = 0; gi < cfg.gamma_list.size(); ++gi) {
    const double g = cfg.gamma_list[gi];
    GammaFit gf;
    gf.gamma = g;
    gf.predicted_bound = -(cfg.n_sob - g) * (cfg.beta + 1.0) / denom;
    std::vector<double> t, q;
    for (const EnergySample& s : samples) {
      t.push_back(s.t);
      q.push_back(s.h_gamma_u[gi] + s.h_gamma_b[gi]);
    }
    const bool all_zero = std::all_of(q.begin(), q.end(), [](double v) { return v == 0.0; });
    if (!all_zero) gf.fit = fit_decay(t, q, cfg.fit_t_min);
    summary.fits.push_back(gf);
  }

  summary.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_series_csv(cfg.csv_path, samples, cfg.gamma_list);
  write_summary_json(cfg.summary_path, summary);
  return result;
}

// ---- checkpoints ----------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'M', 'H', 'D', '2', 'D', 'S', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kEndianTag = 0x01020304u;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void read_pod(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw CheckpointTruncatedError("checkpoint truncated");
}

}  // namespace

void checkpoint_write(const FlowState& state, const std::string& path) {
  std::ostringstream out(std::ios::binary);
  out.write(kMagic, sizeof kMagic);
  write_pod(out, kVersion);
  write_pod(out, kEndianTag);
  write_pod(out, static_cast<std::uint32_t>(state.lattice().modes));
  write_pod(out, state.t);
  write_pod(out, state.dissipation_integral);
  const char* names[4] = {"u1", "u2", "b1", "b2"};
  const SpectralScalar* fields[4] = {&state.u.x1, &state.u.x2, &state.b.x1,
                                     &state.b.x2};
  write_pod(out, static_cast<std::uint32_t>(4));
  for (int f = 0; f < 4; ++f) {
    const std::uint8_t len = static_cast<std::uint8_t>(std::strlen(names[f]));
    write_pod(out, len);
    out.write(names[f], len);
  }
  for (int f = 0; f < 4; ++f) {
    for (const Complex& c : fields[f]->coeffs()) {
      const double re = c.real(), im = c.imag();
      write_pod(out, re);
      write_pod(out, im);
    }
  }
  atomic_write(path, out.str());
}

FlowState checkpoint_read(const std::string& path, std::optional<int> expect_modes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw CheckpointFormatError("checkpoint: bad magic");
  std::uint32_t version = 0, endian = 0, modes = 0, nfields = 0;
  read_pod(in, version);
  if (version != kVersion)
    throw CheckpointFormatError("checkpoint: unsupported version " +
                                std::to_string(version));
  read_pod(in, endian);
  if (endian != kEndianTag)
    throw CheckpointFormatError("checkpoint: endianness mismatch");
  read_pod(in, modes);
  if (expect_modes && static_cast<int>(modes) != *expect_modes)
    throw CheckpointFormatError("checkpoint: lattice size " + std::to_string(modes) +
                                " does not match expected " +
                                std::to_string(*expect_modes));
  double t = 0.0, diss = 0.0;
  read_pod(in, t);
  read_pod(in, diss);
  read_pod(in, nfields);
  if (nfields != 4) throw CheckpointFormatError("checkpoint: expected 4 fields");
  std::vector<std::string> names;
  for (std::uint32_t f = 0; f < nfields; ++f) {
    std::uint8_t len = 0;
    read_pod(in, len);
    std::string name(len, '\0');
    in.read(name.data(), len);
    if (!in) throw CheckpointTruncatedError("checkpoint truncated");
    names.push_back(name);
  }
  if (names != std::vector<std::string>{"u1", "u2", "b1", "b2"})
    throw CheckpointFormatError("checkpoint: unexpected field names");

  const WaveLattice lat = WaveLattice::make(static_cast<int>(modes));
  FlowState state(t, SpectralVector2(lat), SpectralVector2(lat));
  state.dissipation_integral = diss;
  SpectralScalar* fields[4] = {&state.u.x1, &state.u.x2, &state.b.x1, &state.b.x2};
  for (int f = 0; f < 4; ++f) {
    for (Complex& c : fields[f]->coeffs()) {
      double re = 0.0, im = 0.0;
      read_pod(in, re);
      read_pod(in, im);
      c = Complex{re, im};
    }
  }

  for (const SpectralVector2* v : {&state.u, &state.b}) {
    const double norm = sobolev_norm(*v, 0.0);
    if (max_divergence(*v) > 1e-10 * (1.0 + norm))
      throw CheckpointInvariantError("checkpoint: field is not divergence-free");
    if (std::abs(v->x1(0, 0)) + std::abs(v->x2(0, 0)) > 1e-12 * (1.0 + norm))
      throw CheckpointInvariantError("checkpoint: field has nonzero mean");
  }
  return state;
}

// ---- CSV reading ----------------------------------------------------------

std::vector<std::pair<double, double>> read_csv_column(const std::string& path,
                                                       const std::string& column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV: " + path);
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty CSV: " + path);
  std::vector<std::string> cols;
  {
    std::stringstream ss(header);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  const auto it = std::find(cols.begin(), cols.end(), column);
  if (it == cols.end()) throw IoError("CSV has no column '" + column + "'");
  const std::size_t idx = static_cast<std::size_t>(it - cols.begin());
  std::vector<std::pair<double, double>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double t = 0.0, v = 0.0;
    for (std::size_t i = 0; std::getline(ss, cell, ','); ++i) {
      if (i == 0) t = std::stod(cell);
      if (i == idx) v = std::stod(cell);
    }
    out.emplace_back(t, v);
  }
  return out;
}

// ---- verification driver --------------------------------------------------

namespace {

void check(SuiteResult& suite, bool ok) {
  if (ok)
    ++suite.passed;
  else
    ++suite.failed;
}

SuiteResult verify_spectral(std::uint64_t seed) {
  SuiteResult suite{"spectral_core"};
  const WaveLattice lat = WaveLattice::make(32);
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    SpectralVector2 v = random_divfree_field(lat, seed + trial);
    const SpectralScalar& f = v.x1;
    // roundtrip
    const auto phys = inverse_transform(f, lat.padded);
    const SpectralScalar back = forward_transform(phys, lat);
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      diff += std::norm(f.coeffs()[i] - back.coeffs()[i]);
      norm += std::norm(f.coeffs()[i]);
    }
    check(suite, diff <= 1e-26 * norm);
    // Plancherel vs quadrature
    double quad = 0.0;
    for (double x : phys) quad += x * x;
    quad /= phys.size();
    const double plan = sobolev_norm(f, 0.0);
    check(suite, std::abs(quad - plan * plan) <= 1e-10 * (plan * plan + 1e-30));
    // interpolation inequality, constant exactly 1
    const double n1 = sobolev_norm(f, 1.0), n3 = sobolev_norm(f, 3.0);
    const double nm = sobolev_norm(f, 2.0);
    check(suite, nm <= std::sqrt(n1 * n3) * (1.0 + 1e-12));
    // skew-adjointness of n.grad against an independent field
    const Vec2 n = golden_vector();
    const SpectralScalar g = random_divfree_field(lat, seed + trial + 1000).x1;
    const double a = weighted_inner_product(directional_derivative(f, n), g, 1.0);
    const double b = weighted_inner_product(f, directional_derivative(g, n), 1.0);
    const double scale = sobolev_norm(f, 2.0) * sobolev_norm(g, 2.0);
    check(suite, std::abs(a + b) <= 1e-12 * (scale + 1e-30));
  }
  return suite;
}

SuiteResult verify_mhd(std::uint64_t seed) {
  SuiteResult suite{"mhd_system"};
  const WaveLattice lat = WaveLattice::make(32);
  const Vec2 n = golden_vector();
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    SpectralVector2 u = random_divfree_field(lat, seed * 1000 + trial);
    SpectralVector2 b = random_divfree_field(lat, seed * 1000 + 500 + trial);
    for (const auto& res : cancellation_suite(u, b, n, 2))
      check(suite, res.residual <= 1e-11);
    const SpectralVector2 pu = leray_project(u);
    double diff = 0.0;
    diff += l2_inner_product(pu - u, pu - u);
    check(suite, diff <= 1e-24 * (1.0 + l2_inner_product(u, u)));
  }
  return suite;
}

SuiteResult verify_integrator(std::uint64_t seed) {
  SuiteResult suite{"time_integrator"};
  const WaveLattice lat = WaveLattice::make(16);
  BackgroundField bg{{0.0, 0.0}, 2.0, 0.0};
  // single-mode pure diffusion is exact
  FlowState s(0.0, SpectralVector2(lat), SpectralVector2(lat));
  s.b.x2.set(1, 0, Complex{0.5, 0.0});
  s.b.x2.set(-1, 0, Complex{0.5, 0.0});
  const double dt = 0.3;
  const FlowState s1 = step_if_rk4(s, bg, dt);
  check(suite, std::abs(s1.b.x2(1, 0).real() - 0.5 * std::exp(-dt)) <= 1e-15);
  // dt = 0 is the identity
  const FlowState s0 = step_if_rk4(s, bg, 0.0);
  check(suite, s0.b.x2(1, 0) == s.b.x2(1, 0));
  // random state keeps invariants
  FlowState r(0.0, random_divfree_field(lat, seed), random_divfree_field(lat, seed + 1));
  BackgroundField bgr{golden_vector(), 2.0, 1.0};
  const FlowState r1 = step_if_rk4(r, bgr, 0.01);
  check(suite, max_divergence(r1.u) <= 1e-12 * (1.0 + sobolev_norm(r1.u, 0.0)));
  check(suite, max_divergence(r1.b) <= 1e-12 * (1.0 + sobolev_norm(r1.b, 0.0)));
  return suite;
}

SuiteResult verify_diagnostics(std::uint64_t seed) {
  SuiteResult suite{"energy_diagnostics"};
  const WaveLattice lat = WaveLattice::make(32);
  BackgroundField bg{golden_vector(), 2.0, 1.0};
  ProofParams pp;
  pp.cross_exponents = ProofParams::default_cross_exponents(pp.r, pp.alpha);
  pp.a_weight = choose_A(bg, pp);
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    FlowState s(0.0, random_divfree_field(lat, seed * 77 + trial, 8.0),
                random_divfree_field(lat, seed * 77 + 40 + trial, 8.0));
    check(suite, std::abs(l2_balance_residual(s, bg)) <= 1e-11);
    check(suite, hm_balance_residual(s, bg, 2) <= 1e-9);
    const double e = lyapunov_E(s, bg, pp);
    const double nu = sobolev_norm(s.u, pp.base_index());
    const double nb = sobolev_norm(s.b, pp.base_index());
    check(suite, e >= (nu * nu + nb * nb) * (1.0 - 1e-12));
    check(suite, dissipation_D(s, bg, pp) >= 0.0);
  }
  return suite;
}

SuiteResult verify_diophantine(std::uint64_t seed) {
  SuiteResult suite{"diophantine"};
  const auto cert = diophantine_constant(golden_vector(), 2.0, 100);
  check(suite, cert.c_K > 0.4);
  const WaveLattice lat = WaveLattice::make(32);
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    SpectralScalar f = random_divfree_field(lat, seed * 13 + trial).x1;
    for (double s : {0.0, 1.0, 5.5})
      check(suite, verify_poincare(f, cert, s).holds);
    check(suite, verify_homogeneous_poincare(f, cert, 2.0).holds);
  }
  return suite;
}

}  // namespace

std::vector<SuiteResult> verify_all(std::uint64_t seed) {
  return {verify_spectral(seed), verify_mhd(seed), verify_integrator(seed),
          verify_diagnostics(seed), verify_diophantine(seed)};
}

}  // namespace mhd2d
