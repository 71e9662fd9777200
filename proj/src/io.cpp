#include "ibs/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "ibs/error.hpp"

namespace ibs {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(int line, const std::string& what) {
  throw Error(ErrorKind::Config, "line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) config_error(line, "invalid value for " + key + ": '" + v + "'");
  return out;
}

long parse_integer(const std::string& v, int line, const std::string& key) {
  long out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) config_error(line, "invalid integer for " + key + ": '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  config_error(line, "invalid boolean for " + key + ": '" + v + "'");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string wall_clock() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

// Smooth band-limited field with sup norm equal to amplitude.
Field random_field(const PeriodicGrid& grid, std::mt19937_64& rng, double amplitude) {
  constexpr int kBand = 8;
  std::normal_distribution<double> normal(0.0, 1.0);
  Field f(grid.size(), 0.0);
  for (int k = 1; k <= kBand; ++k) {
    const double scale = 1.0 / (k * k * k);
    const double a = scale * normal(rng);
    const double b = scale * normal(rng);
    for (int j = 0; j < grid.size(); ++j) f[j] += a * std::cos(k * grid.point(j)) + b * std::sin(k * grid.point(j));
  }
  double sup = 0.0;
  for (double v : f) sup = std::max(sup, std::abs(v));
  if (sup > 0.0)
    for (double& v : f) v *= amplitude / sup;
  return f;
}

}  // namespace

const char* scheme_name(Scheme s) { return s == Scheme::ImexBdf2 ? "imex-bdf2" : "imex-euler"; }

SimConfig parse_config_text(const std::string& text) {
  SimConfig c;
  using Setter = std::function<void(const std::string&, int, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"n", [&](auto& v, int l, auto& k) {
         const long n = parse_integer(v, l, k);
         if (n <= 0 || n % 2 != 0 || n > (1 << 20)) config_error(l, "n must be even and positive");
         c.n = static_cast<int>(n);
       }},
      {"dt", [&](auto& v, int l, auto& k) { c.dt = parse_double(v, l, k); }},
      {"t_final", [&](auto& v, int l, auto& k) { c.t_final = parse_double(v, l, k); }},
      {"scheme",
       [&](auto& v, int l, auto&) {
         if (v == "imex-euler")
           c.scheme = Scheme::ImexEuler;
         else if (v == "imex-bdf2")
           c.scheme = Scheme::ImexBdf2;
         else
           config_error(l, "unknown scheme '" + v + "'");
       }},
      {"dealias", [&](auto& v, int l, auto& k) { c.dealias = parse_bool(v, l, k); }},
      {"output_every", [&](auto& v, int l, auto& k) { c.output_every = static_cast<int>(parse_integer(v, l, k)); }},
      {"snapshot_every", [&](auto& v, int l, auto& k) { c.snapshot_every = static_cast<int>(parse_integer(v, l, k)); }},
      {"preset",
       [&](auto& v, int l, auto&) {
         if (v != "equilibrium" && v != "theta-mode" && v != "y-mode" && v != "mixed" && v != "random")
           config_error(l, "unknown preset '" + v + "'");
         c.preset = v;
       }},
      {"c1", [&](auto& v, int l, auto& k) { c.params.c1 = parse_double(v, l, k); }},
      {"c3", [&](auto& v, int l, auto& k) { c.params.c3 = parse_double(v, l, k); }},
      {"lambda", [&](auto& v, int l, auto& k) { c.params.lambda = parse_double(v, l, k); }},
      {"B", [&](auto& v, int l, auto& k) { c.params.B = parse_double(v, l, k); }},
      {"s_op", [&](auto& v, int l, auto& k) { c.params.s_op = parse_double(v, l, k); }},
      {"epsilon", [&](auto& v, int l, auto& k) { c.epsilon = parse_double(v, l, k); }},
      {"mode_k", [&](auto& v, int l, auto& k) { c.mode_k = static_cast<int>(parse_integer(v, l, k)); }},
      {"seed",
       [&](auto& v, int l, auto& k) {
         const long s = parse_integer(v, l, k);
         if (s < 0) config_error(l, "seed must be nonnegative");
         c.seed = static_cast<unsigned>(s);
       }},
      {"out_dir", [&](auto& v, int l, auto&) {
         if (v.empty()) config_error(l, "out_dir is empty");
         c.out_dir = v;
       }},
      {"beta1_min", [&](auto& v, int l, auto& k) { c.margins.beta1_min = parse_double(v, l, k); }},
      {"beta2_min", [&](auto& v, int l, auto& k) { c.margins.beta2_min = parse_double(v, l, k); }},
      {"defect_max", [&](auto& v, int l, auto& k) { c.margins.defect_max = parse_double(v, l, k); }},
      {"project_rhs", [&](auto& v, int l, auto& k) { c.project_rhs = parse_bool(v, l, k); }},
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) config_error(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) config_error(line, "unknown key '" + key + "'");
    if (value.empty()) config_error(line, "missing value for " + key);
    it->second(value, line, key);
  }
  c.validate();
  if (c.mode_k < 1 || c.mode_k >= c.n / 2) throw Error(ErrorKind::Config, "mode_k must lie in [1, n/2)");
  if (!(c.epsilon >= 0.0)) throw Error(ErrorKind::Config, "epsilon must be nonnegative");
  return c;
}

SimConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string emit_config(const SimConfig& c) {
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  std::ostringstream o;
  o << "n = " << c.n << "\n";
  o << "dt = " << num(c.dt) << "\n";
  o << "t_final = " << num(c.t_final) << "\n";
  o << "scheme = " << scheme_name(c.scheme) << "\n";
  o << "dealias = " << (c.dealias ? "true" : "false") << "\n";
  o << "output_every = " << c.output_every << "\n";
  o << "snapshot_every = " << c.snapshot_every << "\n";
  o << "preset = " << c.preset << "\n";
  o << "c1 = " << num(c.params.c1) << "\n";
  o << "c3 = " << num(c.params.c3) << "\n";
  o << "lambda = " << num(c.params.lambda) << "\n";
  o << "B = " << num(c.params.B) << "\n";
  o << "s_op = " << num(c.params.s_op) << "\n";
  o << "epsilon = " << num(c.epsilon) << "\n";
  o << "mode_k = " << c.mode_k << "\n";
  o << "seed = " << c.seed << "\n";
  o << "out_dir = " << c.out_dir << "\n";
  o << "beta1_min = " << num(c.margins.beta1_min) << "\n";
  o << "beta2_min = " << num(c.margins.beta2_min) << "\n";
  o << "defect_max = " << num(c.margins.defect_max) << "\n";
  o << "project_rhs = " << (c.project_rhs ? "true" : "false") << "\n";
  return o.str();
}

CurveState preset_state(const std::string& name, const SimConfig& config) {
  const PeriodicGrid grid(config.n);
  if (name == "equilibrium") return CurveState::equilibrium(config.n);
  Field d(config.n, 0.0), ys(config.n, 0.0);
  const double eps = config.epsilon;
  const int k = config.mode_k;
  if (name == "theta-mode" || name == "mixed")
    for (int j = 0; j < config.n; ++j) d[j] = eps * std::sin(k * grid.point(j));
  if (name == "y-mode" || name == "mixed")
    for (int j = 0; j < config.n; ++j) ys[j] = eps * std::sin(k * grid.point(j));
  if (name == "random") {
    std::mt19937_64 rng(config.seed);
    d = random_field(grid, rng, eps);
    ys = random_field(grid, rng, eps);
  } else if (name != "theta-mode" && name != "y-mode" && name != "mixed") {
    throw Error(ErrorKind::Config, "unknown preset '" + name + "'");
  }
  return normalize_initial_data(d, ys, kPi);
}

const char* const kTimeseriesHeader =
    "t,E,D_rate,area,s,closure_defect,beta1,beta2,H1,H2,H2_5,h0,h1_5,a1,b1,a2,b2,fuglede,gage";

std::string format_record(const DiagnosticsRecord& r) {
  const double vals[] = {r.t,  r.energy, r.dissipation, r.area, r.perimeter, r.closure_defect, r.beta1,
                         r.beta2, r.H1, r.H2, r.H2_5, r.h0, r.h1_5, r.a[1], r.b[1], r.a[2], r.b[2], r.fuglede,
                         r.gage};
  std::string line;
  for (std::size_t i = 0; i < std::size(vals); ++i) {
    if (i) line += ',';
    line += fmt(vals[i]);
  }
  return line;
}

void write_snapshot(const std::filesystem::path& path, const CurveState& s) {
  s.validate();
  std::ofstream out = open_for_write(path);
  const PeriodicGrid grid(s.n);
  out << "# t = " << fmt(s.time) << "\n";
  out << "# s = " << fmt(s.perimeter) << "\n";
  out << "# mean_angle = " << fmt(s.mean_angle) << "\n";
  out << "# base_point = " << fmt(s.base_point.x) << "," << fmt(s.base_point.y) << "\n";
  out << "alpha,D,y_s\n";
  for (int j = 0; j < s.n; ++j) out << fmt(grid.point(j)) << ',' << fmt(s.D[j]) << ',' << fmt(s.ys[j]) << "\n";
  finish(out, path);
}

CurveState load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read snapshot " + path.string());
  CurveState s;
  bool have[4] = {false, false, false, false};
  std::string raw;
  int line = 0;
  auto bad = [&](const std::string& what) {
    throw Error(ErrorKind::Io, path.string() + ":" + std::to_string(line) + ": " + what);
  };
  auto number = [&](const std::string& v) {
    double x = 0.0;
    const std::string t = trim(v);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || ptr != t.data() + t.size()) bad("invalid number '" + t + "'");
    return x;
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw);
    if (body.empty()) continue;
    if (body[0] == '#') {
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(body.substr(1, eq - 1));
      const std::string value = trim(body.substr(eq + 1));
      if (key == "t") {
        s.time = number(value);
        have[0] = true;
      } else if (key == "s") {
        s.perimeter = number(value);
        have[1] = true;
      } else if (key == "mean_angle") {
        s.mean_angle = number(value);
        have[2] = true;
      } else if (key == "base_point") {
        const auto comma = value.find(',');
        if (comma == std::string::npos) bad("base_point needs two components");
        s.base_point = {number(value.substr(0, comma)), number(value.substr(comma + 1))};
        have[3] = true;
      }
      continue;
    }
    if (body == "alpha,D,y_s") continue;
    const auto c1 = body.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : body.find(',', c1 + 1);
    if (c2 == std::string::npos) bad("expected three columns");
    s.D.push_back(number(body.substr(c1 + 1, c2 - c1 - 1)));
    s.ys.push_back(number(body.substr(c2 + 1)));
  }
  for (bool h : have)
    if (!h) throw Error(ErrorKind::Io, path.string() + ": missing header line");
  s.n = static_cast<int>(s.D.size());
  try {
    s.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
  return s;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream out = open_for_write(path);
  out << "version = " << m.version << "\n";
  out << "start_time = " << m.start_time << "\n";
  out << "end_time = " << m.end_time << "\n";
  out << "termination = " << termination_name(m.termination) << "\n";
  out << "steps = " << m.steps << "\n";
  if (!m.message.empty()) out << "message = " << m.message << "\n";
  out << "[config]\n" << m.config_echo;
  finish(out, path);
}

RunResult run_to_directory(const SimConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  RunManifest manifest;
  manifest.config_echo = emit_config(config);
  manifest.version = IBS_VERSION;
  manifest.start_time = wall_clock();

  const CurveState initial = preset_state(config.preset, config);
  const std::filesystem::path series_path = out_dir / "timeseries.csv";
  std::ofstream series = open_for_write(series_path);
  series << kTimeseriesHeader << "\n";

  RunCallbacks callbacks;
  callbacks.on_record = [&](long, const CurveState&, const DiagnosticsRecord& r) {
    series << format_record(r) << "\n";
  };
  callbacks.on_snapshot = [&](long step, const CurveState& s) {
    write_snapshot(out_dir / ("snapshot_" + std::to_string(step) + ".csv"), s);
  };
  RunResult result = run_simulation(initial, config, callbacks);
  finish(series, series_path);

  manifest.end_time = wall_clock();
  manifest.termination = result.termination;
  manifest.message = result.message;
  manifest.steps = result.steps;
  write_manifest(out_dir / "manifest.txt", manifest);
  return result;
}

}  // namespace ibs
