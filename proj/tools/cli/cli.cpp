// Copyright 2026 The fewbody Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "fewbody/fewbody.h"

namespace fewbody::cli {

namespace {

using json = nlohmann::ordered_json;

class StatusError : public std::runtime_error {
 public:
  StatusError(fb_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  fb_status status() const noexcept { return status_; }

 private:
  fb_status status_;
};

void check(fb_status s) {
  if (s != FB_OK) throw StatusError(s, fb_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using SpectrumPtr = std::unique_ptr<fb_spectrum, Deleter<fb_spectrum, fb_spectrum_destroy>>;
using SpectatorPtr = std::unique_ptr<fb_spectator, Deleter<fb_spectator, fb_spectator_destroy>>;
using WavePtr = std::unique_ptr<fb_wavefunction, Deleter<fb_wavefunction, fb_wavefunction_destroy>>;
using ScatterPtr = std::unique_ptr<fb_scattering, Deleter<fb_scattering, fb_scattering_destroy>>;
using CurvePtr = std::unique_ptr<fb_scaling_curve, Deleter<fb_scaling_curve, fb_scaling_curve_destroy>>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Ordered key=value echo of the effective configuration.
class Echo {
 public:
  void add(const std::string& key, const std::string& v) { items_.emplace_back(key, v); }
  void add(const std::string& key, double v) { add(key, fmt(v)); }
  void add(const std::string& key, std::size_t v) { add(key, std::to_string(v)); }
  void add(const std::string& key, const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    add(key, s);
  }
  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

  /// FNV-1a (64 bit) over "key=value\n" lines.
  std::string hash() const {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto& [k, v] : items_)
      for (char c : k + "=" + v + "\n") {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
      }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

struct Common {
  std::size_t grid_n = 0;
  double map_scale = 0.0;
  unsigned threads = 0;
  std::string output;
  std::string format = "csv";
  std::string config;
  double unit_scale = 1.0;

  Common() {
    fb_settings s;
    fb_settings_default(&s);
    grid_n = s.grid_n;
    map_scale = s.map_scale;
    threads = s.threads;
  }

  fb_settings settings() const {
    fb_settings s;
    fb_settings_default(&s);
    s.grid_n = grid_n;
    s.map_scale = map_scale;
    s.threads = threads;
    return s;
  }

  double momentum(double k) const { return k * unit_scale; }
  double energy(double e) const { return e * unit_scale * unit_scale; }

  void echo_numerics(Echo& e) const {
    e.add("grid_n", grid_n);
    e.add("map_scale", map_scale);
    e.add("unit_scale", unit_scale);
  }
};

struct Report {
  std::string command;
  Echo echo;
  bool has_grid = true;
  Table table;
  json results = json::object();
  std::vector<std::string> notes;
};

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<double>(c)) return fmt(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<std::string>(c)) {
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return "";
}

std::string render(const Report& r, const Common& c, double wall_time) {
  std::ostringstream os;
  if (c.format == "json") {
    json prov = json::object();
    prov["version"] = fb_version();
    prov["command"] = r.command;
    json cfg = json::object();
    for (const auto& [k, v] : r.echo.items()) cfg[k] = v;
    prov["config"] = cfg;
    prov["config_hash"] = "fnv1a64:" + r.echo.hash();
    if (r.has_grid) prov["grid"] = {{"kind", "tangent-gauss-legendre"}, {"n", c.grid_n}, {"map_scale", c.map_scale}};
    prov["units"] = {{"momentum", "mu3"}, {"unit_scale", c.unit_scale}};
    prov["wall_time_s"] = wall_time;
    json doc = json::object();
    doc["provenance"] = prov;
    doc["results"] = r.results;
    doc["diagnostics"] = r.notes;
    os << doc.dump(2) << "\n";
    return os.str();
  }
  os << "# fewbody " << fb_version() << "\n";
  os << "# command: " << r.command << "\n";
  os << "# config:";
  for (const auto& [k, v] : r.echo.items()) os << ' ' << k << '=' << v;
  os << "\n# config_hash: fnv1a64:" << r.echo.hash() << "\n";
  if (r.has_grid)
    os << "# grid: tangent-gauss-legendre n=" << c.grid_n << " map_scale=" << fmt(c.map_scale) << "\n";
  for (const auto& n : r.notes) os << "# diagnostic: " << n << "\n";
  os << "# wall_time_s: " << fmt(wall_time) << "\n";
  for (std::size_t i = 0; i < r.table.columns.size(); ++i) os << (i ? "," : "") << r.table.columns[i];
  os << "\n";
  for (const auto& row : r.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw StatusError(FB_ERR_IO, "cannot open output file '" + path + "'");
  f << text;
  f.close();
  if (!f) throw StatusError(FB_ERR_IO, "failed writing output file '" + path + "'");
}

json number_array(const std::vector<double>& v) { return json(v); }

// Commands. Each fills a Report; emission and timing are shared.

Report spectrum_cmd(double eps2, std::size_t levels, const Common& c) {
  Report r;
  r.command = "spectrum";
  r.echo.add("eps2", eps2);
  r.echo.add("levels", levels);
  c.echo_numerics(r.echo);
  const fb_settings s = c.settings();
  fb_spectrum* raw = nullptr;
  check(fb_spectrum_compute(eps2, levels, &s, &raw));
  const SpectrumPtr sp(raw);
  const std::size_t n = fb_spectrum_count(sp.get());
  std::vector<double> eps3(n);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < n; ++i) check(fb_spectrum_level(sp.get(), i, &eps3[i]));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double q = 0.0;
    check(fb_spectrum_ratio(sp.get(), i, &q));
    ratios.push_back(q);
  }
  r.table.columns = {"level", "eps3", "ratio_to_next"};
  std::vector<double> scaled;
  for (std::size_t i = 0; i < n; ++i) {
    scaled.push_back(c.energy(eps3[i]));
    r.table.rows.push_back({static_cast<long long>(i), scaled.back(),
                            i < ratios.size() ? Cell(ratios[i]) : Cell()});
  }
  r.results["eps2"] = c.energy(eps2);
  r.results["levels"] = number_array(scaled);
  r.results["ratios"] = number_array(ratios);
  const std::string diag = fb_spectrum_diagnostic(sp.get());
  if (!diag.empty()) r.notes.push_back(diag);
  return r;
}

SpectatorPtr make_spectator(double eps2, std::size_t level, const Common& c) {
  const fb_settings s = c.settings();
  fb_spectator* raw = nullptr;
  check(fb_spectator_compute(eps2, level, &s, &raw));
  return SpectatorPtr(raw);
}

Report spectator_cmd(double eps2, std::size_t level, const Common& c) {
  Report r;
  r.command = "spectator";
  r.echo.add("eps2", eps2);
  r.echo.add("level", level);
  c.echo_numerics(r.echo);
  const SpectatorPtr sp = make_spectator(eps2, level, c);
  r.table.columns = {"y", "f"};
  std::vector<double> ys;
  std::vector<double> fs;
  for (std::size_t i = 0; i < fb_spectator_size(sp.get()); ++i) {
    double y = 0.0;
    double f = 0.0;
    check(fb_spectator_point(sp.get(), i, &y, &f));
    ys.push_back(c.momentum(y));
    fs.push_back(f);
    r.table.rows.push_back({ys.back(), f});
  }
  r.results["eps2"] = c.energy(eps2);
  r.results["level"] = level;
  r.results["eps3"] = c.energy(fb_spectator_binding(sp.get()));
  r.results["pivot"] = fb_spectator_pivot(sp.get());
  r.results["residual"] = fb_spectator_residual(sp.get());
  r.results["y"] = number_array(ys);
  r.results["f"] = number_array(fs);
  return r;
}

Report wavefunction_cmd(double eps2, std::size_t level, std::size_t radial_n, std::size_t angular_n,
                        const Common& c) {
  Report r;
  r.command = "wavefunction";
  r.echo.add("eps2", eps2);
  r.echo.add("level", level);
  r.echo.add("radial_n", radial_n);
  r.echo.add("angular_n", angular_n);
  c.echo_numerics(r.echo);
  const SpectatorPtr sp = make_spectator(eps2, level, c);
  fb_wavefunction* raw = nullptr;
  check(fb_wavefunction_create(sp.get(), &raw));
  const WavePtr wf(raw);
  double norm_raw = 0.0;
  check(fb_wavefunction_norm(wf.get(), radial_n, angular_n, &norm_raw));
  check(fb_wavefunction_normalize(wf.get(), radial_n, angular_n));

  const double eps3 = fb_wavefunction_binding(wf.get());
  std::vector<double> qs(radial_n);
  std::vector<double> ws(radial_n);
  check(fb_tangent_grid(radial_n, std::sqrt(eps3), qs.data(), ws.data()));
  r.table.columns = {"q", "f", "density"};
  std::vector<double> q_out;
  std::vector<double> f_out;
  std::vector<double> n_out;
  double integral = 0.0;
  for (std::size_t i = 0; i < radial_n; ++i) {
    double f = 0.0;
    double n = 0.0;
    check(fb_wavefunction_spectator(wf.get(), qs[i], &f));
    check(fb_wavefunction_density(wf.get(), qs[i], radial_n, angular_n, &n));
    integral += ws[i] * qs[i] * qs[i] * n;
    q_out.push_back(c.momentum(qs[i]));
    f_out.push_back(f);
    n_out.push_back(n);
    r.table.rows.push_back({q_out.back(), f, n});
  }
  integral *= 4.0 * std::numbers::pi;
  r.results["eps2"] = c.energy(eps2);
  r.results["level"] = level;
  r.results["eps3"] = c.energy(eps3);
  r.results["norm_before_normalization"] = norm_raw;
  r.results["density_integral"] = integral;
  r.results["clamped_evaluations"] = fb_wavefunction_clamped(wf.get());
  r.results["q"] = number_array(q_out);
  r.results["f"] = number_array(f_out);
  r.results["density"] = number_array(n_out);
  if (fb_wavefunction_clamped(wf.get()) > 0)
    r.notes.push_back(std::to_string(fb_wavefunction_clamped(wf.get())) +
                      " spectator evaluations above y = 100 clamped to zero");
  return r;
}

std::pair<Report, Report> scatter_cmd(double eps2, const std::vector<double>& ks, bool refine,
                                      const Common& c) {
  Report r;
  r.command = "scatter";
  r.echo.add("eps2", eps2);
  r.echo.add("k", ks);
  r.echo.add("refinement_check", std::string(refine ? "on" : "off"));
  c.echo_numerics(r.echo);
  Report dump;
  dump.command = "scatter-offshell";
  dump.echo = r.echo;
  dump.table.columns = {"k", "y", "re_h", "im_h"};

  const fb_settings s = c.settings();
  r.table.columns = {"k", "re_h", "im_h", "cross_section"};
  json points = json::array();
  json off = json::array();
  for (double k : ks) {
    fb_scattering* raw = nullptr;
    check(fb_scattering_compute(eps2, k, &s, refine ? 1 : 0, &raw));
    const ScatterPtr sc(raw);
    double re = 0.0;
    double im = 0.0;
    fb_scattering_on_shell(sc.get(), &re, &im);
    const double sigma = fb_scattering_cross_section(sc.get());
    r.table.rows.push_back({c.momentum(k), re, im, sigma});
    points.push_back({{"k", c.momentum(k)},
                      {"energy", c.energy(fb_scattering_energy(sc.get()))},
                      {"re_h", re},
                      {"im_h", im},
                      {"cross_section", sigma},
                      {"condition", fb_scattering_condition(sc.get())},
                      {"refinement_drift", fb_scattering_refinement_drift(sc.get())}});
    json ys = json::array();
    json res = json::array();
    json ims = json::array();
    for (std::size_t i = 0; i < fb_scattering_size(sc.get()); ++i) {
      double y = 0.0;
      double hr = 0.0;
      double hi = 0.0;
      check(fb_scattering_offshell(sc.get(), i, &y, &hr, &hi));
      dump.table.rows.push_back({c.momentum(k), c.momentum(y), hr, hi});
      ys.push_back(c.momentum(y));
      res.push_back(hr);
      ims.push_back(hi);
    }
    off.push_back({{"k", c.momentum(k)}, {"y", ys}, {"re_h", res}, {"im_h", ims}});
  }
  r.results["eps2"] = c.energy(eps2);
  r.results["points"] = points;
  dump.results["eps2"] = c.energy(eps2);
  dump.results["channels"] = off;
  return {std::move(r), std::move(dump)};
}

Report scaling_cmd(const std::vector<double>& eps2_list, std::size_t level, const Common& c) {
  Report r;
  r.command = "scaling-curve";
  r.echo.add("eps2_list", eps2_list);
  r.echo.add("level", level);
  c.echo_numerics(r.echo);
  const fb_settings s = c.settings();
  fb_scaling_curve* raw = nullptr;
  check(fb_scaling_curve_compute(eps2_list.data(), eps2_list.size(), level, &s, &raw));
  const CurvePtr curve(raw);
  r.table.columns = {"eps2", "level_N_energy", "level_N1_energy", "x", "y"};
  json pts = json::array();
  for (std::size_t i = 0; i < fb_scaling_curve_count(curve.get()); ++i) {
    fb_scaling_point p{};
    check(fb_scaling_curve_point(curve.get(), i, &p));
    r.table.rows.push_back({c.energy(p.eps2), c.energy(p.level_n_energy), c.energy(p.level_n1_energy),
                            p.x, p.y});
    pts.push_back({{"eps2", c.energy(p.eps2)},
                   {"level_N_energy", c.energy(p.level_n_energy)},
                   {"level_N1_energy", c.energy(p.level_n1_energy)},
                   {"x", p.x},
                   {"y", p.y}});
  }
  for (std::size_t i = 0; i < fb_scaling_curve_diagnostic_count(curve.get()); ++i)
    r.notes.push_back(fb_scaling_curve_diagnostic(curve.get(), i));
  r.results["level"] = level;
  r.results["points"] = pts;
  return r;
}

Report threshold_cmd(std::size_t level, double growth, const Common& c) {
  Report r;
  r.command = "threshold";
  r.echo.add("level", level);
  r.echo.add("bracket_growth", growth);
  c.echo_numerics(r.echo);
  const fb_settings s = c.settings();
  fb_threshold_result t{};
  check(fb_threshold_locate(level, &s, growth, &t));
  r.table.columns = {"level", "ratio", "eps2", "level_N_energy"};
  r.table.rows.push_back({static_cast<long long>(level), t.ratio, c.energy(t.eps2), c.energy(t.level_n_energy)});
  r.results["level"] = level;
  r.results["ratio"] = t.ratio;
  r.results["eps2"] = c.energy(t.eps2);
  r.results["level_N_energy"] = c.energy(t.level_n_energy);
  return r;
}

Report feshbach_cmd(double abg, double b0, double delta_b, std::vector<double> fields,
                    double b_min, double b_max, std::size_t steps, const Common& c) {
  Report r;
  r.command = "feshbach";
  r.has_grid = false;
  r.echo.add("abg", abg);
  r.echo.add("b0", b0);
  r.echo.add("delta_b", delta_b);
  r.echo.add("b", fields);
  if (steps > 0) {
    r.echo.add("b_min", b_min);
    r.echo.add("b_max", b_max);
    r.echo.add("b_steps", steps);
    for (std::size_t i = 0; i < steps; ++i)
      fields.push_back(steps == 1 ? b_min
                                  : b_min + (b_max - b_min) * static_cast<double>(i) /
                                                static_cast<double>(steps - 1));
  }
  (void)c;
  if (fields.empty()) throw StatusError(FB_ERR_INVALID_ARGUMENT, "feshbach: give --b or --b-steps");
  r.table.columns = {"B", "a"};
  json pts = json::array();
  for (double b : fields) {
    double a = 0.0;
    check(fb_feshbach_a(abg, b0, delta_b, b, &a));
    r.table.rows.push_back({b, a});
    pts.push_back({{"B", b}, {"a", a}});
  }
  r.results["points"] = pts;
  return r;
}

struct SelftestCollector {
  Table* table;
  json* cases;
};

void collect_selftest(const char* name, int passed, const char* detail, void* user) {
  auto* s = static_cast<SelftestCollector*>(user);
  s->table->rows.push_back({std::string(name), static_cast<long long>(passed), std::string(detail)});
  s->cases->push_back({{"name", name}, {"passed", passed != 0}, {"detail", detail}});
}

Report selftest_cmd(std::size_t& failed) {
  Report r;
  r.command = "selftest";
  r.has_grid = false;
  r.table.columns = {"name", "passed", "detail"};
  json cases = json::array();
  SelftestCollector col{&r.table, &cases};
  std::size_t passed = 0;
  std::size_t total = 0;
  check(fb_selftest(collect_selftest, &col, &passed, &total));
  failed = total - passed;
  r.results["passed"] = passed;
  r.results["total"] = total;
  r.results["cases"] = cases;
  return r;
}

// Config files hold "key = value" lines ('#' starts a comment). A key is
// applied as --key=value unless the same flag is already on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw StatusError(FB_ERR_IO, "cannot read config file '" + path + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw StatusError(FB_ERR_INVALID_ARGUMENT,
                        path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config")
      throw StatusError(FB_ERR_INVALID_ARGUMENT, path + ":" + std::to_string(lineno) + ": bad key");
    const std::string flag = "--" + key;
    bool present = false;
    for (std::size_t i = 1; i < args.size(); ++i)
      present = present || args[i] == flag || args[i].rfind(flag + "=", 0) == 0;
    if (!present) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

void add_common(CLI::App* sub, Common& c, bool numerics = true) {
  if (numerics) {
    sub->add_option("--grid-n", c.grid_n, "Quadrature points on the half-line")->capture_default_str();
    sub->add_option("--map-scale", c.map_scale, "Tangent map scale of the grid")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (0 = logical cores)")->capture_default_str();
    sub->add_option("--unit-scale", c.unit_scale,
                    "Multiply output momenta by s and energies by s^2")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  sub->add_option("-o,--output", c.output, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--config", c.config, "key = value file; command-line flags take precedence");
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fewbody: zero-range three-boson bound states and atom-dimer scattering"};
  app.name(argv.empty() ? "fewbody" : argv[0]);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fb_version()));

  Common c;
  double eps2 = 0.0;
  std::size_t levels = 3;
  std::size_t level = 1;
  std::size_t radial_n = 96;
  std::size_t angular_n = 32;
  std::vector<double> ks;
  std::string dump_path;
  bool no_refine = false;
  std::vector<double> eps2_list;
  double growth = 2.0;
  double abg = 0.0;
  double b0 = 0.0;
  double delta_b = 0.0;
  std::vector<double> fields;
  double b_min = 0.0;
  double b_max = 0.0;
  std::size_t b_steps = 0;

  auto* spectrum = app.add_subcommand("spectrum", "Three-body binding energies and level ratios");
  spectrum->add_option("--eps2", eps2, "Dimer binding energy (0 = unitarity)")->required();
  spectrum->add_option("--levels", levels, "Maximum number of levels")->capture_default_str();
  add_common(spectrum, c);

  auto* spect = app.add_subcommand("spectator", "Spectator function of one level");
  spect->add_option("--eps2", eps2, "Dimer binding energy")->required();
  spect->add_option("--level", level, "Level index (0 = deepest)")->capture_default_str();
  add_common(spect, c);

  auto* wave = app.add_subcommand("wavefunction", "Normalized wave function and momentum density");
  wave->add_option("--eps2", eps2, "Dimer binding energy")->required();
  wave->add_option("--level", level, "Level index (0 = deepest)")->capture_default_str();
  wave->add_option("--radial-n", radial_n, "Radial integration points")->capture_default_str();
  wave->add_option("--angular-n", angular_n, "Angular integration points")->capture_default_str();
  add_common(wave, c);

  auto* scatter = app.add_subcommand("scatter", "Elastic atom-dimer amplitude below breakup");
  scatter->add_option("--eps2", eps2, "Dimer binding energy (> 0)")->required();
  scatter->add_option("--k", ks, "Relative momenta (repeat or comma-separate)")
      ->required()
      ->delimiter(',');
  scatter->add_option("--dump-offshell", dump_path, "Also write h(y, k) on the grid to this file");
  scatter->add_flag("--no-refinement", no_refine, "Skip the doubled-grid stability check");
  add_common(scatter, c);

  auto* scaling = app.add_subcommand("scaling-curve", "x, y pairs of consecutive levels against eps2");
  scaling->add_option("--eps2-list", eps2_list, "Dimer binding energies")->required()->delimiter(',');
  scaling->add_option("--level", level, "Lower level N")->capture_default_str();
  add_common(scaling, c);

  auto* threshold = app.add_subcommand("threshold", "eps2 / eps3^(N) where level N+1 meets the cut");
  threshold->add_option("--level", level, "Level N")->capture_default_str();
  threshold->add_option("--bracket-growth", growth, "Geometric step of the bracket scan")
      ->capture_default_str();
  add_common(threshold, c);

  auto* feshbach = app.add_subcommand("feshbach", "Scattering length near a Feshbach resonance");
  feshbach->add_option("--abg", abg, "Background scattering length")->required();
  feshbach->add_option("--b0", b0, "Resonance position")->required();
  feshbach->add_option("--delta-b", delta_b, "Resonance width")->required();
  feshbach->add_option("--b", fields, "Field values (repeat or comma-separate)")->delimiter(',');
  feshbach->add_option("--b-min", b_min, "Sweep start");
  feshbach->add_option("--b-max", b_max, "Sweep end");
  feshbach->add_option("--b-steps", b_steps, "Sweep points (0 = no sweep)");
  add_common(feshbach, c, false);

  auto* selftest = app.add_subcommand("selftest", "Run the built-in closed-form checks");
  add_common(selftest, c, false);

  try {
    std::vector<std::string> args = apply_config(argv);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        const auto subs = app.get_subcommands();
        out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(e.what()) + "\n"
                : subs.empty()                              ? app.help()
                                                            : subs.front()->help());
        return kSuccess;
      }
      err << "error: " << e.what() << "\n\n";
      const auto subs = app.get_subcommands();
      err << (subs.empty() ? app.help() : subs.front()->help());
      return kValidation;
    }

    const auto start = std::chrono::steady_clock::now();
    Report report;
    Report dump;
    std::size_t failed = 0;
    if (spectrum->parsed()) {
      report = spectrum_cmd(eps2, levels, c);
    } else if (spect->parsed()) {
      report = spectator_cmd(eps2, level, c);
    } else if (wave->parsed()) {
      report = wavefunction_cmd(eps2, level, radial_n, angular_n, c);
    } else if (scatter->parsed()) {
      std::tie(report, dump) = scatter_cmd(eps2, ks, !no_refine, c);
    } else if (scaling->parsed()) {
      report = scaling_cmd(eps2_list, level, c);
    } else if (threshold->parsed()) {
      report = threshold_cmd(level, growth, c);
    } else if (feshbach->parsed()) {
      report = feshbach_cmd(abg, b0, delta_b, fields, b_min, b_max, b_steps, c);
    } else {
      report = selftest_cmd(failed);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& n : report.notes) err << "diagnostic: " << n << "\n";
    emit(render(report, c, wall), c.output, out);
    if (!dump_path.empty()) emit(render(dump, c, wall), dump_path, out);
    if (failed > 0) {
      err << "selftest: " << failed << " check(s) failed\n";
      return kNumerical;
    }
    return kSuccess;
  } catch (const StatusError& e) {
    err << "error [" << fb_status_name(e.status()) << "]: " << e.what() << "\n";
    return fb_status_is_validation(e.status()) ? kValidation : kNumerical;
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace fewbody::cli
