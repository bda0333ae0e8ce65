// blastsim: config-driven front end for the blast-loading, similitude and
// rigid-block simulation library.
//
// Exit codes: 0 success, 2 config validation, 3 infeasible scaling or
// bracket failure, 4 integration failure.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blastsim/blastload.hpp"
#include "blastsim/rockdyn.hpp"
#include "blastsim/similitude.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace blastsim;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIntegration = 4;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// atomic write: temp file in the target directory, then rename
void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

blastload::ZWindow window_from_env() {
  blastload::ZWindow w;
  const char* env = std::getenv("BLASTSIM_Z_WINDOW");
  if (!env) return w;
  double lo, hi;
  char sep;
  std::istringstream in(env);
  if ((in >> lo >> sep >> hi) && lo > 0.0 && hi > lo) {
    w.lo = lo;
    w.hi = hi;
    return w;
  }
  throw ConfigError(std::string("cannot parse BLASTSIM_Z_WINDOW '") + env +
                    "', expected '<lo>,<hi>'");
}

// ordered fan-out over independent work items
template <class T, class F>
auto parallel_map(const std::vector<T>& items, unsigned jobs, F&& f)
    -> std::vector<decltype(f(items[0]))> {
  using R = decltype(f(items[0]));
  std::vector<R> out(items.size());
  if (jobs <= 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
    return out;
  }
  std::vector<std::future<void>> workers;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, items.size()); ++w)
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < items.size(); i = next++) out[i] = f(items[i]);
    }));
  for (auto& w : workers) w.get();
  return out;
}

// --- config ----------------------------------------------------------------

struct RunSpec {
  fs::path out = ".";
  std::string format = "both";  // csv | json | both
  unsigned jobs = 1;
  double tol_rel = 1e-9;
  double tol_abs = 1e-12;
  std::string waveform = "friedlander";
  double t_end = 0.0;  // 0 = auto
  std::string mechanism = "rocking";
};

struct Cli {
  json config;
  RunSpec run;
  blastload::ZWindow window;

  bool want_csv() const { return run.format != "json"; }
  bool want_json() const { return run.format != "csv"; }
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!cfg.contains("schema") || !cfg["schema"].is_string() ||
      cfg["schema"].get<std::string>() != "blastsim/1")
    throw ConfigError("config must declare \"schema\": \"blastsim/1\"");
  return cfg;
}

double require_positive(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError("missing numeric field: " + key);
  const double v = j[key].get<double>();
  if (!(v > 0.0)) throw ConfigError(key + " must be positive");
  return v;
}

rockdyn::RigidBlock block_from(const json& cfg) {
  if (!cfg.contains("block")) throw ConfigError("config needs a \"block\" section");
  const json& b = cfg["block"];
  const double deg = M_PI / 180.0;
  try {
    return rockdyn::RigidBlock(
        require_positive(b, "half_width_m"), require_positive(b, "half_height_m"),
        require_positive(b, "half_depth_m"), require_positive(b, "density_kg_m3"),
        require_positive(b, "friction_angle_deg") * deg,
        b.value("gravity_m_s2", 9.81));
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("invalid block: ") + e.what());
  }
}

blastload::BlastScenario scenario_from(const json& cfg) {
  if (!cfg.contains("blast")) throw ConfigError("config needs a \"blast\" section");
  const json& b = cfg["blast"];
  try {
    return blastload::BlastScenario(require_positive(b, "charge_kg"),
                                    require_positive(b, "standoff_m"));
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("invalid blast: ") + e.what());
  }
}

blastload::WaveformKind waveform_kind(const Cli& cli) {
  std::string kind = cli.run.waveform;
  if (cli.config.contains("blast") && cli.config["blast"].contains("waveform") &&
      cli.run.waveform == "friedlander")
    kind = cli.config["blast"]["waveform"].get<std::string>();
  if (kind == "friedlander") return blastload::WaveformKind::Friedlander;
  if (kind == "triangular") return blastload::WaveformKind::Triangular;
  throw ConfigError("waveform must be friedlander or triangular, got " + kind);
}

struct ScalingSpec {
  double lambda;
  double gamma = 0.0;  // unused when hopkinson
  double varsigma = 1.0;
  bool hopkinson = false;
};

ScalingSpec scaling_from(const json& cfg) {
  if (!cfg.contains("scaling")) throw ConfigError("config needs a \"scaling\" section");
  const json& s = cfg["scaling"];
  ScalingSpec spec;
  spec.lambda = require_positive(s, "lambda");
  spec.hopkinson = s.value("hopkinson", false);
  if (spec.hopkinson) {
    if (s.contains("gamma"))
      throw ConfigError("scaling: give either {lambda, gamma} or {lambda, hopkinson}");
  } else {
    spec.gamma = require_positive(s, "gamma");
    if (s.contains("varsigma")) spec.varsigma = require_positive(s, "varsigma");
  }
  return spec;
}

rockdyn::SimOptions sim_options(const Cli& cli) {
  rockdyn::SimOptions opt;
  opt.tolerances.rel = cli.run.tol_rel;
  opt.tolerances.abs = cli.run.tol_abs;
  return opt;
}

double default_t_end(const rockdyn::RigidBlock& blk) {
  return 100.0 * std::sqrt(blk.characteristic_length() / blk.gravity);
}

// --- serialization ---------------------------------------------------------

json waveform_json(const blastload::BlastWaveform& w) {
  json j{{"kind", w.kind == blastload::WaveformKind::Friedlander ? "friedlander"
                                                                 : "triangular"},
         {"peak_pressure_MPa", w.peak_pressure},
         {"positive_duration_ms", w.positive_duration},
         {"impulse_MPa_ms", w.impulse},
         {"arrival_time_ms", w.arrival_time}};
  if (w.kind == blastload::WaveformKind::Friedlander)
    j["decay"] = w.decay;
  else
    j["linear_duration_ms"] = w.linear_duration;
  return j;
}

json block_json(const rockdyn::RigidBlock& b) {
  return {{"half_width_m", b.half_width},
          {"half_height_m", b.half_height},
          {"half_depth_m", b.half_depth},
          {"density_kg_m3", b.density},
          {"friction_angle_deg", b.friction_angle * 180.0 / M_PI},
          {"gravity_m_s2", b.gravity},
          {"mass_kg", b.mass()},
          {"slenderness_rad", b.slenderness()}};
}

json scale_json(const similitude::ScaleSet& s) {
  return {{"length", s.length},
          {"density", s.density},
          {"gravity", s.gravity},
          {"displacement", s.displacement},
          {"angle", s.angle},
          {"angular_velocity", s.angular_velocity},
          {"angular_acceleration", s.angular_acceleration},
          {"linear_velocity", s.linear_velocity},
          {"linear_acceleration", s.linear_acceleration},
          {"time", s.time},
          {"mass", s.mass},
          {"inertia", s.inertia},
          {"pressure", s.pressure},
          {"impulse", s.impulse},
          {"friction", s.friction},
          {"scaled_distance", s.scaled_distance},
          {"charge", s.charge}};
}

json events_json(const rockdyn::ResponseHistory& h) {
  json ev = json::array();
  for (const auto& e : h.events)
    ev.push_back({{"time_s", e.time}, {"kind", rockdyn::to_string(e.kind)}});
  return ev;
}

std::string series_csv(const rockdyn::ResponseHistory& h, bool failed = false) {
  std::string out = "t [s],theta [rad],theta_dot [rad/s],x [m],x_dot [m/s]\n";
  for (std::size_t i = 0; i < h.time.size(); ++i) {
    out += fmt12(h.time[i]) + ',' + fmt12(h.theta[i]) + ',' + fmt12(h.theta_dot[i]) +
           ',' + fmt12(h.x[i]) + ',' + fmt12(h.x_dot[i]) + '\n';
  }
  if (failed) out += "# INTEGRATION FAILED: series truncated\n";
  return out;
}

void write_json(const Cli& cli, const std::string& name, const json& j) {
  write_file(cli.run.out / name, j.dump(2) + "\n");
}

// linear interpolation onto a query time
double interp(const std::vector<double>& t, const std::vector<double>& v, double tq) {
  if (t.empty()) return 0.0;
  if (tq <= t.front()) return v.front();
  if (tq >= t.back()) return v.back();
  auto it = std::lower_bound(t.begin(), t.end(), tq);
  const std::size_t i = it - t.begin();
  const double f = (tq - t[i - 1]) / (t[i] - t[i - 1]);
  return v[i - 1] + f * (v[i] - v[i - 1]);
}

// --- subcommands -----------------------------------------------------------

int cmd_blast_params(const Cli& cli) {
  struct Row {
    double z = 0.0, p = 0.0, i = 0.0, to = 0.0, ta = 0.0, d = 0.0;
    std::string error;
  };
  std::vector<double> zs;
  if (cli.config.contains("z_grid")) {
    const json& g = cli.config["z_grid"];
    const double lo = require_positive(g, "lo");
    const double hi = require_positive(g, "hi");
    const int n = g.value("points", 50);
    if (hi <= lo || n < 2) throw ConfigError("z_grid needs lo < hi and points >= 2");
    // endpoints exact: pow rounding must not push them outside the window
    for (int i = 0; i < n; ++i)
      zs.push_back(i == 0 ? lo
                          : (i == n - 1 ? hi
                                        : lo * std::pow(hi / lo, double(i) / (n - 1))));
  }
  if (cli.config.contains("scenarios")) {
    for (const json& s : cli.config["scenarios"])
      zs.push_back(blastload::BlastScenario(require_positive(s, "charge_kg"),
                                            require_positive(s, "standoff_m"))
                       .scaled_distance());
  }
  if (zs.empty())
    throw ConfigError("blast-params needs a \"z_grid\" or \"scenarios\" section");

  auto rows = parallel_map(zs, cli.run.jobs, [&](double z) {
    Row r;
    r.z = z;
    try {
      r.p = blastload::reflected_pressure_peak(z, cli.window);
      r.i = blastload::scaled_reflected_impulse(z, cli.window);
      r.to = blastload::scaled_positive_duration(z, cli.window);
      r.ta = blastload::scaled_arrival_time(z, cli.window);
      r.d = blastload::friedlander_decay(r.p, r.to, r.i);
    } catch (const std::exception& e) {
      r.error = e.what();  // reported per row, run continues
    }
    return r;
  });

  if (cli.want_csv()) {
    std::string csv =
        "Z [m/kg^(1/3)],P_ro [MPa],i_rw [MPa*ms/kg^(1/3)],t_ow [ms/kg^(1/3)],"
        "t_Aw [ms/kg^(1/3)],d [-],error\n";
    for (const auto& r : rows) {
      if (r.error.empty())
        csv += fmt12(r.z) + ',' + fmt12(r.p) + ',' + fmt12(r.i) + ',' + fmt12(r.to) +
               ',' + fmt12(r.ta) + ',' + fmt12(r.d) + ",\n";
      else
        csv += fmt12(r.z) + ",,,,,," + r.error + '\n';
    }
    write_file(cli.run.out / "series.csv", csv);
  }
  if (cli.want_json()) {
    json jr = json::array();
    for (const auto& r : rows) {
      json row{{"Z", r.z}};
      if (r.error.empty()) {
        row["P_ro_MPa"] = r.p;
        row["i_rw_MPa_ms"] = r.i;
        row["t_ow_ms"] = r.to;
        row["t_Aw_ms"] = r.ta;
        row["d"] = r.d;
      } else {
        row["error"] = r.error;
      }
      jr.push_back(row);
    }
    write_json(cli, "summary.json",
               {{"schema", "blastsim/1"}, {"command", "blast-params"}, {"rows", jr}});
  }
  return 0;
}

similitude::ModelDesign make_design(const Cli& cli, const similitude::BenchCase& proto,
                                    const ScalingSpec& s) {
  if (s.hopkinson)
    return similitude::design_model_hopkinson(proto, s.lambda, cli.window);
  return similitude::design_model(proto, s.lambda, s.gamma, cli.window);
}

json design_json(const similitude::ModelDesign& d,
                 const similitude::BenchCase& proto) {
  auto bench = [](const rockdyn::RigidBlock& b, const blastload::BlastScenario& s) {
    json j = block_json(b);
    j["charge_kg"] = s.charge_mass;
    j["standoff_m"] = s.standoff;
    j["scaled_distance"] = s.scaled_distance();
    return j;
  };
  return {{"schema", "blastsim/1"},
          {"command", "design-model"},
          {"prototype", bench(proto.block, proto.scenario)},
          {"model", bench(d.block, d.scenario)},
          {"scale", scale_json(d.scale)},
          {"lambda_Z", d.scale.scaled_distance},
          {"pressure_ratio", d.pressure_ratio},
          {"impulse_ratio", d.impulse_ratio}};
}

int cmd_design_model(const Cli& cli) {
  similitude::BenchCase proto{block_from(cli.config), scenario_from(cli.config)};
  auto design = make_design(cli, proto, scaling_from(cli.config));
  write_json(cli, "design.json", design_json(design, proto));
  if (cli.want_csv()) {
    std::string csv = "quantity,prototype,model\n";
    auto row = [&](const std::string& name, double p, double m) {
      csv += name + ',' + fmt12(p) + ',' + fmt12(m) + '\n';
    };
    row("height [m]", 2 * proto.block.half_height, 2 * design.block.half_height);
    row("width [m]", 2 * proto.block.half_width, 2 * design.block.half_width);
    row("density [kg/m^3]", proto.block.density, design.block.density);
    row("charge [kg]", proto.scenario.charge_mass, design.scenario.charge_mass);
    row("standoff [m]", proto.scenario.standoff, design.scenario.standoff);
    row("Z [m/kg^(1/3)]", proto.scenario.scaled_distance(),
        design.scenario.scaled_distance());
    write_file(cli.run.out / "series.csv", csv);
  }
  return 0;
}

int cmd_scale_table(const Cli& cli) {
  const auto spec = scaling_from(cli.config);
  similitude::ScaleSet set =
      spec.hopkinson ? similitude::scale_set_hopkinson(spec.lambda)
                     : similitude::scale_set_general(spec.lambda, spec.gamma,
                                                     spec.varsigma);
  // with a blast section present the charge factor follows from the solve
  if (!spec.hopkinson && cli.config.contains("blast")) {
    auto scen = scenario_from(cli.config);
    set = set.with_scaled_distance(similitude::solve_lambda_z(
        scen.scaled_distance(), spec.lambda, spec.gamma, cli.window));
  }
  if (cli.want_json())
    write_json(cli, "summary.json", {{"schema", "blastsim/1"},
                                     {"command", "scale-table"},
                                     {"scale", scale_json(set)}});
  if (cli.want_csv()) {
    const json j = scale_json(set);
    std::string csv = "factor,value [model/prototype]\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      csv += it.key() + ',' + fmt12(it.value().get<double>()) + '\n';
    write_file(cli.run.out / "series.csv", csv);
  }
  return 0;
}

rockdyn::ResponseHistory run_mechanism(const Cli& cli, const rockdyn::RigidBlock& blk,
                                       const blastload::BlastWaveform& wave,
                                       double t_end) {
  const auto opt = sim_options(cli);
  if (cli.run.mechanism == "sliding")
    return rockdyn::simulate_sliding(blk, wave, t_end, opt);
  if (cli.run.mechanism != "rocking")
    throw ConfigError("mechanism must be rocking or sliding");
  return rockdyn::simulate_rocking(blk, wave, t_end, opt);
}

json summary_json(const rockdyn::ResponseHistory& h, const std::string& cmd) {
  json j{{"schema", "blastsim/1"},
         {"command", cmd},
         {"outcome", rockdyn::to_string(h.outcome)},
         {"peak_theta_rad", h.peak_theta()},
         {"peak_x_m", h.peak_x()},
         {"n_samples", h.time.size()},
         {"n_events", h.events.size()}};
  if (auto t = h.first_event_time(rockdyn::EventKind::Impact))
    j["first_impact_s"] = *t;
  if (auto t = h.first_event_time(rockdyn::EventKind::Overturn)) j["overturn_s"] = *t;
  return j;
}

int cmd_simulate(const Cli& cli) {
  auto blk = block_from(cli.config);
  auto scen = scenario_from(cli.config);
  auto wave = blastload::waveform_from_scenario(scen, waveform_kind(cli), cli.window);
  const double t_end = cli.run.t_end > 0.0 ? cli.run.t_end : default_t_end(blk);
  try {
    auto hist = run_mechanism(cli, blk, wave, t_end);
    if (cli.want_csv()) write_file(cli.run.out / "series.csv", series_csv(hist));
    if (cli.want_json()) {
      write_json(cli, "events.json", {{"schema", "blastsim/1"},
                                      {"events", events_json(hist)}});
      json sum = summary_json(hist, "simulate");
      sum["waveform"] = waveform_json(wave);
      write_json(cli, "summary.json", sum);
    }
  } catch (const ode::IntegrationError& e) {
    write_file(cli.run.out / "series.csv",
               series_csv(rockdyn::ResponseHistory{}, true));
    write_json(cli, "summary.json", {{"schema", "blastsim/1"},
                                     {"command", "simulate"},
                                     {"status", "integration_failure"},
                                     {"error", e.what()},
                                     {"t_s", e.t}});
    std::cerr << "integration failure at t = " << e.t << ": " << e.what() << '\n';
    return kExitIntegration;
  }
  return 0;
}

rockdyn::ResponseHistory read_series_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open series file: " + path.string());
  rockdyn::ResponseHistory h;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double v[5];
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3],
                    &v[4]) != 5)
      throw ConfigError("malformed series row: " + line);
    h.time.push_back(v[0]);
    h.theta.push_back(v[1]);
    h.theta_dot.push_back(v[2]);
    h.x.push_back(v[3]);
    h.x_dot.push_back(v[4]);
  }
  if (h.time.empty()) throw ConfigError("series file has no rows: " + path.string());
  return h;
}

int cmd_compare(const Cli& cli) {
  similitude::BenchCase proto{block_from(cli.config), scenario_from(cli.config)};
  auto design = make_design(cli, proto, scaling_from(cli.config));
  const auto kind = waveform_kind(cli);
  auto wave_p = blastload::waveform_from_scenario(proto.scenario, kind, cli.window);
  auto wave_m = blastload::waveform_from_scenario(design.scenario, kind, cli.window);
  const double t_end = cli.run.t_end > 0.0 ? cli.run.t_end : default_t_end(proto.block);

  rockdyn::ResponseHistory hist_p, hist_m;
  try {
    if (cli.config.contains("prototype_series")) {
      // re-ingest a series emitted by `simulate`
      hist_p = read_series_csv(cli.config["prototype_series"].get<std::string>());
      hist_p.outcome = rockdyn::classify_outcome(hist_p);
      hist_m = run_mechanism(cli, design.block, wave_m, t_end * design.scale.time);
    } else if (cli.run.jobs > 1) {
      auto fp = std::async(std::launch::async, [&] {
        return run_mechanism(cli, proto.block, wave_p, t_end);
      });
      hist_m = run_mechanism(cli, design.block, wave_m, t_end * design.scale.time);
      hist_p = fp.get();
    } else {
      hist_p = run_mechanism(cli, proto.block, wave_p, t_end);
      hist_m = run_mechanism(cli, design.block, wave_m, t_end * design.scale.time);
    }
  } catch (const ode::IntegrationError& e) {
    std::cerr << "integration failure at t = " << e.t << ": " << e.what() << '\n';
    return kExitIntegration;
  }
  auto up = similitude::upscale_response(hist_m, design.scale);

  // error metrics on the prototype time base
  double t_cmp = hist_p.time.back();
  for (const auto* h : {&hist_p, &up}) {
    if (auto t = h->first_event_time(rockdyn::EventKind::Impact))
      t_cmp = std::min(t_cmp, *t);
    if (auto t = h->first_event_time(rockdyn::EventKind::Overturn))
      t_cmp = std::min(t_cmp, *t);
  }
  double sup = 0.0;
  const int n_probe = 400;
  for (int i = 0; i <= n_probe; ++i) {
    const double tq = t_cmp * i / n_probe;
    sup = std::max(sup, std::fabs(interp(hist_p.time, hist_p.theta, tq) -
                                  interp(up.time, up.theta, tq)));
  }
  const double peak_p = hist_p.peak_theta();
  const double peak_err =
      peak_p > 0.0 ? std::fabs(up.peak_theta() - peak_p) / peak_p : 0.0;
  auto ti_p = hist_p.first_event_time(rockdyn::EventKind::Impact);
  auto ti_m = up.first_event_time(rockdyn::EventKind::Impact);
  std::optional<double> impact_err;
  if (ti_p && ti_m && *ti_p > 0.0) impact_err = std::fabs(*ti_m - *ti_p) / *ti_p;

  if (cli.want_csv()) {
    std::string csv = "t [s],theta_prototype [rad],theta_model_upscaled [rad]\n";
    for (std::size_t i = 0; i < hist_p.time.size(); ++i)
      csv += fmt12(hist_p.time[i]) + ',' + fmt12(hist_p.theta[i]) + ',' +
             fmt12(interp(up.time, up.theta, hist_p.time[i])) + '\n';
    write_file(cli.run.out / "series.csv", csv);
  }
  if (cli.want_json()) {
    write_json(cli, "events.json", {{"schema", "blastsim/1"},
                                    {"prototype", events_json(hist_p)},
                                    {"model_upscaled", events_json(up)}});
    json metrics{{"sup_theta_pre_first_impact_rel",
                  peak_p > 0.0 ? sup / peak_p : 0.0},
                 {"peak_theta_rel_error", peak_err},
                 {"compare_horizon_s", t_cmp}};
    if (impact_err) metrics["first_impact_time_rel_error"] = *impact_err;
    write_json(cli, "summary.json",
               {{"schema", "blastsim/1"},
                {"command", "compare"},
                {"prototype_outcome", rockdyn::to_string(hist_p.outcome)},
                {"model_outcome", rockdyn::to_string(hist_m.outcome)},
                {"metrics", metrics},
                {"design", design_json(design, proto)}});
  }
  return 0;
}

int cmd_critical_charge(const Cli& cli) {
  auto blk = block_from(cli.config);
  if (!cli.config.contains("blast") || !cli.config["blast"].contains("standoff_m"))
    throw ConfigError("critical-charge needs blast.standoff_m");
  const double standoff = require_positive(cli.config["blast"], "standoff_m");
  if (!cli.config.contains("bracket"))
    throw ConfigError("critical-charge needs a \"bracket\" section");
  const json& br = cli.config["bracket"];
  const double lo = require_positive(br, "lo_kg");
  const double hi = require_positive(br, "hi_kg");
  const double rel_tol = br.value("rel_tol", 1e-3);

  auto opt = sim_options(cli);
  auto result = rockdyn::critical_charge(blk, standoff, lo, hi, rel_tol, opt,
                                         cli.window);

  // sandwich verification
  auto classify = [&](double w) {
    auto fast = opt;
    fast.stop_at_first_impact = true;
    auto wave = blastload::waveform_from_scenario(blastload::BlastScenario(w, standoff),
                                                  waveform_kind(cli), cli.window);
    return rockdyn::to_string(
        rockdyn::simulate_rocking(blk, wave, default_t_end(blk), fast).outcome);
  };
  const double w_lo = 0.99 * result.critical_mass;
  const double w_hi = 1.01 * result.critical_mass;

  if (cli.want_json())
    write_json(cli, "summary.json",
               {{"schema", "blastsim/1"},
                {"command", "critical-charge"},
                {"critical_charge_kg", result.critical_mass},
                {"bracket_lo_kg", result.bracket_lo},
                {"bracket_hi_kg", result.bracket_hi},
                {"bracket_history_kg", result.bracket_history},
                {"simulations", result.simulations},
                {"sandwich", {{"charge_0.99Wc_kg", w_lo},
                              {"outcome_0.99Wc", classify(w_lo)},
                              {"charge_1.01Wc_kg", w_hi},
                              {"outcome_1.01Wc", classify(w_hi)}}}});
  if (cli.want_csv()) {
    std::string csv = "iteration,midpoint [kg]\n";
    for (std::size_t i = 0; i < result.bracket_history.size(); ++i)
      csv += std::to_string(i) + ',' + fmt12(result.bracket_history[i]) + '\n';
    write_file(cli.run.out / "series.csv", csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduced-scale blast experiment design and rigid-block response"};
  app.require_subcommand(1);

  std::string config_path;
  Cli cli;
  app.add_option("--config", config_path, "JSON config file (schema blastsim/1)");
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", cli.run.format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--jobs", cli.run.jobs, "parallel scenario fan-out");
  app.add_option("--tol-rel", cli.run.tol_rel, "integrator relative tolerance");
  app.add_option("--tol-abs", cli.run.tol_abs, "integrator absolute tolerance");
  app.add_option("--waveform", cli.run.waveform, "friedlander | triangular")
      ->check(CLI::IsMember({"friedlander", "triangular"}));

  std::map<std::string, std::function<int(const Cli&)>> commands{
      {"blast-params", cmd_blast_params}, {"design-model", cmd_design_model},
      {"scale-table", cmd_scale_table},   {"simulate", cmd_simulate},
      {"compare", cmd_compare},           {"critical-charge", cmd_critical_charge}};
  const char* descriptions[] = {"empirical blast parameter table",
                                "reduced-scale model design",
                                "similitude factor table",
                                "rigid-block time-domain response",
                                "prototype vs upscaled model response",
                                "largest non-overturning charge"};
  int di = 0;
  for (auto& [name, fn] : commands)
    app.add_subcommand(name, descriptions[di++])->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    cli.config = load_config(config_path);
    cli.window = window_from_env();
    // flags override config values
    const json& run = cli.config.value("run", json::object());
    if (out_dir == "." && run.contains("out")) out_dir = run["out"].get<std::string>();
    cli.run.out = out_dir;
    if (!app.count("--format") && run.contains("format"))
      cli.run.format = run["format"].get<std::string>();
    if (!app.count("--jobs") && run.contains("jobs"))
      cli.run.jobs = run["jobs"].get<unsigned>();
    if (!app.count("--tol-rel") && run.contains("tol_rel"))
      cli.run.tol_rel = run["tol_rel"].get<double>();
    if (!app.count("--tol-abs") && run.contains("tol_abs"))
      cli.run.tol_abs = run["tol_abs"].get<double>();
    cli.run.t_end = run.value("t_end_s", 0.0);
    cli.run.mechanism = run.value("mechanism", "rocking");
    if (cli.run.format != "csv" && cli.run.format != "json" && cli.run.format != "both")
      throw ConfigError("format must be csv, json or both");

    const std::string sub = app.get_subcommands().front()->get_name();
    return commands.at(sub)(cli);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const blastload::ZRangeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const similitude::InfeasibleScalingError& e) {
    std::cerr << "infeasible scaling: " << e.what() << " (target " << e.target
              << ", achievable [" << e.achievable_lo << ", " << e.achievable_hi
              << "])\n";
    return kExitInfeasible;
  } catch (const rockdyn::BracketError& e) {
    std::cerr << "bracket failure: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ode::IntegrationError& e) {
    std::cerr << "integration failure at t = " << e.t << ": " << e.what() << '\n';
    return kExitIntegration;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
