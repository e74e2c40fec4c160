#pragma once

// Scenario files are INI with five sections. Values are given in the units
// the constants are usually quoted in and converted once, here:
//
//   [physical] D       cm^2/s          -> m^2/s
//   [physical] kappa   1/(day UVI)     -> 1/(s UVI)
//
// Relative input paths are resolved against the directory of the file.

#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "noxsim/domain_model.hpp"
#include "noxsim/error.hpp"
#include "noxsim/io/csv.hpp"
#include "noxsim/signal.hpp"

namespace noxsim::io {

namespace detail {

using boost::property_tree::ptree;

inline const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"scenario", {"tag"}},
      {"geometry",
       {"width", "height", "road_width", "box_width", "box_height", "box_lift", "probe_x", "probe_y"}},
      {"physical", {"D", "L", "u_r", "u_0", "u_T", "sigma", "f_r", "s_r", "kappa", "gamma", "A_f", "robin_coeff"}},
      {"numerics", {"nx", "ny", "steps_per_day", "theta", "solver_tolerance", "warm_start"}},
      {"inputs", {"traffic", "solar", "measurements", "window_start", "window_end"}},
  };
  return keys;
}

inline void check_keys(const ptree& tree, const std::filesystem::path& path) {
  const auto& known = known_keys();
  for (const auto& [section, body] : tree) {
    const auto it = known.find(section);
    if (it == known.end()) throw InputError(path.string() + ": unknown section [" + section + "]");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw InputError(path.string() + ": unknown key '" + section + "." + key + "'");
  }
}

class Reader {
public:
  Reader(const ptree& tree, const std::filesystem::path& path) : tree_(tree), path_(path) {}

  bool has(const std::string& key) const {
    const auto v = tree_.get_optional<std::string>(key);
    return v && !trim(*v).empty();
  }

  std::string text(const std::string& key, const std::string& fallback = {}) const {
    const auto v = tree_.get_optional<std::string>(key);
    return v ? std::string(trim(*v)) : fallback;
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_number(text(key), path_.string() + ": " + key);
  }

  int integer(const std::string& key, int fallback) const {
    const double v = number(key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw InputError(path_.string() + ": " + key + " must be an integer");
    return static_cast<int>(v);
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto v = text(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InputError(path_.string() + ": " + key + " must be true or false");
  }

private:
  const ptree& tree_;
  std::filesystem::path path_;
};

inline std::filesystem::path resolve_input(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

inline void require_file(const std::filesystem::path& p, const std::string& key) {
  if (!std::filesystem::is_regular_file(p)) throw InputError("input file not found (" + key + "): " + p.string());
}

}  // namespace detail

/// Reads a scenario file into a config in physical units. Keys left out keep
/// their default values; unknown sections and keys are rejected.
inline ScenarioConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) throw InputError("config file not found: " + path.string());
  detail::ptree tree;
  try {
    boost::property_tree::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InputError("config parse error: " + std::string(e.what()));
  }
  detail::check_keys(tree, path);
  const detail::Reader r(tree, path);

  ScenarioConfig c;
  const auto tag = r.text("scenario.tag", "pre_asphalt");
  if (tag == "pre_asphalt") c.tag = ScenarioTag::pre_asphalt;
  else if (tag == "post_asphalt") c.tag = ScenarioTag::post_asphalt;
  else throw InputError(path.string() + ": scenario.tag must be pre_asphalt or post_asphalt, got '" + tag + "'");

  auto& g = c.geometry;
  g.width = r.number("geometry.width", g.width);
  g.height = r.number("geometry.height", g.height);
  g.road_width = r.number("geometry.road_width", g.road_width);
  const double box_w = r.number("geometry.box_width", g.emission_box.width());
  const double box_h = r.number("geometry.box_height", g.emission_box.height());
  const double lift = r.number("geometry.box_lift", g.emission_box.y0);
  g.emission_box = Geometry::centred_box(g.width, box_w, box_h, lift);
  g.probe = {r.number("geometry.probe_x", 0.5 * g.width), r.number("geometry.probe_y", g.probe.y)};

  auto& p = c.physical;
  p.diffusion = units::diffusion_from_cm2_per_s(r.number("physical.D", units::diffusion_to_cm2_per_s(p.diffusion)));
  p.length = r.number("physical.L", p.length);
  p.u_r = r.number("physical.u_r", p.u_r);
  p.u_0 = r.number("physical.u_0", p.u_0);
  p.u_T = r.number("physical.u_T", p.u_T);
  p.sigma = r.number("physical.sigma", p.sigma);
  p.f_r = r.number("physical.f_r", p.f_r);
  p.s_r = r.number("physical.s_r", p.s_r);
  p.set_kappa_per_day(r.number("physical.kappa", p.kappa_per_day()));
  p.gamma = r.number("physical.gamma", c.tag == ScenarioTag::post_asphalt ? 3.0e-3 : 0.0);
  // A present-but-empty A_f falls back to f_r.
  if (tree.get_optional<std::string>("physical.A_f"))
    p.A_f_override = r.has("physical.A_f") ? std::optional<double>(r.number("physical.A_f", 0.0)) : std::nullopt;
  if (r.has("physical.robin_coeff")) p.robin_override = r.number("physical.robin_coeff", 0.0);
  if (c.tag == ScenarioTag::pre_asphalt && p.gamma != 0.0)
    throw InvalidParameter("gamma", "the pre_asphalt scenario fixes gamma = 0");

  auto& n = c.numerics;
  n.nx = r.integer("numerics.nx", n.nx);
  n.ny = r.integer("numerics.ny", n.ny);
  n.steps_per_day = r.integer("numerics.steps_per_day", n.steps_per_day);
  n.theta = r.number("numerics.theta", n.theta);
  n.solver_tolerance = r.number("numerics.solver_tolerance", n.solver_tolerance);
  n.warm_start = r.flag("numerics.warm_start", n.warm_start);

  const auto base = path.parent_path();
  auto& in = c.inputs;
  for (const char* key : {"traffic", "solar"})
    if (!r.has(std::string("inputs.") + key)) throw InputError(path.string() + ": missing key 'inputs." + key + "'");
  in.traffic = detail::resolve_input(base, r.text("inputs.traffic"));
  in.solar = detail::resolve_input(base, r.text("inputs.solar"));
  detail::require_file(in.traffic, "inputs.traffic");
  detail::require_file(in.solar, "inputs.solar");
  if (r.has("inputs.measurements")) {
    in.measurements = detail::resolve_input(base, r.text("inputs.measurements"));
    detail::require_file(in.measurements, "inputs.measurements");
  }
  in.window_start = r.text("inputs.window_start");
  in.window_end = r.text("inputs.window_end");

  c.validate();
  return c;
}

/// Writes a config in the same format and units load_config reads.
inline void write_config(std::ostream& os, const ScenarioConfig& cfg) {
  if (cfg.dimensionless) throw InvalidParameter("scenario", "write_config expects physical units");
  const auto& g = cfg.geometry;
  const auto& p = cfg.physical;
  const auto& n = cfg.numerics;
  const auto num = [](double v) { return format_double(v); };
  os << "[scenario]\ntag = " << to_string(cfg.tag) << "\n\n";
  os << "[geometry]\nwidth = " << num(g.width) << "\nheight = " << num(g.height)
     << "\nroad_width = " << num(g.road_width) << "\nbox_width = " << num(g.emission_box.width())
     << "\nbox_height = " << num(g.emission_box.height()) << "\nbox_lift = " << num(g.emission_box.y0)
     << "\nprobe_x = " << num(g.probe.x) << "\nprobe_y = " << num(g.probe.y) << "\n\n";
  os << "[physical]\nD = " << num(units::diffusion_to_cm2_per_s(p.diffusion)) << "\nL = " << num(p.length)
     << "\nu_r = " << num(p.u_r) << "\nu_0 = " << num(p.u_0) << "\nu_T = " << num(p.u_T)
     << "\nsigma = " << num(p.sigma) << "\nf_r = " << num(p.f_r) << "\ns_r = " << num(p.s_r)
     << "\nkappa = " << num(p.kappa_per_day()) << "\ngamma = " << num(p.gamma) << "\nA_f = "
     << (p.A_f_override ? num(*p.A_f_override) : "") << "\n";
  if (p.robin_override) os << "robin_coeff = " << num(*p.robin_override) << "\n";
  os << "\n[numerics]\nnx = " << n.nx << "\nny = " << n.ny << "\nsteps_per_day = " << n.steps_per_day
     << "\ntheta = " << num(n.theta) << "\nsolver_tolerance = " << num(n.solver_tolerance)
     << "\nwarm_start = " << (n.warm_start ? "true" : "false") << "\n\n";
  os << "[inputs]\ntraffic = " << cfg.inputs.traffic.string() << "\nsolar = " << cfg.inputs.solar.string() << "\n";
  if (!cfg.inputs.measurements.empty()) os << "measurements = " << cfg.inputs.measurements.string() << "\n";
  if (!cfg.inputs.window_start.empty()) os << "window_start = " << cfg.inputs.window_start << "\n";
  if (!cfg.inputs.window_end.empty()) os << "window_end = " << cfg.inputs.window_end << "\n";
}

/// m(t) and s(t) for a loaded config.
struct ScenarioSignals {
  DailySignal traffic;
  DailySignal solar;
  double traffic_total = 0.0;  ///< raw vehicles per day
};

inline ScenarioSignals load_signals(const ScenarioConfig& cfg) {
  ScenarioSignals s{build_traffic_density(read_traffic_csv(cfg.inputs.traffic)),
                    build_solar_factor(read_solar_csv(cfg.inputs.solar)), 0.0};
  s.traffic_total = s.traffic.raw_total();
  return s;
}

inline DateRange measurement_window(const ScenarioConfig& cfg) {
  return {cfg.inputs.window_start, cfg.inputs.window_end};
}

}  // namespace noxsim::io
