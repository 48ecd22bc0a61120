#include "celldim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace celldim {
namespace {

using json = nlohmann::json;
using FlatMap = std::map<std::string, json>;

void flatten(json const& node, std::string const& prefix, FlatMap& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (prefix.empty()) throw ConfigError("scenario: top level must be an object");
  if (out.contains(prefix)) throw ConfigError("scenario: key '" + prefix + "' given twice");
  out.emplace(prefix, node);
}

/// Consumes keys from a flattened scenario; whatever is left is unknown.
class KeyReader {
 public:
  explicit KeyReader(FlatMap map) : map_(std::move(map)) {}

  bool has(std::string const& key) const { return map_.contains(key); }

  bool has_prefix(std::string const& prefix) const {
    auto it = map_.lower_bound(prefix + ".");
    return it != map_.end() && it->first.starts_with(prefix + ".");
  }

  template <class T>
  std::optional<T> take(std::string const& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    json const value = std::move(it->second);
    map_.erase(it);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!value.is_number()) throw ConfigError("");
        double const v = value.get<double>();
        if (!std::isfinite(v)) throw ConfigError("");
        return v;
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!value.is_boolean()) throw ConfigError("");
        return value.get<bool>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!value.is_string()) throw ConfigError("");
        return value.get<std::string>();
      } else if constexpr (std::is_same_v<T, std::uint64_t> || std::is_same_v<T, int> ||
                           std::is_same_v<T, std::size_t>) {
        if (!value.is_number_integer() || (value.is_number_integer() && value.get<long long>() < 0)) {
          throw ConfigError("");
        }
        return value.get<T>();
      } else {
        return value.get<T>();
      }
    } catch (ConfigError const&) {
      throw ConfigError("scenario: key '" + key + "' has the wrong type");
    } catch (json::exception const&) {
      throw ConfigError("scenario: key '" + key + "' has the wrong type");
    }
  }

  json take_raw(std::string const& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return json();
    json v = std::move(it->second);
    map_.erase(it);
    return v;
  }

  /// Number, array of numbers, or {start, stop, step}.
  std::vector<double> take_grid(std::string const& key) {
    if (has_prefix(key)) {
      auto start = take<double>(key + ".start");
      auto stop = take<double>(key + ".stop");
      auto step = take<double>(key + ".step");
      if (!start || !stop || !step || !(*step > 0.0) || *stop < *start) {
        throw ConfigError("scenario: '" + key + "' range needs start <= stop and step > 0");
      }
      std::vector<double> out;
      auto const count = static_cast<long>(std::floor((*stop - *start) / *step + 1e-9));
      for (long i = 0; i <= count; ++i) out.push_back(*start + static_cast<double>(i) * *step);
      return out;
    }
    json const v = take_raw(key);
    if (v.is_null()) return {};
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw ConfigError("scenario: key '" + key + "' must be a number or an array");
    std::vector<double> out;
    for (json const& e : v) {
      if (!e.is_number()) throw ConfigError("scenario: key '" + key + "' must hold numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish(std::string const& context = "scenario") const {
    if (map_.empty()) return;
    std::string keys;
    for (auto const& [k, v] : map_) keys += (keys.empty() ? "" : ", ") + k;
    throw ConfigError(context + ": unknown key(s): " + keys);
  }

 private:
  FlatMap map_;
};

void ensure(bool ok, std::string const& what) {
  if (!ok) throw ConfigError("scenario: " + what);
}

template <class E>
E parse_enum(std::optional<std::string> const& value, std::string const& key,
             std::initializer_list<std::pair<char const*, E>> names, E fallback) {
  if (!value) return fallback;
  for (auto const& [name, e] : names) {
    if (*value == name) return e;
  }
  throw ConfigError("scenario: key '" + key + "' has unknown value '" + *value + "'");
}

void parse_geometry(KeyReader& in, GeometryConfig& g, std::uint64_t seed) {
  if (auto v = in.take<double>("geometry.intensity_per_km2")) g.intensity_per_km2 = *v;
  g.spacing_km = in.take<double>("geometry.spacing_km");
  if (in.has("geometry.window_km")) {
    auto const w = in.take_grid("geometry.window_km");
    ensure(w.size() == 1 || w.size() == 2, "geometry.window_km must be one or two numbers");
    g.window_width_km = w[0];
    g.window_height_km = w.size() == 2 ? w[1] : w[0];
  }
  g.window_spacings = in.take<double>("geometry.window_spacings");
  g.guard_km = in.take<double>("geometry.guard_km");
  g.resolution_m = in.take<double>("geometry.resolution_m");
  g.seed = in.take<std::uint64_t>("geometry.seed").value_or(mix_seed(seed, 1));
  if (auto v = in.take<std::size_t>("geometry.realizations")) g.realizations = *v;
  json const positions = in.take_raw("geometry.deterministic_positions");
  if (!positions.is_null()) {
    ensure(positions.is_array(), "geometry.deterministic_positions must be an array of [x, y]");
    for (json const& p : positions) {
      ensure(p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number(),
             "geometry.deterministic_positions entries must be [x_km, y_km]");
      g.deterministic_positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }

  ensure(g.intensity_per_km2 > 0.0, "geometry.intensity_per_km2 must be positive");
  ensure(!g.spacing_km || *g.spacing_km > 0.0, "geometry.spacing_km must be positive");
  ensure(!g.window_width_km || (*g.window_width_km > 0.0 && *g.window_height_km > 0.0),
         "geometry.window_km must be positive");
  ensure(!g.window_spacings || *g.window_spacings > 0.0, "geometry.window_spacings must be positive");
  ensure(!(g.window_spacings && g.window_width_km), "give either geometry.window_km or geometry.window_spacings");
  ensure(!g.guard_km || *g.guard_km >= 0.0, "geometry.guard_km must be non-negative");
  ensure(!g.resolution_m || *g.resolution_m > 0.0, "geometry.resolution_m must be positive");
  ensure(g.realizations >= 1, "geometry.realizations must be at least 1");
  ensure(g.deterministic_positions.empty() || g.window_width_km,
         "geometry.deterministic_positions needs geometry.window_km");
}

void parse_propagation(KeyReader& in, PropagationModel& m, std::uint64_t seed) {
  bool const cost = in.has("pathloss.A") || in.has("pathloss.B");
  bool const direct = in.has("pathloss.K") || in.has("pathloss.beta");
  ensure(!(cost && direct), "give either pathloss.{A,B} or pathloss.{K,beta}");
  if (cost) {
    auto a = in.take<double>("pathloss.A");
    auto b = in.take<double>("pathloss.B");
    ensure(a && b, "pathloss.A and pathloss.B must be given together");
    ensure(*b > 20.0, "pathloss.B must exceed 20");
    PathLossParams const p = params_from_cost_hata({*a, *b});
    m.pathloss.k_per_km = p.k_per_km;
    m.pathloss.beta = p.beta;
  } else {
    if (auto v = in.take<double>("pathloss.K")) m.pathloss.k_per_km = *v;
    if (auto v = in.take<double>("pathloss.beta")) m.pathloss.beta = *v;
  }
  if (auto v = in.take<double>("pathloss.min_distance_m")) m.pathloss.min_distance_km = *v / 1000.0;
  auto f0 = in.take<double>("pathloss.reference_frequency_GHz");
  auto f = in.take<double>("pathloss.frequency_GHz");
  ensure(f0.has_value() == f.has_value(),
         "pathloss.reference_frequency_GHz and pathloss.frequency_GHz go together");
  if (f0) {
    ensure(*f0 > 0.0 && *f > 0.0, "pathloss frequencies must be positive");
    m.pathloss.k_per_km = scale_k_to_frequency(m.pathloss.k_per_km, *f0, *f, m.pathloss.beta);
  }

  m.shadowing.mode = parse_enum<ShadowingMode>(
      in.take<std::string>("shadowing.mode"), "shadowing.mode",
      {{"off", ShadowingMode::off}, {"iid", ShadowingMode::iid}, {"correlated", ShadowingMode::correlated}},
      ShadowingMode::off);
  if (auto v = in.take<double>("shadowing.sigma_dB")) m.shadowing.sigma_db = *v;
  if (auto v = in.take<double>("shadowing.corr_dist_m")) m.shadowing.corr_dist_km = *v / 1000.0;
  m.shadowing.seed = in.take<std::uint64_t>("shadowing.seed").value_or(mix_seed(seed, 2));

  AntennaConfig& a = m.antenna;
  a.mode = parse_enum<AntennaMode>(in.take<std::string>("antenna.mode"), "antenna.mode",
                                   {{"omni", AntennaMode::omni}, {"trisector", AntennaMode::trisector}},
                                   AntennaMode::omni);
  if (auto v = in.take<double>("antenna.az_beamwidth_deg")) a.az_beamwidth_deg = *v;
  if (auto v = in.take<double>("antenna.el_beamwidth_deg")) a.el_beamwidth_deg = *v;
  if (auto v = in.take<double>("antenna.front_back_limit_dB")) a.front_back_limit_db = *v;
  if (auto v = in.take<double>("antenna.side_lobe_limit_dB")) a.side_lobe_limit_db = *v;
  if (auto v = in.take<double>("antenna.max_gain_dBi")) a.max_gain_dbi = *v;
  if (auto v = in.take<double>("antenna.downtilt_deg")) a.downtilt_deg = *v;
  if (auto v = in.take<double>("antenna.bs_height_m")) a.bs_height_m = *v;
  if (auto v = in.take<double>("antenna.ue_height_m")) a.ue_height_m = *v;
  if (in.has("antenna.sector_azimuths_deg")) {
    auto const az = in.take_grid("antenna.sector_azimuths_deg");
    ensure(az.size() == 3, "antenna.sector_azimuths_deg must hold three angles");
    std::copy(az.begin(), az.end(), a.sector_azimuths_deg.begin());
  }

  if (auto v = in.take<double>("link.tx_power_dBm")) m.link.tx_power_dbm = *v;
  if (auto v = in.take<double>("link.pilot_fraction")) m.link.pilot_fraction = *v;
  if (auto v = in.take<double>("link.noise_figure_dB")) m.link.noise_figure_db = *v;
  if (auto v = in.take<bool>("link.pilot_for_selection")) m.link.pilot_for_selection = *v;
}

void parse_rate(KeyReader& in, RateModel& r) {
  r.technology = parse_enum<Technology>(in.take<std::string>("rate.technology"), "rate.technology",
                                        {{"3G", Technology::three_g}, {"4G", Technology::four_g}},
                                        Technology::three_g);
  if (auto v = in.take<double>("rate.bandwidth_MHz")) r.bandwidth_hz = *v * 1e6;
  if (auto v = in.take<double>("rate.efficiency")) r.efficiency = *v;
  if (auto v = in.take<double>("rate.a")) r.gap_a = *v;
  if (auto v = in.take<double>("rate.b")) r.efficiency_b = *v;
}

void parse_compute(KeyReader& in, Setup& s, std::optional<unsigned> workers_override) {
  s.network.storage = parse_enum<GainStorage>(
      in.take<std::string>("compute.gain_storage"), "compute.gain_storage",
      {{"auto", GainStorage::automatic}, {"table", GainStorage::materialized}, {"on-the-fly", GainStorage::on_the_fly}},
      GainStorage::automatic);
  if (auto v = in.take<double>("compute.memory_budget_MB")) {
    ensure(*v > 0.0, "compute.memory_budget_MB must be positive");
    s.network.memory_budget_bytes = static_cast<std::size_t>(*v * 1024.0 * 1024.0);
  }
  if (auto v = in.take<int>("compute.workers")) s.network.workers = static_cast<unsigned>(std::max(1, *v));
  if (workers_override) s.network.workers = std::max(1u, *workers_override);
}

Setup parse_setup(KeyReader& in, std::uint64_t seed, std::optional<unsigned> workers_override) {
  Setup s;
  parse_geometry(in, s.geometry, seed);
  parse_propagation(in, s.propagation, seed);
  s.propagation.link.tx_power_dbm = s.propagation.link.tx_power_dbm;
  parse_rate(in, s.rate);
  s.noise_dbm = in.take<double>("link.noise_dBm");
  parse_compute(in, s, workers_override);
  try {
    s.propagation.validate();
    s.rate.validate();
  } catch (std::invalid_argument const& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return s;
}

Scenario parse_flat(FlatMap flat, std::optional<std::uint64_t> seed_override,
                    std::optional<unsigned> workers_override, bool allow_variants);

std::vector<DimensionVariant> parse_variants(json const& variants, FlatMap const& base,
                                             std::optional<std::uint64_t> seed_override,
                                             std::optional<unsigned> workers_override) {
  ensure(variants.is_array(), "dimension.variants must be an array of objects");
  std::vector<DimensionVariant> out;
  for (json const& v : variants) {
    ensure(v.is_object() && v.contains("name") && v["name"].is_string(),
           "every dimension variant needs a string 'name'");
    FlatMap overrides;
    json body = v;
    body.erase("name");
    if (!body.empty()) flatten(body, "", overrides);
    FlatMap merged = base;
    for (auto& [k, value] : overrides) merged[k] = value;
    Scenario const sub = parse_flat(std::move(merged), seed_override, workers_override, false);
    out.push_back({v["name"].get<std::string>(), sub.setup});
  }
  return out;
}

std::vector<ZoneConfig> parse_zones(json const& zones) {
  ensure(zones.is_array(), "zones must be an array of objects");
  std::vector<ZoneConfig> out;
  for (json const& z : zones) {
    ensure(z.is_object(), "zones entries must be objects");
    FlatMap flat;
    flatten(z, "", flat);
    KeyReader in(std::move(flat));
    ZoneConfig zc;
    zc.name = in.take<std::string>("name").value_or("custom");
    auto a = in.take<double>("A");
    auto b = in.take<double>("B");
    zc.k_per_km = in.take<double>("K");
    zc.beta = in.take<double>("beta");
    auto spacing = in.take<double>("spacing_km");
    in.finish("zone '" + zc.name + "'");
    ensure(spacing && *spacing > 0.0, "zone '" + zc.name + "' needs spacing_km > 0");
    zc.spacing_km = *spacing;
    ensure((a && b) != (zc.k_per_km.has_value() || zc.beta.has_value()) || (a && b && !zc.k_per_km),
           "zone '" + zc.name + "' needs either A, B or K, beta");
    if (a || b) {
      ensure(a && b && !zc.k_per_km, "zone '" + zc.name + "' needs both A and B");
      ensure(*b > 20.0, "zone '" + zc.name + "': B must exceed 20");
      zc.cost_hata = CostHataZone{*a, *b};
    } else {
      ensure(zc.k_per_km && zc.beta && *zc.k_per_km > 0.0 && *zc.beta > 2.0,
             "zone '" + zc.name + "' needs K > 0 and beta > 2");
    }
    out.push_back(std::move(zc));
  }
  return out;
}

Scenario parse_flat(FlatMap flat, std::optional<std::uint64_t> seed_override,
                    std::optional<unsigned> workers_override, bool allow_variants) {
  FlatMap const base = [&] {
    FlatMap b = flat;
    b.erase("dimension.variants");
    return b;
  }();
  KeyReader in(std::move(flat));
  Scenario sc;
  sc.experiment_declared = in.has("experiment");
  sc.experiment = parse_enum<Experiment>(in.take<std::string>("experiment"), "experiment",
                                         {{"sweep", Experiment::sweep},
                                          {"scale-check", Experiment::scale_check},
                                          {"composite", Experiment::composite},
                                          {"dimension", Experiment::dimension}},
                                         Experiment::sweep);
  sc.seed = in.take<std::uint64_t>("seed").value_or(1);
  if (seed_override) sc.seed = *seed_override;
  if (auto v = in.take<std::string>("output.dir")) sc.output_dir = *v;
  sc.setup = parse_setup(in, sc.seed, workers_override);

  for (double& v : sc.traffic.rho_bar_bps = in.take_grid("traffic.rho_bar_kbps")) v *= 1e3;
  for (double& v : sc.traffic.rho_bps_per_km2 = in.take_grid("traffic.rho_kbps_per_km2")) v *= 1e3;
  ensure(sc.traffic.rho_bar_bps.empty() || sc.traffic.rho_bps_per_km2.empty(),
         "give either traffic.rho_bar_kbps or traffic.rho_kbps_per_km2");
  for (double const v : sc.traffic.rho_bar_bps) ensure(v >= 0.0, "traffic values must be non-negative");
  for (double const v : sc.traffic.rho_bps_per_km2) ensure(v >= 0.0, "traffic values must be non-negative");

  if (auto v = in.take<double>("solver.tol")) sc.solver.tol = *v;
  if (auto v = in.take<int>("solver.max_iter")) sc.solver.max_iter = *v;
  if (auto v = in.take<double>("solver.damping")) sc.solver.damping = *v;
  if (auto v = in.take<bool>("solver.oscillation_fallback")) sc.solver.oscillation_fallback = *v;
  sc.solver.init = parse_enum<LoadInit>(in.take<std::string>("solver.init"), "solver.init",
                                        {{"all-one", LoadInit::all_one}, {"all-zero", LoadInit::all_zero}},
                                        LoadInit::all_one);
  sc.solver.workers = sc.setup.network.workers;
  try {
    sc.solver.validate();
  } catch (std::invalid_argument const& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }

  if (auto v = in.take<std::size_t>("meancell.mc_samples")) sc.meancell.samples = *v;
  if (auto v = in.take<double>("meancell.window_factor")) sc.meancell.window_factor = *v;
  if (auto v = in.take<double>("meancell.tol")) sc.meancell.tol = *v;
  if (auto v = in.take<bool>("meancell.analytic")) sc.meancell_analytic = *v;
  sc.meancell.seed = in.take<std::uint64_t>("meancell.seed").value_or(mix_seed(sc.seed, 3));
  sc.meancell.workers = sc.setup.network.workers;
  ensure(sc.meancell.samples >= 1, "meancell.mc_samples must be at least 1");
  ensure(sc.meancell.window_factor > 0.0, "meancell.window_factor must be positive");

  if (in.has("scaling.alphas")) sc.scaling.alphas = in.take_grid("scaling.alphas");
  for (double const a : sc.scaling.alphas) ensure(a > 0.0, "scaling.alphas must be positive");
  if (auto v = in.take<bool>("scaling.fresh_seed_mode")) sc.scaling.fresh_seed_mode = *v;
  if (auto v = in.take<double>("scaling.rho_kbps_per_km2")) sc.scaling.rho_bps_per_km2 = *v * 1e3;

  json const zones = in.take_raw("zones");
  if (!zones.is_null()) sc.zones = parse_zones(zones);
  if (auto v = in.take<bool>("composite.per_zone_beta")) sc.composite.per_zone_beta = *v;
  if (auto v = in.take<bool>("composite.shared_seeds")) sc.composite.shared_seeds = *v;
  if (auto v = in.take<double>("composite.kd_tolerance")) sc.composite.kd_tolerance = *v;

  DimensionConfig& dim = sc.dimension;
  if (auto v = in.take<double>("dimension.target_Mbps")) dim.target_bps = *v * 1e6;
  if (in.has("dimension.bandwidth_range_MHz")) {
    auto const range = in.take_grid("dimension.bandwidth_range_MHz");
    ensure(range.size() == 2, "dimension.bandwidth_range_MHz must be [min, max]");
    dim.w_min_hz = range[0] * 1e6;
    dim.w_max_hz = range[1] * 1e6;
  }
  if (auto v = in.take<double>("dimension.tolerance_MHz")) dim.tolerance_hz = *v * 1e6;
  if (auto v = in.take<std::size_t>("dimension.scan_points")) dim.scan_points = *v;
  for (double& v : dim.rho_bar_bps = in.take_grid("dimension.rho_bar_kbps")) v *= 1e3;
  ensure(dim.target_bps > 0.0, "dimension.target_Mbps must be positive");
  ensure(dim.w_min_hz > 0.0 && dim.w_min_hz < dim.w_max_hz, "dimension bandwidth range needs 0 < min < max");
  ensure(dim.tolerance_hz > 0.0, "dimension.tolerance_MHz must be positive");
  ensure(dim.scan_points >= 2, "dimension.scan_points must be at least 2");
  for (std::size_t i = 1; i < dim.rho_bar_bps.size(); ++i) {
    ensure(dim.rho_bar_bps[i] > dim.rho_bar_bps[i - 1], "dimension.rho_bar_kbps must be increasing");
  }
  json const variants = in.take_raw("dimension.variants");
  if (!variants.is_null()) {
    ensure(allow_variants, "dimension variants cannot be nested");
    dim.variants = parse_variants(variants, base, seed_override, workers_override);
  }

  in.finish();
  return sc;
}

}  // namespace

double GeometryConfig::intensity() const {
  return spacing_km ? 1.0 / (*spacing_km * *spacing_km) : intensity_per_km2;
}

double Setup::noise_w(double bandwidth_hz) const {
  if (noise_dbm) return dbm_to_watt(*noise_dbm);
  return dbm_to_watt(noise_power_dbm(bandwidth_hz, propagation.link.noise_figure_db));
}

double Setup::noise_w() const { return noise_w(rate.bandwidth_hz); }

HomogeneousSetup Setup::homogeneous() const {
  HomogeneousSetup h;
  h.intensity_per_km2 = geometry.intensity();
  double const spacing = 1.0 / std::sqrt(h.intensity_per_km2);
  if (geometry.window_width_km) {
    h.window_width_km = *geometry.window_width_km;
    h.window_height_km = *geometry.window_height_km;
  } else {
    h.window_width_km = geometry.window_spacings.value_or(20.0) * spacing;
    h.window_height_km = h.window_width_km;
  }
  h.guard_km = geometry.guard_km.value_or(-1.0);
  h.resolution_km = geometry.resolution_m ? *geometry.resolution_m / 1000.0 : 0.0;
  h.power_dbm = propagation.link.tx_power_dbm;
  h.propagation = propagation;
  h.seed = geometry.seed;
  h.realizations = geometry.realizations;
  return h;
}

std::vector<Network> realize(Setup const& setup) {
  if (setup.geometry.deterministic_positions.empty()) {
    return realize_networks(setup.homogeneous(), setup.network);
  }
  HomogeneousSetup const h = setup.homogeneous();
  Window window{h.window_width_km, h.window_height_km,
                setup.geometry.guard_km.value_or(0.0)};
  Deployment d = place_deterministic(setup.geometry.deterministic_positions, window, h.power_dbm);
  double const resolution = h.resolution_km > 0.0 ? h.resolution_km : default_resolution_km(d.intensity_per_km2);
  EvalGrid const grid = EvalGrid::covering(window, resolution);
  std::vector<Network> out;
  out.push_back(build_network(make_scene(std::move(d), grid, setup.propagation), setup.network));
  return out;
}

Scenario parse_scenario(std::string const& text, std::optional<std::uint64_t> seed_override,
                        std::optional<unsigned> workers_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::parse_error const& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario: top level must be an object");
  FlatMap flat;
  flatten(doc, "", flat);
  return parse_flat(std::move(flat), seed_override, workers_override, true);
}

Scenario load_scenario(std::string const& path, std::optional<std::uint64_t> seed_override,
                       std::optional<unsigned> workers_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), seed_override, workers_override);
}

char const* to_string(Experiment e) {
  switch (e) {
    case Experiment::sweep: return "sweep";
    case Experiment::scale_check: return "scale-check";
    case Experiment::composite: return "composite";
    case Experiment::dimension: return "dimension";
  }
  return "?";
}

}  // namespace celldim
