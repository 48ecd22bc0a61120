#include "celldim/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

#include "json.hpp"

namespace celldim {
namespace {

using json = nlohmann::ordered_json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double kbps(double bps) { return bps / 1e3; }

void require_rows(bool empty, char const* what) {
  if (empty) throw std::invalid_argument(std::string("emit: no ") + what + " records to write");
}

json series(std::vector<double> const& x, std::vector<double> const& y) {
  json s;
  s["x"] = json::array();
  s["y"] = json::array();
  for (double const v : x) s["x"].push_back(number(v));
  for (double const v : y) s["y"].push_back(number(v));
  return s;
}

std::vector<std::filesystem::path> write_outputs(std::filesystem::path const& dir, std::string const& stem,
                                                 OutputFormat format, std::string const& csv,
                                                 std::string const& json_text) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  if (format != OutputFormat::json) {
    out.push_back(dir / (stem + ".csv"));
    write_file_atomic(out.back(), csv);
  }
  if (format != OutputFormat::csv) {
    out.push_back(dir / (stem + ".json"));
    write_file_atomic(out.back(), json_text);
  }
  return out;
}

json header(char const* schema, RunInfo const& info) {
  json j;
  j["schema"] = schema;
  j["experiment"] = info.experiment;
  j["scenario"] = info.scenario;
  j["seed"] = info.seed;
  return j;
}

}  // namespace

void write_file_atomic(std::filesystem::path const& path, std::string const& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto const res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(SweepResult const& result) {
  std::ostringstream out;
  out << "rho_bar_kbps,theta_bar,n_bar,r_bar_kbps,converged,iters,residual\n";
  for (SweepRecord const& row : result.rows) {
    MeanCell const& c = row.point.cell;
    // On the per-cell axis the pooled rho_bar equals the request up to round-off.
    double const rho_bar = result.axis == TrafficAxis::per_cell ? row.traffic : c.rho_bar;
    out << format_number(kbps(rho_bar)) << ',' << format_number(c.theta_bar) << ','
        << format_number(c.n_bar) << ',' << format_number(kbps(c.r_bar)) << ','
        << (row.point.converged ? "true" : "false") << ',' << row.point.iterations << ','
        << format_number(row.point.residual) << '\n';
  }
  return out.str();
}

std::string sweep_json(SweepResult const& result, RunInfo const& info) {
  json j = header("celldim.sweep/1", info);
  j["traffic_axis"] = result.axis == TrafficAxis::per_cell ? "rho_bar_kbps" : "rho_kbps_per_km2";
  j["realizations"] = result.realizations;
  j["interior_cells"] = result.interior_cells;
  j["mean_cell_surface_km2"] = result.mean_cell_surface_km2;
  j["all_converged"] = result.all_converged();
  std::vector<double> x, theta, r, n;
  json rows = json::array();
  for (SweepRecord const& row : result.rows) {
    MeanCell const& c = row.point.cell;
    json e;
    e["rho_bar_kbps"] = number(kbps(result.axis == TrafficAxis::per_cell ? row.traffic : c.rho_bar));
    e["pooled_rho_bar_kbps"] = number(kbps(c.rho_bar));
    e["rho_kbps_per_km2"] = number(kbps(row.rho_surface));
    e["theta_bar"] = number(c.theta_bar);
    e["rho_c_bar_kbps"] = number(kbps(c.rho_c_bar));
    e["r_bar_kbps"] = number(kbps(c.r_bar));
    e["n_bar"] = number(c.n_bar);
    e["n_bar_unbounded"] = std::isinf(c.n_bar);
    e["converged"] = row.point.converged;
    e["iters"] = row.point.iterations;
    e["residual"] = number(row.point.residual);
    if (row.analytic) {
      e["analytic_theta_bar"] = number(row.analytic->theta_bar);
      e["analytic_converged"] = row.analytic->converged;
    }
    rows.push_back(e);
    x.push_back(kbps(result.axis == TrafficAxis::per_cell ? row.traffic : c.rho_bar));
    theta.push_back(c.theta_bar);
    r.push_back(kbps(c.r_bar));
    n.push_back(c.n_bar);
  }
  j["rows"] = rows;
  j["series"]["theta_bar_vs_rho_bar_kbps"] = series(x, theta);
  j["series"]["r_bar_kbps_vs_rho_bar_kbps"] = series(x, r);
  j["series"]["n_bar_vs_rho_bar_kbps"] = series(x, n);
  return j.dump(2) + "\n";
}

std::string dimension_csv(std::vector<DimensionRecord> const& records) {
  std::ostringstream out;
  out << "rho_bar_kbps,min_bandwidth_MHz,feasible,variant\n";
  for (DimensionRecord const& r : records) {
    out << format_number(kbps(r.rho_bar_bps)) << ','
        << (r.min_bandwidth_hz ? format_number(*r.min_bandwidth_hz / 1e6) : std::string()) << ','
        << (r.feasible() ? "true" : "false") << ',' << r.variant << '\n';
  }
  return out.str();
}

std::string dimension_json(std::vector<DimensionRecord> const& records, DimensionConfig const& config,
                           RunInfo const& info) {
  json j = header("celldim.dimension/1", info);
  j["target_Mbps"] = config.target_bps / 1e6;
  j["bandwidth_range_MHz"] = {config.w_min_hz / 1e6, config.w_max_hz / 1e6};
  j["tolerance_MHz"] = config.tolerance_hz / 1e6;
  json rows = json::array();
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_variant;
  std::vector<std::string> order;
  for (DimensionRecord const& r : records) {
    json e;
    e["variant"] = r.variant;
    e["rho_bar_kbps"] = kbps(r.rho_bar_bps);
    e["min_bandwidth_MHz"] = r.min_bandwidth_hz ? json(*r.min_bandwidth_hz / 1e6) : json(nullptr);
    e["feasible"] = r.feasible();
    e["r_bar_kbps"] = number(kbps(r.r_bar_bps));
    e["non_monotone"] = r.non_monotone;
    e["converged"] = r.converged;
    e["evaluations"] = r.evaluations;
    rows.push_back(e);
    if (!by_variant.contains(r.variant)) order.push_back(r.variant);
    auto& s = by_variant[r.variant];
    s.first.push_back(kbps(r.rho_bar_bps));
    s.second.push_back(r.min_bandwidth_hz ? *r.min_bandwidth_hz / 1e6 : std::nan(""));
  }
  j["rows"] = rows;
  for (std::string const& v : order) {
    j["series"]["min_bandwidth_MHz_vs_rho_bar_kbps"][v] = series(by_variant[v].first, by_variant[v].second);
  }
  return j.dump(2) + "\n";
}

std::string scale_check_csv(ScaleCheckResult const& result) {
  std::ostringstream out;
  out << "alpha,max_theta_dev,max_rho_c_dev,max_r_dev,max_n_dev,cells\n";
  for (ScalingDeviation const& d : result.rows) {
    out << format_number(d.alpha) << ',' << format_number(d.theta) << ',' << format_number(d.rho_c) << ','
        << format_number(d.r) << ',' << format_number(d.n_users) << ',' << d.cells << '\n';
  }
  return out.str();
}

std::string scale_check_json(ScaleCheckResult const& result, RunInfo const& info) {
  json j = header("celldim.scale-check/1", info);
  j["mode"] = result.fresh_seed_mode ? "fresh-seed" : "exact";
  j["rho_kbps_per_km2"] = kbps(result.rho_bps_per_km2);
  json rows = json::array();
  for (ScalingDeviation const& d : result.rows) {
    json e;
    e["alpha"] = d.alpha;
    e["max_theta_dev"] = number(d.theta);
    e["max_rho_dev"] = number(d.rho);
    e["max_rho_c_dev"] = number(d.rho_c);
    e["max_r_dev"] = number(d.r);
    e["max_n_dev"] = number(d.n_users);
    e["cells"] = d.cells;
    e["converged"] = d.converged;
    rows.push_back(e);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string composite_csv(CompositeRun const& run) {
  std::ostringstream out;
  out << "zone,rho_bar_kbps,theta_bar,r_bar_kbps,theta_gap,r_gap\n";
  for (ZoneCurve const& z : run.result.zones) {
    for (std::size_t j = 0; j < z.curve.size(); ++j) {
      MeanCell const& c = z.curve[j].cell;
      out << z.name << ',' << format_number(kbps(run.rho_bar_bps.at(j))) << ',' << format_number(c.theta_bar) << ','
          << format_number(kbps(c.r_bar)) << ',';
      if (run.gap) out << format_number(run.gap->theta_per_point[j]) << ',' << format_number(run.gap->r_per_point[j]);
      else out << ',';
      out << '\n';
    }
  }
  return out.str();
}

std::string composite_json(CompositeRun const& run, RunInfo const& info) {
  json j = header("celldim.composite/1", info);
  j["warnings"] = run.result.warnings;
  if (run.gap) {
    j["max_theta_gap"] = number(run.gap->theta);
    j["max_r_gap"] = number(run.gap->r);
  } else {
    j["max_theta_gap"] = nullptr;
    j["max_r_gap"] = nullptr;
  }
  json zones = json::array();
  for (ZoneCurve const& z : run.result.zones) {
    json e;
    e["name"] = z.name;
    e["K_per_km"] = z.k_per_km;
    e["beta"] = z.beta;
    e["spacing_km"] = z.spacing_km;
    e["kd_product"] = z.kd_product;
    std::vector<double> x, theta, r;
    json points = json::array();
    for (std::size_t k = 0; k < z.curve.size(); ++k) {
      CurvePoint const& p = z.curve[k];
      json q;
      q["rho_bar_kbps"] = number(kbps(run.rho_bar_bps.at(k)));
      q["pooled_rho_bar_kbps"] = number(kbps(p.cell.rho_bar));
      q["theta_bar"] = number(p.cell.theta_bar);
      q["rho_c_bar_kbps"] = number(kbps(p.cell.rho_c_bar));
      q["r_bar_kbps"] = number(kbps(p.cell.r_bar));
      q["n_bar"] = number(p.cell.n_bar);
      q["converged"] = p.converged;
      q["iters"] = p.iterations;
      points.push_back(q);
      x.push_back(kbps(run.rho_bar_bps.at(k)));
      theta.push_back(p.cell.theta_bar);
      r.push_back(kbps(p.cell.r_bar));
    }
    e["points"] = points;
    e["series"]["theta_bar_vs_rho_bar_kbps"] = series(x, theta);
    e["series"]["r_bar_kbps_vs_rho_bar_kbps"] = series(x, r);
    zones.push_back(e);
  }
  j["zones"] = zones;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit(SweepResult const& result, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format) {
  require_rows(result.rows.empty(), "sweep");
  return write_outputs(dir, "sweep", format, sweep_csv(result), sweep_json(result, info));
}

std::vector<std::filesystem::path> emit(std::vector<DimensionRecord> const& records,
                                        DimensionConfig const& config, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format) {
  require_rows(records.empty(), "dimension");
  return write_outputs(dir, "dimension", format, dimension_csv(records), dimension_json(records, config, info));
}

std::vector<std::filesystem::path> emit(ScaleCheckResult const& result, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format) {
  require_rows(result.rows.empty(), "scale-check");
  return write_outputs(dir, "scale_check", format, scale_check_csv(result), scale_check_json(result, info));
}

std::vector<std::filesystem::path> emit(CompositeRun const& run, RunInfo const& info,
                                        std::filesystem::path const& dir, OutputFormat format) {
  require_rows(run.result.zones.empty(), "composite");
  return write_outputs(dir, "composite", format, composite_csv(run), composite_json(run, info));
}

}  // namespace celldim
