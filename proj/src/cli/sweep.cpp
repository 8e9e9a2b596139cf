#include "casimir/cli/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "casimir/error.hpp"
#include "casimir/plates_printed.hpp"
#include "casimir/sphere.hpp"

namespace casimir::cli {

namespace {

struct PlatePoint {
  double a;
  double sigma_bar;
  double ratio;
  double rapidity;
};

struct SpherePoint {
  double a;
  double sigma;
  double ratio;
};

std::vector<PlatePoint> plate_points(const PlatesGrid& g) {
  std::vector<PlatePoint> pts;
  for (double a : g.a)
    for (double sb : g.sigma_bar)
      for (double r : g.ratio)
        for (double eta : g.rapidity) pts.push_back({a, sb, r, eta});
  return pts;
}

std::vector<SpherePoint> sphere_points(const SphereGrid& g) {
  std::vector<SpherePoint> pts;
  for (double a : g.a)
    for (double s : g.sigma)
      for (double r : g.ratio) pts.push_back({a, s, r});
  return pts;
}

Direction2 direction(const PlatesGrid& g) { return {std::cos(g.direction), std::sin(g.direction)}; }

CutoffConfig plate_cutoff(const PlatesGrid& g, const PlatePoint& p) {
  return make_cutoff(p.sigma_bar, p.ratio, p.rapidity, direction(g));
}

SphereConfig sphere_config(const SweepSpec& spec, const SpherePoint& p) {
  SphereConfig c;
  c.a = p.a;
  c.sigma = p.sigma;
  c.Sigma = p.ratio * p.sigma;
  c.phi = spec.sphere.phi;
  c.l_max = spec.sphere.l_max;
  c.tol = spec.tol.sphere_tol;
  c.exec = Exec::serial;
  return c;
}

std::string component_name(std::array<int, 2> c) {
  return "stress_" + std::to_string(c[0]) + std::to_string(c[1]);
}

struct Value {
  double value = 0.0;
  double err = 0.0;
  bool converged = true;
};

Value nonconverged() { return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity(), false}; }

// Every value a plate pipeline can produce at one point, computed lazily.
class PlateEvaluator {
 public:
  PlateEvaluator(const SweepSpec& spec, const CutoffConfig& cfg, double a)
      : spec_(spec), cfg_(cfg), geom_(plate_geometry(a)) {}

  Value eval(const std::string& pipeline, Observable o, std::array<int, 2> comp) {
    const int mu = comp[0], nu = comp[1];
    if (pipeline == "closed") {
      switch (o) {
        case Observable::pressure: return {pressure(geom_, cfg_)};
        case Observable::energy_density: return {energy_density_area(geom_, cfg_)};
        case Observable::residual_eq10: return {pressure_energy_residual(geom_, cfg_)};
        case Observable::stress_component: return {stress_closed(geom_, cfg_, spec_.subtract)(mu, nu)};
        default: break;
      }
    } else if (pipeline == "printed") {
      switch (o) {
        case Observable::pressure: return {pressure_eq8(geom_, cfg_)};
        case Observable::energy_density: return {energy_eq9(geom_, cfg_)};
        case Observable::residual_eq10: return {residual_printed(geom_, cfg_)};
        case Observable::stress_component:
          return {(spec_.subtract ? stress_printed_subtracted(geom_, cfg_) : stress_printed_full(geom_, cfg_))(mu, nu)};
        default: break;
      }
    } else if (pipeline == "oracle") {
      const OracleResult& r = oracle();
      if (!r.converged) return nonconverged();
      const bool sub = o != Observable::stress_component || spec_.subtract;
      const StressTensor t = sub ? r.tensor - tensor_from_radial(f_infinity_radial(cfg_), cfg_.sigma()) : r.tensor;
      switch (o) {
        case Observable::pressure: return {t(3, 3), r.abs_error_estimate};
        case Observable::energy_density: return {geom_.a * t(0, 0), geom_.a * r.abs_error_estimate};
        case Observable::stress_component: return {t(mu, nu), r.abs_error_estimate};
        default: break;
      }
    }
    throw std::invalid_argument("pipeline '" + pipeline + "' does not support " + to_string(o));
  }

 private:
  const OracleResult& oracle() {
    if (!oracle_) {
      OracleSpec os;
      os.quad_tol = spec_.tol.quad_tol;
      os.k_max_factor = spec_.tol.k_max_factor;
      os.exec = Exec::serial;
      oracle_ = stress_oracle(geom_, cfg_, os);
    }
    return *oracle_;
  }

  const SweepSpec& spec_;
  CutoffConfig cfg_;
  PlateGeometry geom_;
  std::optional<OracleResult> oracle_;
};

Value sphere_value(const std::string& pipeline, Observable o, const SphereConfig& c) {
  auto from = [](const SphereEstimate& e) { return Value{e.value, e.abs_error_estimate, e.converged}; };
  if (o == Observable::sphere_e_sigma && pipeline == "direct") return from(e_sigma(c, c.Sigma > 0.0));
  if (o == Observable::sphere_delta_e) {
    if (pipeline == "integral") return from(delta_e_integral(c));
    if (pipeline == "direct") return from(delta_e_direct(c));
    if (pipeline == "closed_paper") return {delta_e_closed_paper(c)};
    if (pipeline == "closed_derived") return {delta_e_closed_derived(c)};
  }
  throw std::invalid_argument("pipeline '" + pipeline + "' does not support " + to_string(o));
}

template <class F>
Value guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::TailTooFat) return nonconverged();
    throw;
  }
}

}  // namespace

Observable parse_observable(const std::string& s) {
  for (Observable o : {Observable::pressure, Observable::energy_density, Observable::residual_eq10,
                       Observable::stress_component, Observable::sphere_delta_e, Observable::sphere_e_sigma}) {
    if (s == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown observable '" + s + "'");
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::pressure: return "pressure";
    case Observable::energy_density: return "energy_density";
    case Observable::residual_eq10: return "residual_eq10";
    case Observable::stress_component: return "stress_component";
    case Observable::sphere_delta_e: return "sphere_delta_e";
    case Observable::sphere_e_sigma: return "sphere_e_sigma";
  }
  return "pressure";
}

bool is_sphere(Observable o) { return o == Observable::sphere_delta_e || o == Observable::sphere_e_sigma; }

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + s + "' (expected csv or json)");
}

std::vector<std::string> supported_pipelines(Observable o) {
  switch (o) {
    case Observable::pressure:
    case Observable::energy_density:
    case Observable::stress_component: return {"closed", "oracle", "printed"};
    case Observable::residual_eq10: return {"closed", "printed"};
    case Observable::sphere_delta_e: return {"integral", "direct", "closed_paper", "closed_derived"};
    case Observable::sphere_e_sigma: return {"direct"};
  }
  return {};
}

std::vector<std::string> default_pipelines(Observable o) {
  switch (o) {
    case Observable::pressure:
    case Observable::energy_density:
    case Observable::stress_component:
    case Observable::residual_eq10: return {"closed", "printed"};
    case Observable::sphere_delta_e: return {"integral", "closed_paper", "closed_derived"};
    case Observable::sphere_e_sigma: return {"direct"};
  }
  return {};
}

void validate(const SweepSpec& spec) {
  const Observable o = spec.observable;
  const auto supported = supported_pipelines(o);
  const auto pipelines = spec.pipelines.empty() ? default_pipelines(o) : spec.pipelines;
  for (const std::string& p : pipelines) {
    if (std::find(supported.begin(), supported.end(), p) == supported.end()) {
      throw std::invalid_argument("pipeline '" + p + "' does not support " + to_string(o));
    }
  }
  if (spec.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (!(spec.tol.quad_tol > 0.0) || !(spec.tol.sphere_tol > 0.0) || !(spec.tol.k_max_factor > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (is_sphere(o)) {
    if (sphere_points(spec.sphere).empty()) throw std::invalid_argument("empty sphere grid");
    for (const SpherePoint& p : sphere_points(spec.sphere)) casimir::validate(sphere_config(spec, p));
    return;
  }
  if (o == Observable::stress_component) {
    if (spec.components.empty()) throw std::invalid_argument("no stress components requested");
    for (const auto& c : spec.components) {
      if (c[0] < 0 || c[0] > 3 || c[1] < 0 || c[1] > 3) throw std::invalid_argument("stress component index out of range");
    }
  }
  if (plate_points(spec.plates).empty()) throw std::invalid_argument("empty plates grid");
  for (const PlatePoint& p : plate_points(spec.plates)) {
    if (!(p.a > 0.0) || !std::isfinite(p.a)) throw std::invalid_argument("plate separation must be positive");
    const CutoffConfig cfg = plate_cutoff(spec.plates, p);
    if ((cfg.sigma_bar() - cfg.Sigma()) * std::numbers::pi / p.a < kPoleGuard) throw Error(ErrorCode::NearPole, "grid point too close to the pole");
  }
}

std::vector<std::string> column_names(Observable o) {
  if (is_sphere(o)) return {"observable", "pipeline", "a", "sigma", "Sigma", "r", "phi", "l_max", "value", "abs_err_est", "converged"};
  return {"observable", "pipeline", "a", "sigma0", "sigma_x", "sigma_y", "sigma_bar", "Sigma", "ratio", "rapidity",
          "value", "abs_err_est", "converged"};
}

std::vector<Row> evaluate_sweep(const SweepSpec& spec) {
  validate(spec);
  const Observable o = spec.observable;
  const auto pipelines = spec.pipelines.empty() ? default_pipelines(o) : spec.pipelines;

  // Each grid point owns a contiguous block of rows; blocks are filled
  // concurrently and concatenated in grid order.
  std::vector<std::vector<Row>> blocks;
  std::vector<std::function<std::vector<Row>()>> tasks;
  const std::vector<std::array<int, 2>> comps =
      o == Observable::stress_component ? spec.components : std::vector<std::array<int, 2>>{{3, 3}};

  if (is_sphere(o)) {
    for (const SpherePoint& p : sphere_points(spec.sphere)) {
      tasks.emplace_back([&spec, &pipelines, o, p] {
        const SphereConfig c = sphere_config(spec, p);
        std::vector<Row> rows;
        for (const std::string& pl : pipelines) {
          const Value v = guarded([&] { return sphere_value(pl, o, c); });
          rows.push_back({to_string(o), pl, {c.a, c.sigma, c.Sigma, p.ratio, c.phi, static_cast<double>(c.l_max)},
                          v.value, v.err, v.converged});
        }
        return rows;
      });
    }
  } else {
    for (const PlatePoint& p : plate_points(spec.plates)) {
      tasks.emplace_back([&spec, &pipelines, &comps, o, p] {
        const CutoffConfig cfg = plate_cutoff(spec.plates, p);
        PlateEvaluator ev(spec, cfg, p.a);
        const std::vector<double> coords{p.a,           cfg.sigma().t, cfg.sigma().x, cfg.sigma().y,
                                         cfg.sigma_bar(), cfg.Sigma(),  p.ratio,       p.rapidity};
        std::vector<Row> rows;
        for (const auto& comp : comps) {
          const std::string name = o == Observable::stress_component ? component_name(comp) : to_string(o);
          for (const std::string& pl : pipelines) {
            const Value v = guarded([&] { return ev.eval(pl, o, comp); });
            rows.push_back({name, pl, coords, v.value, v.err, v.converged});
          }
        }
        return rows;
      });
    }
  }

  blocks.resize(tasks.size());
  const long n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(spec.jobs) if (spec.jobs > 1)
  for (long i = 0; i < n; ++i) blocks[i] = tasks[i]();

  std::vector<Row> rows;
  for (auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
  return rows;
}

SweepSummary summarize(const std::vector<Row>& rows, std::size_t pipelines_per_point) {
  SweepSummary s;
  s.rows = static_cast<long>(rows.size());
  for (const Row& r : rows) s.failures += r.converged ? 0 : 1;
  if (pipelines_per_point < 2) return s;
  for (std::size_t i = 0; i + pipelines_per_point <= rows.size(); i += pipelines_per_point) {
    double lo = rows[i].value, hi = rows[i].value, scale = 0.0;
    for (std::size_t j = i; j < i + pipelines_per_point; ++j) {
      lo = std::min(lo, rows[j].value);
      hi = std::max(hi, rows[j].value);
      scale = std::max(scale, std::abs(rows[j].value));
    }
    if (scale > 0.0 && std::isfinite(hi - lo)) s.max_cross_pipeline_deviation = std::max(s.max_cross_pipeline_deviation, (hi - lo) / scale);
  }
  return s;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  // Integral values (grid sizes, l_max) read better without an exponent.
  const bool integral = v == std::trunc(v) && std::abs(v) < 1e15;
  const auto res = integral ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed)
                            : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, Observable o, const std::vector<Row>& rows) {
  const auto cols = column_names(o);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const Row& r : rows) {
    out << r.observable << ',' << r.pipeline;
    for (double c : r.coords) out << ',' << format_real(c);
    out << ',' << format_real(r.value) << ',' << format_real(r.abs_err_est) << ',' << (r.converged ? "true" : "false")
        << '\n';
  }
}

void write_json(std::ostream& out, Observable o, const std::vector<Row>& rows, const SweepSummary& summary) {
  using nlohmann::ordered_json;
  const auto cols = column_names(o);
  auto number = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(format_real(v)); };
  ordered_json arr = ordered_json::array();
  for (const Row& r : rows) {
    ordered_json j;
    j[cols[0]] = r.observable;
    j[cols[1]] = r.pipeline;
    for (std::size_t i = 0; i < r.coords.size(); ++i) j[cols[2 + i]] = number(r.coords[i]);
    j["value"] = number(r.value);
    j["abs_err_est"] = number(r.abs_err_est);
    j["converged"] = r.converged;
    arr.push_back(std::move(j));
  }
  ordered_json doc;
  doc["rows"] = std::move(arr);
  doc["summary"] = {{"rows", summary.rows},
                    {"failures", summary.failures},
                    {"max_cross_pipeline_deviation", summary.max_cross_pipeline_deviation}};
  out << doc.dump(2) << '\n';
}

SweepSummary run_sweep(const SweepSpec& spec, std::ostream& out, Format format) {
  const auto rows = evaluate_sweep(spec);
  const std::size_t per_point = spec.pipelines.empty() ? default_pipelines(spec.observable).size() : spec.pipelines.size();
  const SweepSummary summary = summarize(rows, per_point);
  if (format == Format::csv) {
    write_csv(out, spec.observable, rows);
  } else {
    write_json(out, spec.observable, rows, summary);
  }
  return summary;
}

}  // namespace casimir::cli
