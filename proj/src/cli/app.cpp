#include "casimir/cli/app.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/acceptance.hpp"
#include "casimir/cli/sweep.hpp"
#include "casimir/error.hpp"
#include "casimir/plates_printed.hpp"
#include "casimir/sphere.hpp"

#ifndef CASIMIR_LAB_VERSION
#define CASIMIR_LAB_VERSION "0.0.0"
#endif

namespace casimir::cli {

namespace {

// Raw flag values; unset options leave config-file or profile values alone.
struct Flags {
  std::string out;
  std::string format = "csv";
  std::optional<int> jobs;
  std::string profile = "default";
  std::string config;

  std::optional<std::string> a, sigma_bar, sigma, ratio, rapidity, pipelines, observable, components;
  std::optional<double> direction, phi, quad_tol, k_max_factor, sphere_tol;
  std::optional<long> l_max;
  bool subtract = false;

  std::vector<int> only;
  bool report = false;
  bool timings = false;
};

std::vector<std::array<int, 2>> parse_components(const std::string& s) {
  std::vector<std::array<int, 2>> out;
  if (s == "all") {
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu; nu < 4; ++nu) out.push_back({mu, nu});
    return out;
  }
  for (const std::string& w : parse_word_list(s)) {
    if (w.size() != 2 || w[0] < '0' || w[0] > '3' || w[1] < '0' || w[1] > '3') {
      throw std::invalid_argument("component '" + w + "' is not two indices in 0..3 (e.g. 33)");
    }
    out.push_back({w[0] - '0', w[1] - '0'});
  }
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  const auto l = parse_real_list(v);
  if (l.size() != 1) throw std::invalid_argument("'" + key + "' expects one number");
  return l.front();
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("'" + key + "' expects true or false");
}

void apply_config(const ConfigSections& cfg, SweepSpec& spec, bool sphere) {
  for (const auto& [section, entries] : cfg) {
    for (const auto& [key, value] : entries) {
      const std::string where = section + "." + key;
      if (section == "tolerances") {
        if (key == "quad_tol") spec.tol.quad_tol = parse_real(where, value);
        else if (key == "k_max_factor") spec.tol.k_max_factor = parse_real(where, value);
        else if (key == "sphere_tol") spec.tol.sphere_tol = parse_real(where, value);
        else if (key == "agree_threshold") spec.tol.agree_threshold = parse_real(where, value);
        else throw std::invalid_argument("unknown config key '" + where + "'");
      } else if (section == "plates") {
        if (key == "a") spec.plates.a = parse_real_list(value);
        else if (key == "sigma_bar") spec.plates.sigma_bar = parse_real_list(value);
        else if (key == "ratio") spec.plates.ratio = parse_real_list(value);
        else if (key == "rapidity") spec.plates.rapidity = parse_real_list(value);
        else if (key == "direction") spec.plates.direction = parse_real(where, value);
        else if (key == "observable") { if (!sphere) spec.observable = parse_observable(value); }
        else if (key == "pipelines") { if (!sphere) spec.pipelines = parse_word_list(value); }
        else if (key == "components") spec.components = parse_components(value);
        else if (key == "subtract") spec.subtract = parse_bool(where, value);
        else throw std::invalid_argument("unknown config key '" + where + "'");
      } else if (section == "sphere") {
        if (key == "a") spec.sphere.a = parse_real_list(value);
        else if (key == "sigma") spec.sphere.sigma = parse_real_list(value);
        else if (key == "ratio") spec.sphere.ratio = parse_real_list(value);
        else if (key == "phi") spec.sphere.phi = parse_real(where, value);
        else if (key == "l_max") spec.sphere.l_max = static_cast<long>(parse_real(where, value));
        else if (key == "pipelines") { if (sphere) spec.pipelines = parse_word_list(value); }
        else throw std::invalid_argument("unknown config key '" + where + "'");
      } else {
        throw std::invalid_argument("unknown config section '[" + section + "]'");
      }
    }
  }
}

int resolve_jobs(const Flags& f) {
  if (f.jobs) return *f.jobs;
  if (const char* env = std::getenv("CASIMIR_LAB_JOBS")) {
    const auto v = parse_real_list(env);
    if (v.size() == 1 && v[0] >= 1.0) return static_cast<int>(v[0]);
    throw std::invalid_argument("CASIMIR_LAB_JOBS must be a positive integer");
  }
  return 1;
}

SweepSpec build_spec(const Flags& f, Observable observable, bool allow_observable_flag) {
  SweepSpec spec;
  spec.observable = observable;
  spec.tol = tolerances_for(parse_profile(f.profile));
  if (observable == Observable::stress_component) spec.components = parse_components("all");
  const bool sphere = is_sphere(observable);
  if (!f.config.empty()) apply_config(load_config_file(f.config), spec, sphere);
  if (!allow_observable_flag) spec.observable = observable;

  if (allow_observable_flag && f.observable) spec.observable = parse_observable(*f.observable);
  if (is_sphere(spec.observable) != sphere) throw std::invalid_argument("observable does not belong to this subcommand");
  if (f.pipelines) spec.pipelines = parse_word_list(*f.pipelines);
  if (f.components) spec.components = parse_components(*f.components);
  if (f.subtract) spec.subtract = true;
  if (sphere) {
    if (f.a) spec.sphere.a = parse_real_list(*f.a);
    if (f.sigma) spec.sphere.sigma = parse_real_list(*f.sigma);
    if (f.ratio) spec.sphere.ratio = parse_real_list(*f.ratio);
    if (f.phi) spec.sphere.phi = *f.phi;
    if (f.l_max) spec.sphere.l_max = *f.l_max;
  } else {
    if (f.a) spec.plates.a = parse_real_list(*f.a);
    if (f.sigma_bar) spec.plates.sigma_bar = parse_real_list(*f.sigma_bar);
    if (f.ratio) spec.plates.ratio = parse_real_list(*f.ratio);
    if (f.rapidity) spec.plates.rapidity = parse_real_list(*f.rapidity);
    if (f.direction) spec.plates.direction = *f.direction;
  }
  if (f.quad_tol) spec.tol.quad_tol = *f.quad_tol;
  if (f.k_max_factor) spec.tol.k_max_factor = *f.k_max_factor;
  if (f.sphere_tol) spec.tol.sphere_tol = *f.sphere_tol;
  spec.jobs = resolve_jobs(f);
  return spec;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json spec_json(const SweepSpec& spec) {
  nlohmann::ordered_json j;
  j["observable"] = to_string(spec.observable);
  j["pipelines"] = spec.pipelines.empty() ? default_pipelines(spec.observable) : spec.pipelines;
  if (is_sphere(spec.observable)) {
    j["sphere"] = {{"a", spec.sphere.a},     {"sigma", spec.sphere.sigma}, {"ratio", spec.sphere.ratio},
                   {"phi", spec.sphere.phi}, {"l_max", spec.sphere.l_max}};
  } else {
    j["plates"] = {{"a", spec.plates.a},
                   {"sigma_bar", spec.plates.sigma_bar},
                   {"ratio", spec.plates.ratio},
                   {"rapidity", spec.plates.rapidity},
                   {"direction", spec.plates.direction}};
    if (spec.observable == Observable::stress_component) {
      j["components"] = spec.components;
      j["subtract"] = spec.subtract;
    }
  }
  j["tolerances"] = {{"quad_tol", spec.tol.quad_tol},
                     {"k_max_factor", spec.tol.k_max_factor},
                     {"sphere_tol", spec.tol.sphere_tol},
                     {"agree_threshold", spec.tol.agree_threshold}};
  j["jobs"] = spec.jobs;
  return j;
}

void write_manifest(const std::string& path, const SweepSpec& spec, const Flags& f, const std::vector<Row>& rows,
                    const SweepSummary& summary, const std::string& command) {
  nlohmann::ordered_json m;
  m["tool"] = "casimir_lab";
  m["version"] = CASIMIR_LAB_VERSION;
  m["timestamp"] = utc_timestamp();
  m["command"] = command;
  m["profile"] = to_string(parse_profile(f.profile));
  m["format"] = f.format;
  m["config"] = spec_json(spec);
  nlohmann::ordered_json errs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    errs.push_back({{"row", i},
                    {"pipeline", rows[i].pipeline},
                    {"abs_err_est", format_real(rows[i].abs_err_est)},
                    {"converged", rows[i].converged}});
  }
  m["rows"] = std::move(errs);
  m["summary"] = {{"rows", summary.rows},
                  {"failures", summary.failures},
                  {"max_cross_pipeline_deviation", summary.max_cross_pipeline_deviation}};
  std::ofstream(path) << m.dump(2) << '\n';
}

int do_sweep(const Flags& f, Observable observable, bool allow_observable_flag, const std::string& command) {
  const SweepSpec spec = build_spec(f, observable, allow_observable_flag);
  const Format format = parse_format(f.format);
  omp_set_num_threads(spec.jobs);
  // Evaluate before touching the output path so configuration errors leave no file.
  const auto rows = evaluate_sweep(spec);
  const std::size_t per_point = spec.pipelines.empty() ? default_pipelines(spec.observable).size() : spec.pipelines.size();
  const SweepSummary summary = summarize(rows, per_point);

  std::ostringstream text;
  if (format == Format::csv) {
    write_csv(text, spec.observable, rows);
  } else {
    write_json(text, spec.observable, rows, summary);
  }
  if (f.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(f.out, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + f.out + "'");
    out << text.str();
    write_manifest(f.out + ".manifest.json", spec, f, rows, summary, command);
  }
  std::fprintf(stderr, "%ld rows, %ld not converged, max cross-pipeline deviation %.3g\n", summary.rows,
               summary.failures, summary.max_cross_pipeline_deviation);
  return summary.failures > 0 ? kNonConvergence : kOk;
}

void print_reports(std::ostream& os, const std::vector<DiscrepancyReport>& rows) {
  for (const DiscrepancyReport& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s a=%-14.8g b=%-14.8g rel=%-10.3g ", std::string(to_string(r.verdict)).c_str(),
                  r.value_a, r.value_b, r.rel_diff);
    os << buf << r.label;
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << '\n';
  }
}

int do_verify(const Flags& f) {
  acceptance::Options opt;
  opt.profile = parse_profile(f.profile);
  opt.only = f.only;
  const int jobs = resolve_jobs(f);
  omp_set_num_threads(jobs);

  std::ostringstream text;
  opt.on_result = [&](const acceptance::CriterionResult& r) {
    const std::string line = acceptance::format_line(r);
    text << line << '\n';
    if (f.out.empty()) std::cout << line << std::endl;
    if (f.timings) std::fprintf(stderr, "criterion %d: %.2f s\n", r.id, r.seconds);
  };
  const auto results = acceptance::run(opt);
  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : results) {
    pass += r.status == acceptance::Status::pass;
    fail += r.status == acceptance::Status::fail;
    skip += r.status == acceptance::Status::skip;
  }
  std::ostringstream tail;
  tail << pass << " passed, " << fail << " failed, " << skip << " skipped (profile " << to_string(opt.profile) << ")\n";

  if (f.report) {
    tail << "\nplates adjudication:\n";
    std::vector<CutoffConfig> grid;
    for (double sb : {0.04, 0.02, 0.01})
      for (double r : {0.0, 0.5}) grid.push_back(make_cutoff(sb, r));
    grid.push_back(make_cutoff(0.01, 0.5, 0.3));
    AdjudicateOptions ao;
    ao.include_oracle = opt.profile != Profile::fast;
    print_reports(tail, adjudicate(plate_geometry(1.0), grid, ao));
    tail << "\nsphere adjudication:\n";
    std::vector<SphereConfig> sgrid;
    for (double s : {0.04, 0.02, 0.01})
      for (double r : {0.0, 1.0}) {
        SphereConfig c;
        c.sigma = s;
        c.Sigma = r * s;
        sgrid.push_back(c);
      }
    for (double s : {0.02, 0.01, 0.005}) {
      SphereConfig c;
      c.sigma = s;
      c.Sigma = 0.05;
      sgrid.push_back(c);
    }
    SphereReportOptions so;
    so.include_direct = opt.profile == Profile::thorough;
    print_reports(tail, sphere_report(sgrid, so));
  }

  text << tail.str();
  if (f.out.empty()) {
    std::cout << tail.str();
  } else {
    std::ofstream(f.out, std::ios::binary) << text.str();
  }
  return acceptance::all_passed(results) ? kOk : kAcceptanceFailure;
}

void add_io_options(CLI::App* app, Flags& f) {
  app->add_option("--out", f.out, "Output file (default: stdout); a .manifest.json sidecar is written next to it");
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--jobs", f.jobs, "Concurrent grid rows (fallback: CASIMIR_LAB_JOBS)")->check(CLI::PositiveNumber);
  app->add_option("--profile", f.profile, "default, fast or thorough")->check(CLI::IsMember({"default", "fast", "thorough"}));
  app->add_option("--config", f.config, "key=value file with [plates], [sphere], [tolerances] sections");
  app->add_option("--quad-tol", f.quad_tol, "Oracle quadrature tolerance");
  app->add_option("--k-max-factor", f.k_max_factor, "Oracle radial cutoff, in e-folds of the integrand");
  app->add_option("--sphere-tol", f.sphere_tol, "Absolute tolerance of the sphere mode sum");
}

void add_plate_options(CLI::App* app, Flags& f) {
  add_io_options(app, f);
  app->add_option("--a", f.a, "Plate separations, comma-separated");
  app->add_option("--sigma-bar", f.sigma_bar, "Invariant cutoff values");
  app->add_option("--ratio", f.ratio, "Sigma / sigma_bar values");
  app->add_option("--rapidity", f.rapidity, "Boost rapidities of the cutoff vector");
  app->add_option("--direction", f.direction, "Boost direction angle in the plate plane, radians");
  app->add_option("--pipelines", f.pipelines, "Subset of closed,oracle,printed");
}

void add_sphere_options(CLI::App* app, Flags& f) {
  add_io_options(app, f);
  app->add_option("--a", f.a, "Sphere radii, comma-separated");
  app->add_option("--sigma", f.sigma, "Primary cutoff values");
  app->add_option("--ratio", f.ratio, "Sigma / sigma values");
  app->add_option("--phi", f.phi, "Contour angle in (0, pi/2)");
  app->add_option("--l-max", f.l_max, "Hard cap on the angular-momentum sum");
  app->add_option("--pipelines", f.pipelines, "Subset of integral,direct,closed_paper,closed_derived");
}

}  // namespace

int run_app(int argc, char** argv) {
  CLI::App app{"Casimir cutoff laboratory: plate stress tensors, sphere energy shifts, acceptance checks"};
  app.set_version_flag("--version", CASIMIR_LAB_VERSION);
  app.require_subcommand(1);
  Flags f;

  auto* plates = app.add_subcommand("plates", "Parallel-plate stress tensor")->require_subcommand(1);
  auto* p_stress = plates->add_subcommand("stress", "Stress tensor components over a grid");
  add_plate_options(p_stress, f);
  p_stress->add_option("--components", f.components, "Index pairs such as 00,33, or all (default)");
  p_stress->add_flag("--subtract", f.subtract, "Subtract the a -> infinity tensor");
  auto* p_sweep = plates->add_subcommand("sweep", "Any plate observable over a grid");
  add_plate_options(p_sweep, f);
  p_sweep->add_option("--observable", f.observable, "pressure, energy_density, residual_eq10 or stress_component");
  p_sweep->add_option("--components", f.components, "Index pairs for stress_component");
  p_sweep->add_flag("--subtract", f.subtract, "stress_component: subtract the a -> infinity tensor");
  auto* p_residual = plates->add_subcommand("residual", "Pressure/energy relation residual T33 + dE/da");
  add_plate_options(p_residual, f);

  auto* sphere = app.add_subcommand("sphere", "Conducting sphere")->require_subcommand(1);
  auto* s_delta = sphere->add_subcommand("delta-e", "Energy shift from the secondary cutoff");
  add_sphere_options(s_delta, f);
  auto* s_esigma = sphere->add_subcommand("esigma", "Regularized mode sum E_sigma");
  add_sphere_options(s_esigma, f);

  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--out", f.out, "Write the report here instead of stdout");
  verify->add_option("--profile", f.profile, "default, fast or thorough")->check(CLI::IsMember({"default", "fast", "thorough"}));
  verify->add_option("--jobs", f.jobs, "OpenMP threads (fallback: CASIMIR_LAB_JOBS)")->check(CLI::PositiveNumber);
  verify->add_option("--only", f.only, "Criterion numbers to run")->delimiter(',');
  verify->add_flag("--report", f.report, "Append the full discrepancy tables");
  verify->add_flag("--timings", f.timings, "Print per-criterion wall time to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

  try {
    if (*p_stress) return do_sweep(f, Observable::stress_component, false, command);
    if (*p_sweep) return do_sweep(f, Observable::pressure, true, command);
    if (*p_residual) return do_sweep(f, Observable::residual_eq10, false, command);
    if (*s_delta) return do_sweep(f, Observable::sphere_delta_e, false, command);
    if (*s_esigma) return do_sweep(f, Observable::sphere_e_sigma, false, command);
    if (*verify) return do_verify(f);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::TailTooFat ? kNonConvergence : kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace casimir::cli
