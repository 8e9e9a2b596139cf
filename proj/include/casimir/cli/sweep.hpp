#pragma once

// Parameter sweeps over plate and sphere observables, emitted as CSV or JSON
// rows in fixed grid order.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/cli/settings.hpp"

namespace casimir::cli {

enum class Observable { pressure, energy_density, residual_eq10, stress_component, sphere_delta_e, sphere_e_sigma };

Observable parse_observable(const std::string& s);
std::string to_string(Observable o);
bool is_sphere(Observable o);

enum class Format { csv, json };
Format parse_format(const std::string& s);

struct SweepSpec {
  Observable observable = Observable::pressure;
  /// Components for stress_component; each (mu, nu) with 0 <= mu, nu <= 3.
  std::vector<std::array<int, 2>> components{{3, 3}};
  /// stress_component only: report the vacuum-subtracted tensor.
  bool subtract = false;
  PlatesGrid plates;
  SphereGrid sphere;
  std::vector<std::string> pipelines;
  Tolerances tol;
  /// Concurrent grid rows; output order never depends on it.
  int jobs = 1;
};

/// Pipelines implemented for an observable, in canonical order.
std::vector<std::string> supported_pipelines(Observable o);

/// Pipelines used when none are listed.
std::vector<std::string> default_pipelines(Observable o);

/// Throws std::invalid_argument describing the first problem: empty grid, unknown
/// or unsupported pipeline, invalid cutoff or sphere configuration, bad component.
void validate(const SweepSpec& spec);

struct Row {
  std::string observable;
  std::string pipeline;
  /// Input coordinates in column order (plates or sphere schema).
  std::vector<double> coords;
  double value = 0.0;
  double abs_err_est = 0.0;
  bool converged = true;
};

struct SweepSummary {
  long rows = 0;
  /// Rows that did not converge.
  long failures = 0;
  /// Largest relative spread between pipelines at a single grid point.
  double max_cross_pipeline_deviation = 0.0;
};

std::vector<std::string> column_names(Observable o);

/// Evaluates every (grid point x pipeline) row. Validates first.
std::vector<Row> evaluate_sweep(const SweepSpec& spec);
SweepSummary summarize(const std::vector<Row>& rows, std::size_t pipelines_per_point);

/// Shortest round-trip decimal form.
std::string format_real(double v);

void write_csv(std::ostream& out, Observable o, const std::vector<Row>& rows);
void write_json(std::ostream& out, Observable o, const std::vector<Row>& rows, const SweepSummary& summary);

/// Evaluates, writes in the requested format and returns the summary.
SweepSummary run_sweep(const SweepSpec& spec, std::ostream& out, Format format = Format::csv);

}  // namespace casimir::cli
