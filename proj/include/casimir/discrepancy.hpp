#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace casimir {

enum class Verdict { AGREE, DISAGREE, INCONCLUSIVE };

std::string_view to_string(Verdict v) noexcept;

/// Structured comparison of two pipelines at one point (or of a fitted exponent
/// against its expected value).
struct DiscrepancyReport {
  std::string label;
  double value_a = 0.0;
  double value_b = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  std::optional<double> fitted_slope;
  Verdict verdict = Verdict::INCONCLUSIVE;
  double agree_threshold = 0.0;
  double disagree_threshold = 0.0;
  std::string note;
};

/// rel_diff = |a - b| / max(|a|, |b|, tiny); AGREE iff rel_diff <= threshold,
/// DISAGREE iff rel_diff >= 10 * threshold.
DiscrepancyReport compare_values(std::string label, double a, double b, double threshold = 1e-3);

/// Compares a measured log-log slope with its expected value to an absolute tolerance;
/// the relative threshold recorded is abs_tol / |expected|.
DiscrepancyReport compare_slope(std::string label, double measured, double expected, double abs_tol = 0.1);

/// Grid-level verdict: AGREE if every row agrees, DISAGREE if every row disagrees
/// with a stable sign of (a - b), INCONCLUSIVE otherwise.
Verdict summarize(const std::vector<DiscrepancyReport>& rows);

}  // namespace casimir
