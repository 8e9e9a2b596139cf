#include "casimir/discrepancy.hpp"

#include <algorithm>
#include <cmath>

namespace casimir {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::AGREE: return "AGREE";
    case Verdict::DISAGREE: return "DISAGREE";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

Verdict classify(double rel, double agree, double disagree) {
  if (rel <= agree) return Verdict::AGREE;
  if (rel >= disagree) return Verdict::DISAGREE;
  return Verdict::INCONCLUSIVE;
}

}  // namespace

DiscrepancyReport compare_values(std::string label, double a, double b, double threshold) {
  DiscrepancyReport r;
  r.label = std::move(label);
  r.value_a = a;
  r.value_b = b;
  r.abs_diff = std::abs(a - b);
  r.rel_diff = r.abs_diff / std::max({std::abs(a), std::abs(b), 1e-300});
  r.agree_threshold = threshold;
  r.disagree_threshold = 10.0 * threshold;
  r.verdict = classify(r.rel_diff, r.agree_threshold, r.disagree_threshold);
  return r;
}

DiscrepancyReport compare_slope(std::string label, double measured, double expected, double abs_tol) {
  DiscrepancyReport r;
  r.label = std::move(label);
  r.value_a = measured;
  r.value_b = expected;
  r.fitted_slope = measured;
  r.abs_diff = std::abs(measured - expected);
  const double denom = std::max(std::abs(expected), 1e-300);
  r.rel_diff = r.abs_diff / denom;
  r.agree_threshold = abs_tol / denom;
  r.disagree_threshold = 10.0 * r.agree_threshold;
  r.verdict = classify(r.rel_diff, r.agree_threshold, r.disagree_threshold);
  return r;
}

Verdict summarize(const std::vector<DiscrepancyReport>& rows) {
  if (rows.empty()) return Verdict::INCONCLUSIVE;
  const bool all_agree = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.verdict == Verdict::AGREE; });
  if (all_agree) return Verdict::AGREE;
  const bool all_disagree =
      std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.verdict == Verdict::DISAGREE; });
  const bool sign_stable = std::all_of(rows.begin(), rows.end(), [&](const auto& r) {
    return std::signbit(r.value_a - r.value_b) == std::signbit(rows.front().value_a - rows.front().value_b);
  });
  return all_disagree && sign_stable ? Verdict::DISAGREE : Verdict::INCONCLUSIVE;
}

}  // namespace casimir
