#include "dialectic/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "dialectic/answers.hpp"

namespace dialectic {

MetricsReport compute_failure_metrics(const std::vector<ExampleResult>& results) {
  if (results.empty()) throw std::invalid_argument("empty result set");
  long long n = static_cast<long long>(results.size());
  long long mf = 0, uf = 0, both = 0, either = 0;
  for (const auto& r : results) {
    bool f_mf = r.verdict_model_first.outcome == Outcome::failure;
    bool f_uf = r.verdict_user_first.outcome == Outcome::failure;
    mf += f_mf;
    uf += f_uf;
    both += f_mf && f_uf;
    either += f_mf || f_uf;
  }
  MetricsReport report;
  report.n = static_cast<int>(n);
  report.fr_model_first = {mf, n};
  report.fr_user_first = {uf, n};
  report.fr_both = {both, n};
  report.fr_either = {either, n};
  report.fr_average = {mf + uf, 2 * n};
  return report;
}

ConfidenceStats compute_confidence_stats(const std::vector<std::pair<int, Rational>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("empty result set");
  long long n = static_cast<long long>(pairs.size());

  ConfidenceStats stats;
  long long fail_sum = 0;
  Rational conf_sum{0, 1};
  long long full_conf_n = 0, full_conf_fail = 0;
  bool fail_constant = true, conf_constant = true;
  for (const auto& [f, c] : pairs) {
    fail_sum += f;
    conf_sum = conf_sum + c;
    if (f != pairs.front().first) fail_constant = false;
    if (c != pairs.front().second) conf_constant = false;
    if (c == Rational{1, 1}) {
      ++full_conf_n;
      full_conf_fail += f;
    }
  }
  stats.mean_failure = {fail_sum, n};
  stats.mean_confidence = conf_sum / Rational{n, 1};
  if (full_conf_n > 0) stats.fr_at_full_confidence = Rational{full_conf_fail, full_conf_n};

  double mx = stats.mean_failure.value();
  double my = stats.mean_confidence.value();
  double sxy = 0, sxx = 0, syy = 0;
  for (const auto& [f, c] : pairs) {
    double dx = f - mx;
    double dy = c.value() - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  stats.covariance = sxy / static_cast<double>(n);
  if (!fail_constant && !conf_constant) stats.correlation = sxy / std::sqrt(sxx * syy);
  return stats;
}

ConfidenceEstimate confidence_ratio(const std::vector<Solution>& samples, const std::string& gold,
                                    const AnswerSpace& space) {
  if (samples.empty()) throw std::invalid_argument("empty sample list");
  int k = static_cast<int>(samples.size());
  int n_correct = 0;
  for (const auto& s : samples)
    if (s.extracted_answer && answers_equal(*s.extracted_answer, gold, space)) ++n_correct;
  return {k, n_correct, Rational{n_correct, k}};
}

}  // namespace dialectic
