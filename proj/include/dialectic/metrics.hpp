#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dialectic/types.hpp"

namespace dialectic {

// Table-1 failure-rate family. Exact rational arithmetic throughout.
// Throws std::invalid_argument("empty result set") on empty input.
MetricsReport compute_failure_metrics(const std::vector<ExampleResult>& results);

struct ConfidenceStats {
  Rational mean_failure{0, 1};
  Rational mean_confidence{0, 1};
  double covariance = 0.0;                        // population normalization
  std::optional<double> correlation;              // absent when a sequence is constant
  std::optional<Rational> fr_at_full_confidence;  // absent when no pair has confidence 1
};

// pairs: (either-setting failure bit, self-consistency confidence).
ConfidenceStats compute_confidence_stats(const std::vector<std::pair<int, Rational>>& pairs);

// Self-consistency ratio over k sampled solutions; unextractable counts as
// incorrect. Throws on an empty sample list.
ConfidenceEstimate confidence_ratio(const std::vector<Solution>& samples, const std::string& gold,
                                    const AnswerSpace& space);

}  // namespace dialectic
