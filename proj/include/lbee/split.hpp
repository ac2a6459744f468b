#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lbee/types.hpp"

namespace lbee::split {

struct SplitResult {
    std::vector<std::string> easy;     // canonical (input) order
    std::vector<std::string> hard;
    std::vector<std::string> neutral;
    std::optional<std::pair<double, double>> thresholds_used;  // (t_e, t_h)
};

// Easy/hard thresholds at avg -/+ a * population std, oriented by polarity.
std::pair<double, double> derive_thresholds(const ScoreTable& scores, double a);

// Strict inequalities at both thresholds; boundary values stay neutral.
SplitResult split_by_score(const ScoreTable& scores, double t_easy, double t_hard);

// easy = correct, hard = false positives plus false negatives.
SplitResult split_by_outcome(const std::vector<std::string>& image_ids,
                             const OutcomeTable& outcomes);

}  // namespace lbee::split
