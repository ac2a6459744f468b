#include "lbee/split.hpp"

#include <cmath>

#include "lbee/errors.hpp"

namespace lbee::split {

std::pair<double, double> derive_thresholds(const ScoreTable& scores, double a) {
    if (scores.ids.empty())
        throw validation_error("EmptyScores", "cannot derive thresholds from an empty table");

    double sum = 0.0;
    for (double v : scores.values) sum += v;
    const double avg = sum / static_cast<double>(scores.values.size());

    double sq = 0.0;
    for (double v : scores.values) sq += (v - avg) * (v - avg);
    const double std_dev = std::sqrt(sq / static_cast<double>(scores.values.size()));

    if (scores.polarity == Polarity::HigherIsHarder)
        return {avg - a * std_dev, avg + a * std_dev};
    return {avg + a * std_dev, avg - a * std_dev};
}

SplitResult split_by_score(const ScoreTable& scores, double t_easy, double t_hard) {
    SplitResult result;
    result.thresholds_used = {t_easy, t_hard};
    const bool higher_is_harder = scores.polarity == Polarity::HigherIsHarder;
    for (std::size_t i = 0; i < scores.ids.size(); ++i) {
        const double v = scores.values[i];
        const bool easy = higher_is_harder ? v < t_easy : v > t_easy;
        const bool hard = higher_is_harder ? v > t_hard : v < t_hard;
        if (easy)
            result.easy.push_back(scores.ids[i]);
        else if (hard)
            result.hard.push_back(scores.ids[i]);
        else
            result.neutral.push_back(scores.ids[i]);
    }
    return result;
}

SplitResult split_by_outcome(const std::vector<std::string>& image_ids,
                             const OutcomeTable& outcomes) {
    SplitResult result;
    for (const auto& id : image_ids) {
        const auto it = outcomes.find(id);
        if (it == outcomes.end())
            throw validation_error("UnknownOutcomeLabel", "no outcome for image " + id);
        if (it->second == Outcome::Correct)
            result.easy.push_back(id);
        else
            result.hard.push_back(id);
    }
    return result;
}

}  // namespace lbee::split
