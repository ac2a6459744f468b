#include "lbee/groundtruth.hpp"

#include <cmath>
#include <map>

#include "lbee/errors.hpp"

namespace lbee::groundtruth {

HardnessTable sentence_hardness(const ScoreTable& performance, const RelevanceMatrix& relevance) {
    if (performance.kind != ScoreKind::Performance)
        throw validation_error("BadValue", "sentence_hardness needs a performance table");

    std::map<std::string, double> score_of;
    for (std::size_t i = 0; i < performance.ids.size(); ++i)
        score_of[performance.ids[i]] = performance.values[i];

    HardnessTable table;
    double sum = 0.0;
    for (double v : performance.values) sum += v;
    table.global_avg = sum / static_cast<double>(performance.values.size());
    double sq = 0.0;
    for (double v : performance.values) sq += (v - table.global_avg) * (v - table.global_avg);
    table.global_std = std::sqrt(sq / static_cast<double>(performance.values.size()));

    for (const auto& sentence : relevance.sentence_ids) {
        SentenceHardness entry;
        entry.sentence_id = sentence;
        double acc = 0.0;
        for (const auto& image : relevance.image_ids) {
            if (!relevance.relevant(image, sentence)) continue;
            const auto it = score_of.find(image);
            if (it == score_of.end())
                throw validation_error("UnknownId", "no performance score for image " + image);
            acc += it->second;
            ++entry.support;
        }
        if (entry.support > 0) entry.hardness = acc / static_cast<double>(entry.support);
        table.sentences.push_back(std::move(entry));
    }
    return table;
}

double beta_from_factor(const HardnessTable& table, double o) {
    if (o < 0.0) throw validation_error("BadConfig", "o must be >= 0");
    return o * table.global_std;
}

GroundTruthSet build_gt_set(const HardnessTable& table, double beta) {
    if (beta < 0.0) throw validation_error("BadConfig", "beta must be >= 0");
    GroundTruthSet gt;
    gt.beta = beta;
    for (const auto& entry : table.sentences) {
        if (!entry.hardness) continue;
        if (*entry.hardness < table.global_avg - beta) gt.members.push_back(entry.sentence_id);
    }
    return gt;
}

RelevanceMatrix combine_relevance(const RelevanceMatrix& a, const RelevanceMatrix& b,
                                  CombineMode mode) {
    if (a.image_ids != b.image_ids || a.sentence_ids != b.sentence_ids)
        throw validation_error("IdUniverseMismatch",
                               "relevance matrices cover different id universes");
    RelevanceMatrix out;
    out.image_ids = a.image_ids;
    out.sentence_ids = a.sentence_ids;
    if (mode == CombineMode::And) {
        for (const auto& pair : a.positives)
            if (b.positives.count(pair)) out.positives.insert(pair);
    } else {
        out.positives = a.positives;
        out.positives.insert(b.positives.begin(), b.positives.end());
    }
    return out;
}

ConfusionReport relevance_confusion(const RelevanceMatrix& pred, const RelevanceMatrix& gt) {
    if (pred.image_ids != gt.image_ids || pred.sentence_ids != gt.sentence_ids)
        throw validation_error("IdUniverseMismatch",
                               "relevance matrices cover different id universes");
    ConfusionReport report;
    for (const auto& image : gt.image_ids) {
        for (const auto& sentence : gt.sentence_ids) {
            const bool p = pred.relevant(image, sentence);
            const bool g = gt.relevant(image, sentence);
            if (p && g)
                ++report.tp;
            else if (!p && !g)
                ++report.tn;
            else if (p && !g)
                ++report.fp;
            else
                ++report.fn;
        }
    }
    const double positives = static_cast<double>(report.tp + report.fn);
    const double negatives = static_cast<double>(report.tn + report.fp);
    const double total = positives + negatives;
    report.accuracy = total > 0 ? static_cast<double>(report.tp + report.tn) / total : 0.0;
    report.tp_rate = positives > 0 ? static_cast<double>(report.tp) / positives : 0.0;
    report.fn_rate = positives > 0 ? static_cast<double>(report.fn) / positives : 0.0;
    report.tn_rate = negatives > 0 ? static_cast<double>(report.tn) / negatives : 0.0;
    report.fp_rate = negatives > 0 ? static_cast<double>(report.fp) / negatives : 0.0;
    return report;
}

}  // namespace lbee::groundtruth
