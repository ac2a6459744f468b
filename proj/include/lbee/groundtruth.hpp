#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lbee/types.hpp"

namespace lbee::groundtruth {

struct SentenceHardness {
    std::string sentence_id;
    std::size_t support = 0;                // |X_{s}|
    std::optional<double> hardness;         // defined iff support > 0
};

struct HardnessTable {
    std::vector<SentenceHardness> sentences;  // canonical sentence order
    double global_avg = 0.0;                  // mean performance over all images
    double global_std = 0.0;                  // population std
};

struct GroundTruthSet {
    double beta = 0.0;
    std::vector<std::string> members;  // canonical order
};

enum class CombineMode { And, Or };

struct ConfusionReport {
    double accuracy = 0.0;
    double tp_rate = 0.0;
    double tn_rate = 0.0;
    double fp_rate = 0.0;
    double fn_rate = 0.0;
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
};

HardnessTable sentence_hardness(const ScoreTable& performance, const RelevanceMatrix& relevance);

double beta_from_factor(const HardnessTable& table, double o);

// Sentences whose hardness is strictly below global_avg - beta; undefined
// hardness is excluded.
GroundTruthSet build_gt_set(const HardnessTable& table, double beta);

RelevanceMatrix combine_relevance(const RelevanceMatrix& a, const RelevanceMatrix& b,
                                  CombineMode mode);

// Rates over the dense image x sentence universe.
ConfusionReport relevance_confusion(const RelevanceMatrix& pred, const RelevanceMatrix& gt);

}  // namespace lbee::groundtruth
