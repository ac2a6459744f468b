#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lbee/groundtruth.hpp"
#include "lbee/select.hpp"
#include "lbee/types.hpp"

namespace lbee::metrics {

struct ClusterMetrics {
    std::size_t hard_cluster_index = 0;
    std::optional<double> hr;
    std::optional<double> cr;
    std::string undefined_reason;  // set when hr/cr is undefined
};

struct MetricsReport {
    std::vector<ClusterMetrics> per_cluster;
    std::optional<double> ahr;
    std::optional<double> acr;
    std::optional<double> tpr;
    std::optional<double> ji;
    std::size_t union_size = 0;       // |R_S|
    std::size_t gt_size = 0;          // |S*_beta|
    std::size_t intersection_size = 0;
    std::vector<std::string> notes;   // undefined-metric reasons
};

// HR_i = |R_i ∩ S*| / |R_i|; clusters with empty selections are excluded
// from the AHR mean.
std::pair<std::vector<ClusterMetrics>, std::optional<double>> cluster_hardness_ratios(
    const std::vector<select::ClusterSelection>& selections,
    const std::vector<std::string>& sentence_ids, const groundtruth::GroundTruthSet& gt);

// CR_i = mean over retained sentences of the fraction of cluster members
// the sentence is relevant for.
std::pair<std::vector<ClusterMetrics>, std::optional<double>> cluster_coverage_ratios(
    const std::vector<select::ClusterSelection>& selections,
    const std::vector<std::string>& sentence_ids,
    const std::vector<std::vector<std::string>>& cluster_members,
    const RelevanceMatrix& relevance);

struct SetAgreement {
    std::optional<double> tpr;
    std::optional<double> ji;
    std::size_t union_size = 0;
    std::size_t gt_size = 0;
    std::size_t intersection_size = 0;
};

SetAgreement set_agreement(const select::ExplanationSet& explanation,
                           const groundtruth::GroundTruthSet& gt);

MetricsReport evaluate(const select::ExplanationSet& explanation,
                       const std::vector<std::string>& sentence_ids,
                       const std::vector<std::vector<std::string>>& hard_cluster_members,
                       const RelevanceMatrix& relevance, const groundtruth::GroundTruthSet& gt);

struct PartitionEvalInput {
    std::vector<std::pair<std::string, std::vector<std::string>>> gt_partitions;
    std::vector<std::vector<std::string>> pred_rankings;  // descending rank score
    std::vector<std::string> evaluated_subset;            // gt partition names
};

// P@K: per evaluated GT partition, best top-k overlap over predicted
// rankings (ties to the smallest prediction index), averaged.
double precision_at_k(const PartitionEvalInput& input, std::size_t k);

}  // namespace lbee::metrics
