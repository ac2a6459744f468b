#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lbee/groundtruth.hpp"
#include "lbee/ingest.hpp"
#include "lbee/metrics.hpp"
#include "lbee/select.hpp"
#include "lbee/types.hpp"

namespace lbee::synth {

// Planted-failure-mode benchmark parameters. With noise_scale below roughly
// a quarter of the minimum direction gap (see README), Ward clustering on the
// hard subset recovers the planted groups exactly.
struct SynthParams {
    std::uint64_t seed = 0;
    std::size_t dim = 16;
    std::size_t groups = 6;
    std::size_t images_per_group = 20;
    std::size_t sentences_per_group = 3;
    std::vector<std::size_t> hard_group_indices = {1, 4};
    double separation = 0.5;       // pairwise direction cosine stays below 1 - separation
    double performance_gap = 0.5;  // performance depression on hard groups
    double noise_scale = 0.05;

    void validate() const;
};

struct SynthBundle {
    ingest::Bundle bundle;
    std::map<std::string, std::size_t> group_of;  // image id -> planted group
    std::vector<std::string> planted_gt;          // sentence ids of hard groups
};

SynthBundle generate_benchmark(const SynthParams& params);

// Writes the ingest bundle plus planted.json (group membership + planted GT).
void write_benchmark(const SynthBundle& synth, const std::filesystem::path& dir);

// Independent nested-loop recomputation of AHR/ACR/TPR/JI. Shares no code
// with the metrics module; used as the acceptance oracle.
metrics::MetricsReport oracle_evaluate(
    const select::ExplanationSet& explanation, const std::vector<std::string>& sentence_ids,
    const std::vector<std::vector<std::string>>& hard_cluster_members,
    const RelevanceMatrix& relevance, const groundtruth::GroundTruthSet& gt);

}  // namespace lbee::synth
