#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lbee/types.hpp"

namespace lbee::cluster {

struct MergeStep {
    std::size_t cluster_a;  // min member row index of the first cluster (a < b)
    std::size_t cluster_b;
    double ward_distance;   // Lance-Williams value; ||xi - xj||^2 for singletons
};

struct ClusterModel {
    std::vector<std::vector<std::string>> member_ids;  // per cluster, canonical order
    std::map<std::string, std::size_t> assignments;
    std::vector<std::vector<double>> prototypes;  // unit norm, filled by compute_prototypes
    std::vector<MergeStep> merge_log;
};

// Agglomerative Ward-linkage clustering down to c clusters. Distances are
// squared Euclidean between (normalized) rows, updated with the
// Lance-Williams recurrence. Ties break on the lexicographically smallest
// (min member index, max member index) pair of cluster representatives.
// Clusters in the result are ordered by their smallest member row index.
ClusterModel ward_cluster(const EmbeddingTable& embeddings, std::size_t c);

// Prototype = renormalized arithmetic mean of member embeddings.
void compute_prototypes(ClusterModel& model, const EmbeddingTable& embeddings);

struct Assignment {
    std::vector<std::size_t> cluster_index;  // per embedding row
    std::vector<double> rank_score;          // cosine to the winning prototype
};

// Nearest prototype by cosine similarity; ties to the smallest index.
Assignment assign_to_prototypes(const EmbeddingTable& embeddings,
                                const std::vector<std::vector<double>>& prototypes);

void dump_merges_csv(const ClusterModel& model, const std::string& path);

}  // namespace lbee::cluster
