#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lbee/similarity.hpp"
#include "lbee/types.hpp"

namespace lbee::select {

struct ClusterSelection {
    std::size_t hard_cluster_index = 0;
    std::vector<std::size_t> retained;  // sentence indices, rank order
    std::vector<double> rank_values;    // ranking value per retained index
    bool shortfall = false;             // fewer than k could be retained
};

struct ExplanationSet {
    std::vector<std::string> sentences;  // deduplicated union, canonical order
    std::vector<ClusterSelection> per_cluster;
};

using Profile = similarity::SimilarityProfile;

// Top-k of the hard profile, no contrasting.
ClusterSelection top_s(const Profile& v_hard, std::size_t k);

// Top-k of the hard profile after excluding sentences the easy cluster
// already matches at tau.
ClusterSelection set_diff(const Profile& v_hard, const Profile& v_easy, std::size_t k,
                          double tau);

// Top-k of the element-wise difference hard minus easy.
ClusterSelection p_diff(const Profile& v_hard, const Profile& v_easy, std::size_t k);

// Difference ranking restricted to sentences the hard cluster matches at tau.
ClusterSelection fp_diff(const Profile& v_hard, const Profile& v_easy, std::size_t k,
                         double tau);

ClusterSelection apply_method(SelectMethod method, const Profile& v_hard, const Profile& v_easy,
                              std::size_t k, double tau);

ExplanationSet union_selections(const std::vector<ClusterSelection>& selections,
                                const std::vector<std::string>& sentence_ids);

}  // namespace lbee::select
