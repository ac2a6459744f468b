#pragma once

#include <cstddef>
#include <vector>

#include "lbee/types.hpp"

namespace lbee::similarity {

struct SimilarityProfile {
    std::size_t cluster_index = 0;
    bool hard = false;
    std::vector<double> values;  // one cosine per sentence, canonical order
};

SimilarityProfile similarity_profile(const std::vector<double>& prototype,
                                     const EmbeddingTable& sentences);

// All profiles for one prototype list in one parallel pass.
std::vector<SimilarityProfile> similarity_profiles(
    const std::vector<std::vector<double>>& prototypes, const EmbeddingTable& sentences,
    bool hard);

// hard cluster index -> closest easy cluster index (max cosine, ties to the
// smallest easy index).
std::vector<std::size_t> nearest_easy_map(const std::vector<std::vector<double>>& hard_prototypes,
                                          const std::vector<std::vector<double>>& easy_prototypes);

// {n : values[n] >= tau}, ascending.
std::vector<std::size_t> candidate_set(const SimilarityProfile& profile, double tau);

}  // namespace lbee::similarity
