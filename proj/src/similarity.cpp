#include "lbee/similarity.hpp"

#include "lbee/errors.hpp"
#include "lbee/kernels.hpp"

namespace lbee::similarity {

SimilarityProfile similarity_profile(const std::vector<double>& prototype,
                                     const EmbeddingTable& sentences) {
    if (prototype.size() != sentences.dim)
        throw validation_error("DimensionMismatch", "prototype dim does not match sentences");
    SimilarityProfile profile;
    profile.values = kernels::dot_matrix_serial(prototype, 1, sentences.data, sentences.rows(),
                                                sentences.dim);
    return profile;
}

std::vector<SimilarityProfile> similarity_profiles(
    const std::vector<std::vector<double>>& prototypes, const EmbeddingTable& sentences,
    bool hard) {
    std::vector<double> flat;
    flat.reserve(prototypes.size() * sentences.dim);
    for (const auto& p : prototypes) {
        if (p.size() != sentences.dim)
            throw validation_error("DimensionMismatch", "prototype dim does not match sentences");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    const auto dots =
        kernels::dot_matrix(flat, prototypes.size(), sentences.data, sentences.rows(),
                            sentences.dim);

    std::vector<SimilarityProfile> profiles(prototypes.size());
    for (std::size_t i = 0; i < prototypes.size(); ++i) {
        profiles[i].cluster_index = i;
        profiles[i].hard = hard;
        profiles[i].values.assign(dots.begin() + i * sentences.rows(),
                                  dots.begin() + (i + 1) * sentences.rows());
    }
    return profiles;
}

std::vector<std::size_t> nearest_easy_map(const std::vector<std::vector<double>>& hard_prototypes,
                                          const std::vector<std::vector<double>>& easy_prototypes) {
    if (easy_prototypes.empty())
        throw validation_error("NoEasyClusters", "nearest_easy_map needs at least one easy cluster");
    std::vector<std::size_t> mapping(hard_prototypes.size(), 0);
    for (std::size_t h = 0; h < hard_prototypes.size(); ++h) {
        const auto& hp = hard_prototypes[h];
        double best = -2.0;
        std::size_t arg = 0;
        for (std::size_t e = 0; e < easy_prototypes.size(); ++e) {
            double cosine = 0.0;
            for (std::size_t k = 0; k < hp.size(); ++k) cosine += hp[k] * easy_prototypes[e][k];
            if (cosine > best) {
                best = cosine;
                arg = e;
            }
        }
        mapping[h] = arg;
    }
    return mapping;
}

std::vector<std::size_t> candidate_set(const SimilarityProfile& profile, double tau) {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < profile.values.size(); ++n)
        if (profile.values[n] >= tau) out.push_back(n);
    return out;
}

}  // namespace lbee::similarity
