#include "lbee/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "lbee/errors.hpp"
#include "lbee/kernels.hpp"

namespace lbee::cluster {

ClusterModel ward_cluster(const EmbeddingTable& embeddings, std::size_t c) {
    const std::size_t n = embeddings.rows();
    if (c < 1 || c > n)
        throw validation_error("TooManyClusters",
                               "requested " + std::to_string(c) + " clusters for " +
                                   std::to_string(n) + " rows");

    // dist[i*n+j] holds the Lance-Williams Ward value between the clusters
    // currently rooted at slots i and j; slots start as singletons.
    auto dist = kernels::pairwise_sq_dist(embeddings.data, n, embeddings.dim);

    struct Slot {
        std::vector<std::size_t> members;  // sorted row indices
        bool alive = true;
    };
    std::vector<Slot> slots(n);
    for (std::size_t i = 0; i < n; ++i) slots[i].members = {i};

    ClusterModel model;
    std::size_t alive = n;
    while (alive > c) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0, best_j = 0;
        std::size_t best_lo = 0, best_hi = 0;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!slots[i].alive) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!slots[j].alive) continue;
                const double d = dist[i * n + j];
                const std::size_t lo = std::min(slots[i].members.front(), slots[j].members.front());
                const std::size_t hi = std::max(slots[i].members.front(), slots[j].members.front());
                if (!found || d < best ||
                    (d == best && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
                    found = true;
                    best = d;
                    best_i = i;
                    best_j = j;
                    best_lo = lo;
                    best_hi = hi;
                }
            }
        }

        model.merge_log.push_back({best_lo, best_hi, best});

        const double na = static_cast<double>(slots[best_i].members.size());
        const double nb = static_cast<double>(slots[best_j].members.size());
        const double dab = dist[best_i * n + best_j];
        for (std::size_t k = 0; k < n; ++k) {
            if (!slots[k].alive || k == best_i || k == best_j) continue;
            const double nk = static_cast<double>(slots[k].members.size());
            const double updated = ((na + nk) * dist[best_i * n + k] +
                                    (nb + nk) * dist[best_j * n + k] - nk * dab) /
                                   (na + nb + nk);
            dist[best_i * n + k] = updated;
            dist[k * n + best_i] = updated;
        }

        auto& dst = slots[best_i].members;
        auto& src = slots[best_j].members;
        std::vector<std::size_t> merged;
        merged.reserve(dst.size() + src.size());
        std::merge(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(merged));
        dst = std::move(merged);
        slots[best_j].alive = false;
        --alive;
    }

    // Final clusters ordered by smallest member row index.
    std::vector<const Slot*> final_slots;
    for (const auto& slot : slots)
        if (slot.alive) final_slots.push_back(&slot);
    std::sort(final_slots.begin(), final_slots.end(),
              [](const Slot* a, const Slot* b) { return a->members.front() < b->members.front(); });

    for (std::size_t ci = 0; ci < final_slots.size(); ++ci) {
        std::vector<std::string> ids;
        for (std::size_t row : final_slots[ci]->members) {
            ids.push_back(embeddings.ids[row]);
            model.assignments[embeddings.ids[row]] = ci;
        }
        model.member_ids.push_back(std::move(ids));
    }
    return model;
}

void compute_prototypes(ClusterModel& model, const EmbeddingTable& embeddings) {
    std::map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < embeddings.rows(); ++i) row_of[embeddings.ids[i]] = i;

    model.prototypes.clear();
    for (std::size_t ci = 0; ci < model.member_ids.size(); ++ci) {
        std::vector<double> mean(embeddings.dim, 0.0);
        for (const auto& id : model.member_ids[ci]) {
            const auto it = row_of.find(id);
            if (it == row_of.end())
                throw validation_error("UnknownId", "cluster member not in table: " + id);
            const auto row = embeddings.row(it->second);
            for (std::size_t k = 0; k < embeddings.dim; ++k) mean[k] += row[k];
        }
        const double count = static_cast<double>(model.member_ids[ci].size());
        double sq = 0.0;
        for (std::size_t k = 0; k < embeddings.dim; ++k) {
            mean[k] /= count;
            sq += mean[k] * mean[k];
        }
        const double norm = std::sqrt(sq);
        if (norm < 1e-12)
            throw runtime_fault("DegeneratePrototype",
                                "cluster " + std::to_string(ci) + " mean has near-zero norm");
        for (double& v : mean) v /= norm;
        model.prototypes.push_back(std::move(mean));
    }
}

Assignment assign_to_prototypes(const EmbeddingTable& embeddings,
                                const std::vector<std::vector<double>>& prototypes) {
    if (prototypes.empty())
        throw validation_error("NoEasyClusters", "no prototypes to assign to");
    const std::size_t dim = embeddings.dim;
    std::vector<double> flat;
    flat.reserve(prototypes.size() * dim);
    for (const auto& p : prototypes) {
        if (p.size() != dim)
            throw validation_error("DimensionMismatch", "prototype dim does not match table");
        flat.insert(flat.end(), p.begin(), p.end());
    }

    Assignment result;
    kernels::argmax_dot(embeddings.data, embeddings.rows(), flat, prototypes.size(), dim,
                        result.cluster_index, result.rank_score);
    return result;
}

void dump_merges_csv(const ClusterModel& model, const std::string& path) {
    std::ofstream os(path);
    os << "step,cluster_a,cluster_b,ward_distance\n";
    os.precision(17);
    for (std::size_t i = 0; i < model.merge_log.size(); ++i) {
        const auto& step = model.merge_log[i];
        os << i << ',' << step.cluster_a << ',' << step.cluster_b << ',' << step.ward_distance
           << '\n';
    }
}

}  // namespace lbee::cluster
