#include "lbee/select.hpp"

#include <algorithm>
#include <set>

#include "lbee/errors.hpp"

namespace lbee::select {

namespace {

// Indices sorted by descending value, ties by ascending index.
std::vector<std::size_t> rank_descending(const std::vector<double>& values,
                                         const std::vector<std::size_t>& pool) {
    std::vector<std::size_t> order = pool;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return a < b;
    });
    return order;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

ClusterSelection take_top(const std::vector<double>& rank_values,
                          const std::vector<std::size_t>& pool, std::size_t k) {
    const auto order = rank_descending(rank_values, pool);
    ClusterSelection sel;
    for (std::size_t i = 0; i < order.size() && i < k; ++i) {
        sel.retained.push_back(order[i]);
        sel.rank_values.push_back(rank_values[order[i]]);
    }
    sel.shortfall = sel.retained.size() < k;
    return sel;
}

void check_lengths(const Profile& v_hard, const Profile& v_easy) {
    if (v_hard.values.size() != v_easy.values.size())
        throw validation_error("LengthMismatch", "similarity profiles differ in length");
}

}  // namespace

ClusterSelection top_s(const Profile& v_hard, std::size_t k) {
    return take_top(v_hard.values, all_indices(v_hard.values.size()), k);
}

ClusterSelection set_diff(const Profile& v_hard, const Profile& v_easy, std::size_t k,
                          double tau) {
    check_lengths(v_hard, v_easy);
    std::vector<std::size_t> pool;
    for (std::size_t n = 0; n < v_hard.values.size(); ++n)
        if (v_easy.values[n] < tau) pool.push_back(n);
    return take_top(v_hard.values, pool, k);
}

ClusterSelection p_diff(const Profile& v_hard, const Profile& v_easy, std::size_t k) {
    check_lengths(v_hard, v_easy);
    std::vector<double> diff(v_hard.values.size());
    for (std::size_t n = 0; n < diff.size(); ++n)
        diff[n] = v_hard.values[n] - v_easy.values[n];
    return take_top(diff, all_indices(diff.size()), k);
}

ClusterSelection fp_diff(const Profile& v_hard, const Profile& v_easy, std::size_t k,
                         double tau) {
    check_lengths(v_hard, v_easy);
    std::vector<double> diff(v_hard.values.size());
    std::vector<std::size_t> pool;
    for (std::size_t n = 0; n < diff.size(); ++n) {
        diff[n] = v_hard.values[n] - v_easy.values[n];
        if (v_hard.values[n] >= tau) pool.push_back(n);
    }
    return take_top(diff, pool, k);
}

ClusterSelection apply_method(SelectMethod method, const Profile& v_hard, const Profile& v_easy,
                              std::size_t k, double tau) {
    switch (method) {
        case SelectMethod::TopS: return top_s(v_hard, k);
        case SelectMethod::SetDiff: return set_diff(v_hard, v_easy, k, tau);
        case SelectMethod::PDiff: return p_diff(v_hard, v_easy, k);
        case SelectMethod::FPDiff: return fp_diff(v_hard, v_easy, k, tau);
    }
    throw validation_error("UnknownMethod", "unhandled selection method");
}

ExplanationSet union_selections(const std::vector<ClusterSelection>& selections,
                                const std::vector<std::string>& sentence_ids) {
    ExplanationSet out;
    out.per_cluster = selections;
    std::set<std::size_t> members;
    for (const auto& sel : selections)
        members.insert(sel.retained.begin(), sel.retained.end());
    for (std::size_t n : members) out.sentences.push_back(sentence_ids[n]);
    return out;
}

}  // namespace lbee::select
