#include "lbee/metrics.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "lbee/errors.hpp"

namespace lbee::metrics {

namespace {

std::optional<double> mean_of_defined(const std::vector<ClusterMetrics>& items, bool coverage) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& item : items) {
        const auto& value = coverage ? item.cr : item.hr;
        if (value) {
            sum += *value;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

}  // namespace

std::pair<std::vector<ClusterMetrics>, std::optional<double>> cluster_hardness_ratios(
    const std::vector<select::ClusterSelection>& selections,
    const std::vector<std::string>& sentence_ids, const groundtruth::GroundTruthSet& gt) {
    const std::unordered_set<std::string> gt_members(gt.members.begin(), gt.members.end());
    std::vector<ClusterMetrics> per_cluster;
    for (const auto& sel : selections) {
        ClusterMetrics cm;
        cm.hard_cluster_index = sel.hard_cluster_index;
        if (sel.retained.empty()) {
            cm.undefined_reason = "empty selection";
        } else {
            std::size_t hits = 0;
            for (std::size_t n : sel.retained)
                if (gt_members.count(sentence_ids[n])) ++hits;
            cm.hr = static_cast<double>(hits) / static_cast<double>(sel.retained.size());
        }
        per_cluster.push_back(std::move(cm));
    }
    return {per_cluster, mean_of_defined(per_cluster, false)};
}

std::pair<std::vector<ClusterMetrics>, std::optional<double>> cluster_coverage_ratios(
    const std::vector<select::ClusterSelection>& selections,
    const std::vector<std::string>& sentence_ids,
    const std::vector<std::vector<std::string>>& cluster_members,
    const RelevanceMatrix& relevance) {
    std::vector<ClusterMetrics> per_cluster;
    for (const auto& sel : selections) {
        ClusterMetrics cm;
        cm.hard_cluster_index = sel.hard_cluster_index;
        const auto& members = cluster_members.at(sel.hard_cluster_index);
        if (sel.retained.empty() || members.empty()) {
            cm.undefined_reason = sel.retained.empty() ? "empty selection" : "empty cluster";
        } else {
            double acc = 0.0;
            for (std::size_t n : sel.retained) {
                std::size_t covered = 0;
                for (const auto& image : members)
                    if (relevance.relevant(image, sentence_ids[n])) ++covered;
                acc += static_cast<double>(covered) / static_cast<double>(members.size());
            }
            cm.cr = acc / static_cast<double>(sel.retained.size());
        }
        per_cluster.push_back(std::move(cm));
    }
    return {per_cluster, mean_of_defined(per_cluster, true)};
}

SetAgreement set_agreement(const select::ExplanationSet& explanation,
                           const groundtruth::GroundTruthSet& gt) {
    SetAgreement out;
    const std::set<std::string> retrieved(explanation.sentences.begin(),
                                          explanation.sentences.end());
    const std::set<std::string> truth(gt.members.begin(), gt.members.end());
    std::size_t inter = 0;
    for (const auto& s : retrieved)
        if (truth.count(s)) ++inter;
    out.union_size = retrieved.size();
    out.gt_size = truth.size();
    out.intersection_size = inter;
    if (!truth.empty())
        out.tpr = static_cast<double>(inter) / static_cast<double>(truth.size());
    const std::size_t set_union = retrieved.size() + truth.size() - inter;
    if (set_union > 0)
        out.ji = static_cast<double>(inter) / static_cast<double>(set_union);
    return out;
}

MetricsReport evaluate(const select::ExplanationSet& explanation,
                       const std::vector<std::string>& sentence_ids,
                       const std::vector<std::vector<std::string>>& hard_cluster_members,
                       const RelevanceMatrix& relevance, const groundtruth::GroundTruthSet& gt) {
    MetricsReport report;
    auto [hr_items, ahr] = cluster_hardness_ratios(explanation.per_cluster, sentence_ids, gt);
    auto [cr_items, acr] =
        cluster_coverage_ratios(explanation.per_cluster, sentence_ids, hard_cluster_members,
                                relevance);
    report.per_cluster = hr_items;
    for (std::size_t i = 0; i < report.per_cluster.size(); ++i)
        report.per_cluster[i].cr = cr_items[i].cr;
    report.ahr = ahr;
    report.acr = acr;
    if (!ahr) report.notes.push_back("AHR undefined: no cluster with a non-empty selection");
    if (!acr) report.notes.push_back("ACR undefined: no cluster with a non-empty selection");

    const auto agreement = set_agreement(explanation, gt);
    report.tpr = agreement.tpr;
    report.ji = agreement.ji;
    report.union_size = agreement.union_size;
    report.gt_size = agreement.gt_size;
    report.intersection_size = agreement.intersection_size;
    if (!agreement.tpr) report.notes.push_back("TPR undefined: ground-truth set is empty");
    if (!agreement.ji)
        report.notes.push_back("JI undefined: both retrieved and ground-truth sets are empty");
    return report;
}

double precision_at_k(const PartitionEvalInput& input, std::size_t k) {
    if (k < 1) throw validation_error("BadConfig", "k must be >= 1");
    if (input.pred_rankings.empty())
        throw validation_error("EmptySubset", "no predicted partitions");
    if (input.evaluated_subset.empty())
        throw validation_error("EmptySubset", "evaluated subset is empty");

    std::vector<std::unordered_set<std::string>> top_k;
    for (const auto& ranking : input.pred_rankings) {
        std::unordered_set<std::string> prefix;
        for (std::size_t i = 0; i < ranking.size() && i < k; ++i) prefix.insert(ranking[i]);
        top_k.push_back(std::move(prefix));
    }

    double acc = 0.0;
    for (const auto& name : input.evaluated_subset) {
        const auto it = std::find_if(input.gt_partitions.begin(), input.gt_partitions.end(),
                                     [&](const auto& p) { return p.first == name; });
        if (it == input.gt_partitions.end())
            throw validation_error("UnknownId", "no ground-truth partition named " + name);
        std::size_t best = 0;
        for (const auto& prefix : top_k) {
            std::size_t overlap = 0;
            for (const auto& id : it->second)
                if (prefix.count(id)) ++overlap;
            best = std::max(best, overlap);
        }
        acc += static_cast<double>(best) / static_cast<double>(k);
    }
    return acc / static_cast<double>(input.evaluated_subset.size());
}

}  // namespace lbee::metrics
