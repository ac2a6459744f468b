#include "lbee/synth.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "lbee/errors.hpp"
#include "lbee/rng.hpp"

namespace lbee::synth {

namespace {

std::string image_id(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "img_%04zu", i);
    return buf;
}

std::string sentence_id(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s_%03zu", i);
    return buf;
}

std::vector<double> random_unit(Xoshiro256pp& rng, std::size_t dim) {
    std::vector<double> v(dim);
    double sq = 0.0;
    for (auto& x : v) {
        x = rng.gaussian();
        sq += x * x;
    }
    const double norm = std::sqrt(sq);
    for (auto& x : v) x /= norm;
    return v;
}

}  // namespace

void SynthParams::validate() const {
    if (groups < 2) throw validation_error("BadConfig", "groups must be >= 2");
    if (dim < 2) throw validation_error("BadConfig", "dim must be >= 2");
    if (separation <= 0.0) throw validation_error("BadConfig", "separation must be > 0");
    if (performance_gap <= 0.0)
        throw validation_error("BadConfig", "performance_gap must be > 0");
    if (hard_group_indices.empty())
        throw validation_error("BadConfig", "need at least one hard group");
    for (std::size_t g : hard_group_indices)
        if (g >= groups) throw validation_error("BadConfig", "hard group index out of range");
    if (images_per_group < 1 || sentences_per_group < 1)
        throw validation_error("BadConfig", "per-group counts must be >= 1");
}

SynthBundle generate_benchmark(const SynthParams& params) {
    params.validate();
    Xoshiro256pp rng(params.seed);

    // Group directions with bounded pairwise cosine.
    const double max_cos = 1.0 - params.separation;
    std::vector<std::vector<double>> directions;
    bool feasible = false;
    for (int attempt = 0; attempt < 1000 && !feasible; ++attempt) {
        directions.clear();
        feasible = true;
        for (std::size_t g = 0; g < params.groups && feasible; ++g) {
            auto candidate = random_unit(rng, params.dim);
            for (const auto& other : directions) {
                double cosine = 0.0;
                for (std::size_t k = 0; k < params.dim; ++k) cosine += candidate[k] * other[k];
                if (cosine > max_cos) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) directions.push_back(std::move(candidate));
        }
    }
    if (!feasible)
        throw runtime_fault("InfeasibleSeparation",
                            "could not sample " + std::to_string(params.groups) +
                                " directions at the requested separation");

    SynthBundle out;
    auto& bundle = out.bundle;

    const auto is_hard = [&](std::size_t g) {
        for (std::size_t h : params.hard_group_indices)
            if (h == g) return true;
        return false;
    };

    // Images: direction plus ambient Gaussian noise, stored raw (the loader
    // normalizes).
    bundle.images_raw.dim = static_cast<std::uint32_t>(params.dim);
    const double base_performance = 0.9;
    std::size_t image_counter = 0;
    for (std::size_t g = 0; g < params.groups; ++g) {
        for (std::size_t i = 0; i < params.images_per_group; ++i) {
            const std::string id = image_id(image_counter++);
            bundle.images_raw.ids.push_back(id);
            out.group_of[id] = g;
            for (std::size_t k = 0; k < params.dim; ++k)
                bundle.images_raw.values.push_back(
                    static_cast<float>(directions[g][k] + params.noise_scale * rng.gaussian()));
        }
    }

    // Sentences: tighter noise around the group direction.
    bundle.sentences_raw.dim = static_cast<std::uint32_t>(params.dim);
    std::size_t sentence_counter = 0;
    for (std::size_t g = 0; g < params.groups; ++g) {
        for (std::size_t j = 0; j < params.sentences_per_group; ++j) {
            const std::string id = sentence_id(sentence_counter++);
            bundle.sentences_raw.ids.push_back(id);
            bundle.catalog.sentence_ids.push_back(id);
            bundle.catalog.texts.push_back("synthetic mode " + std::to_string(g) + " sentence " +
                                           std::to_string(j));
            if (is_hard(g)) out.planted_gt.push_back(id);
            for (std::size_t k = 0; k < params.dim; ++k)
                bundle.sentences_raw.values.push_back(static_cast<float>(
                    directions[g][k] + 0.3 * params.noise_scale * rng.gaussian()));
        }
    }

    bundle.images = ingest::normalize_embeddings(ingest::to_table(bundle.images_raw));
    bundle.sentences = ingest::normalize_embeddings(ingest::to_table(bundle.sentences_raw));

    // Relevance: a sentence describes exactly the images of its own group.
    RelevanceMatrix relevance;
    relevance.image_ids = bundle.images_raw.ids;
    relevance.sentence_ids = bundle.sentences_raw.ids;
    for (const auto& image : relevance.image_ids) {
        const std::size_t g = out.group_of[image];
        for (std::size_t j = 0; j < params.sentences_per_group; ++j)
            relevance.positives.insert(
                {image, sentence_id(g * params.sentences_per_group + j)});
    }
    bundle.relevance = std::move(relevance);

    // Performance is depressed on hard groups; confidence is a monotone
    // transform of performance plus small seeded noise, so score splitting
    // recovers the planted hard set.
    ScoreTable performance;
    performance.kind = ScoreKind::Performance;
    performance.polarity = Polarity::HigherIsEasier;
    ScoreTable confidence;
    confidence.kind = ScoreKind::Confidence;
    confidence.polarity = Polarity::HigherIsHarder;
    for (const auto& image : bundle.images_raw.ids) {
        const std::size_t g = out.group_of[image];
        const double omega = is_hard(g) ? base_performance - params.performance_gap
                                        : base_performance;
        performance.ids.push_back(image);
        performance.values.push_back(omega);
        confidence.ids.push_back(image);
        confidence.values.push_back(1.0 - omega + 0.05 * params.performance_gap * rng.gaussian());
    }
    bundle.performance = std::move(performance);
    bundle.confidence = std::move(confidence);

    return out;
}

void write_benchmark(const SynthBundle& synth, const std::filesystem::path& dir) {
    ingest::save_bundle(synth.bundle, dir);
    nlohmann::ordered_json planted;
    planted["groups"] = nlohmann::ordered_json::object();
    for (const auto& [image, group] : synth.group_of) planted["groups"][image] = group;
    planted["planted_gt"] = synth.planted_gt;
    std::ofstream os(dir / "planted.json");
    os << planted.dump(2) << '\n';
}

metrics::MetricsReport oracle_evaluate(
    const select::ExplanationSet& explanation, const std::vector<std::string>& sentence_ids,
    const std::vector<std::vector<std::string>>& hard_cluster_members,
    const RelevanceMatrix& relevance, const groundtruth::GroundTruthSet& gt) {
    metrics::MetricsReport report;

    const auto in_gt = [&](const std::string& sentence) {
        for (const auto& member : gt.members)
            if (member == sentence) return true;
        return false;
    };
    const auto pair_relevant = [&](const std::string& image, const std::string& sentence) {
        for (const auto& [pi, ps] : relevance.positives)
            if (pi == image && ps == sentence) return true;
        return false;
    };

    double hr_sum = 0.0, cr_sum = 0.0;
    std::size_t hr_count = 0, cr_count = 0;
    for (const auto& sel : explanation.per_cluster) {
        metrics::ClusterMetrics cm;
        cm.hard_cluster_index = sel.hard_cluster_index;
        if (!sel.retained.empty()) {
            std::size_t hits = 0;
            for (std::size_t n : sel.retained)
                if (in_gt(sentence_ids[n])) ++hits;
            cm.hr = static_cast<double>(hits) / static_cast<double>(sel.retained.size());
            hr_sum += *cm.hr;
            ++hr_count;

            const auto& members = hard_cluster_members[sel.hard_cluster_index];
            if (!members.empty()) {
                double acc = 0.0;
                for (std::size_t n : sel.retained) {
                    std::size_t covered = 0;
                    for (const auto& image : members)
                        if (pair_relevant(image, sentence_ids[n])) ++covered;
                    acc += static_cast<double>(covered) / static_cast<double>(members.size());
                }
                cm.cr = acc / static_cast<double>(sel.retained.size());
                cr_sum += *cm.cr;
                ++cr_count;
            }
        }
        report.per_cluster.push_back(std::move(cm));
    }
    if (hr_count > 0) report.ahr = hr_sum / static_cast<double>(hr_count);
    if (cr_count > 0) report.acr = cr_sum / static_cast<double>(cr_count);

    std::size_t inter = 0;
    for (const auto& retrieved : explanation.sentences)
        if (in_gt(retrieved)) ++inter;
    std::size_t uni = gt.members.size();
    for (const auto& retrieved : explanation.sentences)
        if (!in_gt(retrieved)) ++uni;
    report.union_size = explanation.sentences.size();
    report.gt_size = gt.members.size();
    report.intersection_size = inter;
    if (!gt.members.empty())
        report.tpr = static_cast<double>(inter) / static_cast<double>(gt.members.size());
    if (uni > 0) report.ji = static_cast<double>(inter) / static_cast<double>(uni);
    return report;
}

}  // namespace lbee::synth
