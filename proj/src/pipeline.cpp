#include "lbee/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "lbee/errors.hpp"
#include "lbee/groundtruth.hpp"
#include "lbee/similarity.hpp"

namespace lbee::pipeline {

namespace {

// Report floats go through a fixed 12-significant-digit round so identical
// runs serialize byte-identically.
double round_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

// Similarity scores shown next to retained sentences are additionally
// quantized to 1e-4; they are display values and must not wobble with the
// last float32 bits of the raw embedding files.
double round_display(double v) { return round_sig(std::round(v * 1e4) / 1e4); }

nlohmann::ordered_json metric_or_null(const std::optional<double>& v) {
    if (!v) return nullptr;
    return round_sig(*v);
}

EmbeddingTable subset_table(const EmbeddingTable& table, const std::vector<std::string>& ids) {
    std::map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < table.rows(); ++i) row_of[table.ids[i]] = i;
    EmbeddingTable out;
    out.dim = table.dim;
    out.normalized = table.normalized;
    for (const auto& id : ids) {
        const auto it = row_of.find(id);
        if (it == row_of.end()) throw validation_error("UnknownId", id);
        out.ids.push_back(id);
        const auto row = table.row(it->second);
        out.data.insert(out.data.end(), row.begin(), row.end());
    }
    return out;
}

nlohmann::ordered_json config_json(const RunConfig& config) {
    nlohmann::ordered_json j;
    j["a"] = round_sig(config.a);
    j["o"] = round_sig(config.o);
    j["beta"] = config.beta_override ? nlohmann::ordered_json(round_sig(*config.beta_override))
                                     : nlohmann::ordered_json(nullptr);
    j["c_easy"] = config.c_easy;
    j["c_hard"] = config.c_hard;
    j["k"] = config.k;
    j["tau"] = round_sig(config.tau);
    j["method"] = to_string(config.method);
    j["split_mode"] = to_string(config.split_mode);
    j["seed"] = config.seed;
    return j;
}

}  // namespace

PipelineResult run_pipeline(const ingest::Bundle& bundle, const RunConfig& config) {
    config.validate();
    PipelineResult result;

    // Step 1: split.
    if (config.split_mode == SplitMode::Score) {
        const auto [t_easy, t_hard] = split::derive_thresholds(bundle.confidence, config.a);
        result.split = split::split_by_score(bundle.confidence, t_easy, t_hard);
    } else {
        if (!bundle.outcomes)
            throw validation_error("MissingFile", "outcome split requires outcomes.csv");
        result.split = split::split_by_outcome(bundle.images.ids, *bundle.outcomes);
    }

    const auto clamp_c = [&](std::size_t requested, std::size_t available, const char* side) {
        if (available == 0) return std::size_t{0};
        if (requested > available) {
            result.warnings.push_back(std::string("requested ") + std::to_string(requested) +
                                      " " + side + " clusters, clamped to subset size " +
                                      std::to_string(available));
            return available;
        }
        return requested;
    };

    const std::size_t c_easy = clamp_c(config.c_easy, result.split.easy.size(), "easy");
    const std::size_t c_hard = clamp_c(config.c_hard, result.split.hard.size(), "hard");

    if (result.split.hard.empty())
        result.warnings.push_back("NoHardSamples: hard subset is empty, emitting empty selection");
    const bool needs_easy = config.method != SelectMethod::TopS;
    if (result.split.easy.empty() && needs_easy && !result.split.hard.empty())
        result.warnings.push_back(
            "NoEasyClusters: easy subset is empty, contrastive selection emits empty sets");

    // Step 2: cluster both subsets and compute prototypes.
    EmbeddingTable hard_table, easy_table;
    if (c_hard > 0) {
        hard_table = subset_table(bundle.images, result.split.hard);
        result.hard_model = cluster::ward_cluster(hard_table, c_hard);
        cluster::compute_prototypes(result.hard_model, hard_table);
    }
    if (c_easy > 0) {
        easy_table = subset_table(bundle.images, result.split.easy);
        result.easy_model = cluster::ward_cluster(easy_table, c_easy);
        cluster::compute_prototypes(result.easy_model, easy_table);
    }

    // Steps 3-5: profiles, nearest easy prototypes, per-cluster selection,
    // union.
    std::vector<similarity::SimilarityProfile> hard_profiles, easy_profiles;
    std::vector<std::size_t> easy_of_hard;
    const bool can_select =
        c_hard > 0 && (!needs_easy || c_easy > 0);
    if (c_hard > 0)
        hard_profiles =
            similarity::similarity_profiles(result.hard_model.prototypes, bundle.sentences, true);
    if (c_easy > 0)
        easy_profiles =
            similarity::similarity_profiles(result.easy_model.prototypes, bundle.sentences, false);
    if (c_hard > 0 && c_easy > 0)
        easy_of_hard = similarity::nearest_easy_map(result.hard_model.prototypes,
                                                    result.easy_model.prototypes);

    std::vector<select::ClusterSelection> selections;
    for (std::size_t h = 0; h < (can_select ? hard_profiles.size() : 0); ++h) {
        static const similarity::SimilarityProfile empty_profile;
        const auto& easy_profile = easy_of_hard.empty()
                                       ? similarity::SimilarityProfile{0, false,
                                             std::vector<double>(hard_profiles[h].values.size(),
                                                                 0.0)}
                                       : easy_profiles[easy_of_hard[h]];
        auto sel = select::apply_method(config.method, hard_profiles[h], easy_profile, config.k,
                                        config.tau);
        sel.hard_cluster_index = h;
        if (sel.shortfall)
            result.warnings.push_back("shortfall: hard cluster " + std::to_string(h) +
                                      " retained " + std::to_string(sel.retained.size()) +
                                      " of " + std::to_string(config.k) + " sentences");
        selections.push_back(std::move(sel));
    }
    result.explanation = select::union_selections(selections, bundle.sentences.ids);

    // Evaluation against the hardness ground truth, when available.
    nlohmann::ordered_json metrics_json = nullptr;
    if (bundle.performance && bundle.relevance) {
        const auto hardness = groundtruth::sentence_hardness(*bundle.performance,
                                                             *bundle.relevance);
        const double beta = config.beta_override
                                ? *config.beta_override
                                : groundtruth::beta_from_factor(hardness, config.o);
        const auto gt = groundtruth::build_gt_set(hardness, beta);
        std::size_t excluded = 0;
        for (const auto& s : hardness.sentences)
            if (!s.hardness) ++excluded;
        if (excluded > 0)
            result.warnings.push_back(std::to_string(excluded) +
                                      " sentences with empty support excluded from ground truth");

        const auto report = metrics::evaluate(result.explanation, bundle.sentences.ids,
                                              result.hard_model.member_ids, *bundle.relevance, gt);
        for (const auto& note : report.notes) result.warnings.push_back(note);

        metrics_json = nlohmann::ordered_json::object();
        metrics_json["beta"] = round_sig(beta);
        metrics_json["gt_sentences"] = gt.members;
        nlohmann::ordered_json per_cluster = nlohmann::ordered_json::array();
        for (const auto& cm : report.per_cluster) {
            nlohmann::ordered_json c;
            c["cluster"] = cm.hard_cluster_index;
            c["hr"] = metric_or_null(cm.hr);
            c["cr"] = metric_or_null(cm.cr);
            if (!cm.undefined_reason.empty()) c["undefined_reason"] = cm.undefined_reason;
            per_cluster.push_back(std::move(c));
        }
        metrics_json["per_cluster"] = std::move(per_cluster);
        metrics_json["ahr"] = metric_or_null(report.ahr);
        metrics_json["acr"] = metric_or_null(report.acr);
        metrics_json["tpr"] = metric_or_null(report.tpr);
        metrics_json["ji"] = metric_or_null(report.ji);
        metrics_json["counts"] = {{"retrieved", report.union_size},
                                  {"ground_truth", report.gt_size},
                                  {"intersection", report.intersection_size}};
    }

    // Report assembly.
    nlohmann::ordered_json& report = result.report;
    report["config"] = config_json(config);

    nlohmann::ordered_json split_json;
    split_json["easy"] = result.split.easy.size();
    split_json["hard"] = result.split.hard.size();
    split_json["neutral"] = result.split.neutral.size();
    if (result.split.thresholds_used) {
        split_json["t_easy"] = round_sig(result.split.thresholds_used->first);
        split_json["t_hard"] = round_sig(result.split.thresholds_used->second);
    }
    report["split"] = std::move(split_json);

    nlohmann::ordered_json clusters_json;
    nlohmann::ordered_json easy_clusters = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < result.easy_model.member_ids.size(); ++i)
        easy_clusters.push_back({{"index", i}, {"size", result.easy_model.member_ids[i].size()}});
    nlohmann::ordered_json hard_clusters = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < result.hard_model.member_ids.size(); ++i) {
        nlohmann::ordered_json c;
        c["index"] = i;
        c["size"] = result.hard_model.member_ids[i].size();
        if (!easy_of_hard.empty()) c["nearest_easy"] = easy_of_hard[i];
        hard_clusters.push_back(std::move(c));
    }
    clusters_json["easy"] = std::move(easy_clusters);
    clusters_json["hard"] = std::move(hard_clusters);
    report["clusters"] = std::move(clusters_json);

    nlohmann::ordered_json selection_json;
    selection_json["method"] = to_string(config.method);
    nlohmann::ordered_json per_cluster = nlohmann::ordered_json::array();
    for (const auto& sel : result.explanation.per_cluster) {
        nlohmann::ordered_json c;
        c["cluster"] = sel.hard_cluster_index;
        nlohmann::ordered_json retained = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < sel.retained.size(); ++i)
            retained.push_back({{"sentence_id", bundle.sentences.ids[sel.retained[i]]},
                                {"score", round_display(sel.rank_values[i])}});
        c["retained"] = std::move(retained);
        c["shortfall"] = sel.shortfall;
        per_cluster.push_back(std::move(c));
    }
    selection_json["per_cluster"] = std::move(per_cluster);
    selection_json["union"] = result.explanation.sentences;
    report["selection"] = std::move(selection_json);

    report["metrics"] = std::move(metrics_json);
    report["warnings"] = result.warnings;
    return result;
}

PipelineResult run_pipeline(const std::filesystem::path& bundle_dir, const RunConfig& config) {
    return run_pipeline(ingest::load_bundle(bundle_dir), config);
}

std::vector<PipelineResult> run_sweep(const ingest::Bundle& bundle, const RunConfig& base,
                                      const std::string& param,
                                      const std::vector<std::string>& values) {
    std::vector<PipelineResult> results;
    for (const auto& value : values) {
        RunConfig config = base;
        try {
            if (param == "k")
                config.k = std::stoul(value);
            else if (param == "c") {
                config.c_easy = std::stoul(value);
                config.c_hard = std::stoul(value);
            } else if (param == "o")
                config.o = std::stod(value);
            else if (param == "tau")
                config.tau = std::stod(value);
            else if (param == "a")
                config.a = std::stod(value);
            else if (param == "method")
                config.method = select_method_from_string(value);
            else
                throw validation_error("UnknownSweepParameter", param);
        } catch (const error&) {
            throw;
        } catch (const std::exception&) {
            throw validation_error("BadValue", "cannot parse sweep value: " + value);
        }
        results.push_back(run_pipeline(bundle, config));
    }
    return results;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig config;
    if (j.contains("a")) config.a = j["a"].get<double>();
    if (j.contains("o")) config.o = j["o"].get<double>();
    if (j.contains("beta") && !j["beta"].is_null())
        config.beta_override = j["beta"].get<double>();
    if (j.contains("c_easy")) config.c_easy = j["c_easy"].get<std::size_t>();
    if (j.contains("c_hard")) config.c_hard = j["c_hard"].get<std::size_t>();
    if (j.contains("k")) config.k = j["k"].get<std::size_t>();
    if (j.contains("tau")) config.tau = j["tau"].get<double>();
    if (j.contains("method")) config.method = select_method_from_string(j["method"]);
    if (j.contains("split_mode")) config.split_mode = split_mode_from_string(j["split_mode"]);
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    config.validate();
    return config;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw validation_error("MissingFile", file.string());
    nlohmann::json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw validation_error("BadFormat", file.string() + ": " + e.what());
    }
    return config_from_json(j);
}

std::string serialize_report(const nlohmann::ordered_json& report) {
    return report.dump(2) + "\n";
}

}  // namespace lbee::pipeline
