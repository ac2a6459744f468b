#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbee/cluster.hpp"
#include "lbee/errors.hpp"
#include "lbee/groundtruth.hpp"
#include "lbee/ingest.hpp"
#include "lbee/pipeline.hpp"
#include "lbee/synth.hpp"

namespace {

using nlohmann::ordered_json;

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out);
        os << text;
    }
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> values;
    std::string item;
    for (char c : csv) {
        if (c == ',') {
            values.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    if (!item.empty()) values.push_back(item);
    return values;
}

// Flattened metric rows for external plotting.
std::string metrics_csv(const std::vector<lbee::pipeline::PipelineResult>& results,
                        const std::string& param,
                        const std::vector<std::string>& values) {
    std::string csv = "param,value,method,ahr,acr,tpr,ji\n";
    const auto cell = [](const ordered_json& v) {
        return v.is_null() ? std::string() : v.dump();
    };
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i].report;
        const auto& m = r["metrics"];
        csv += param + "," + values[i] + "," + r["config"]["method"].get<std::string>();
        if (m.is_null()) {
            csv += ",,,,\n";
        } else {
            csv += "," + cell(m["ahr"]) + "," + cell(m["acr"]) + "," + cell(m["tpr"]) + "," +
                   cell(m["ji"]) + "\n";
        }
    }
    return csv;
}

lbee::groundtruth::ConfusionReport run_eval_relevance(const std::string& pred,
                                                      const std::string& pred2,
                                                      const std::string& mode,
                                                      const std::string& gt,
                                                      const std::string& images_file,
                                                      const std::string& sentences_file,
                                                      lbee::RelevanceMatrix& combined_out) {
    const auto read_ids = [](const std::string& file) {
        std::ifstream is(file);
        if (!is) throw lbee::validation_error("MissingFile", file);
        std::vector<std::string> ids;
        std::string line;
        while (std::getline(is, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) ids.push_back(line);
        }
        return ids;
    };
    const auto images = read_ids(images_file);
    const auto sentences = read_ids(sentences_file);

    auto prediction = lbee::ingest::read_relevance(pred, images, sentences);
    if (!pred2.empty()) {
        const auto second = lbee::ingest::read_relevance(pred2, images, sentences);
        const auto combine_mode = mode == "and" ? lbee::groundtruth::CombineMode::And
                                                : lbee::groundtruth::CombineMode::Or;
        prediction = lbee::groundtruth::combine_relevance(prediction, second, combine_mode);
    }
    combined_out = prediction;
    const auto truth = lbee::ingest::read_relevance(gt, images, sentences);
    return lbee::groundtruth::relevance_confusion(prediction, truth);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Failure-mode discovery and description over joint image-text embeddings"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run the full pipeline on a bundle");
    std::string bundle_dir, config_file, out_file, dump_merges;
    run->add_option("--bundle", bundle_dir, "Bundle directory")->required();
    run->add_option("--config", config_file, "JSON config file");
    run->add_option("--out", out_file, "Report output path (default stdout)");
    run->add_option("--dump-merges", dump_merges, "Write hard-set merge log as CSV");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run the pipeline over a parameter sweep");
    std::string sweep_param, sweep_values, sweep_csv;
    sweep->add_option("--bundle", bundle_dir, "Bundle directory")->required();
    sweep->add_option("--config", config_file, "JSON config file");
    sweep->add_option("--param", sweep_param, "Parameter to vary (k, c, o, tau, a, method)")
        ->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep->add_option("--out", out_file, "Report output path (default stdout)");
    sweep->add_option("--csv", sweep_csv, "Optional flattened metrics CSV path");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a planted synthetic bundle");
    lbee::synth::SynthParams params;
    std::string synth_out, hard_groups_csv;
    synth_cmd->add_option("--seed", params.seed, "PRNG seed");
    synth_cmd->add_option("--dim", params.dim, "Embedding dimension");
    synth_cmd->add_option("--groups", params.groups, "Number of planted groups");
    synth_cmd->add_option("--images-per-group", params.images_per_group, "Images per group");
    synth_cmd->add_option("--sentences-per-group", params.sentences_per_group,
                          "Sentences per group");
    synth_cmd->add_option("--hard-groups", hard_groups_csv,
                          "Comma-separated hard group indices (default 1,4)");
    synth_cmd->add_option("--separation", params.separation, "Direction separation");
    synth_cmd->add_option("--performance-gap", params.performance_gap,
                          "Performance depression on hard groups");
    synth_cmd->add_option("--noise-scale", params.noise_scale, "Ambient noise scale");
    synth_cmd->add_option("--out", synth_out, "Output bundle directory")->required();

    // eval-relevance
    auto* eval = app.add_subcommand("eval-relevance",
                                    "Compare (optionally combined) relevance predictions to GT");
    std::string pred_file, pred2_file, combine_mode = "and", gt_file, images_file, sentences_file;
    eval->add_option("--pred", pred_file, "Predicted relevance CSV")->required();
    eval->add_option("--pred2", pred2_file, "Second prediction to combine");
    eval->add_option("--mode", combine_mode, "Combination mode: and | or");
    eval->add_option("--gt", gt_file, "Ground-truth relevance CSV")->required();
    eval->add_option("--images", images_file, "Image id list (one per line)")->required();
    eval->add_option("--sentences", sentences_file, "Sentence id list (one per line)")
        ->required();
    eval->add_option("--out", out_file, "Report output path (default stdout)");

    // dump-hardness
    auto* dump = app.add_subcommand("dump-hardness", "Export per-sentence hardness scores");
    dump->add_option("--bundle", bundle_dir, "Bundle directory")->required();
    dump->add_option("--out", out_file, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            const auto config = config_file.empty() ? lbee::RunConfig{}
                                                    : lbee::pipeline::load_config(config_file);
            const auto result = lbee::pipeline::run_pipeline(bundle_dir, config);
            if (!dump_merges.empty())
                lbee::cluster::dump_merges_csv(result.hard_model, dump_merges);
            write_output(lbee::pipeline::serialize_report(result.report), out_file);
        } else if (sweep->parsed()) {
            const auto config = config_file.empty() ? lbee::RunConfig{}
                                                    : lbee::pipeline::load_config(config_file);
            const auto bundle = lbee::ingest::load_bundle(bundle_dir);
            const auto values = split_list(sweep_values);
            const auto results = lbee::pipeline::run_sweep(bundle, config, sweep_param, values);
            ordered_json all = ordered_json::array();
            for (const auto& r : results) all.push_back(r.report);
            write_output(all.dump(2) + "\n", out_file);
            if (!sweep_csv.empty()) {
                std::ofstream os(sweep_csv);
                os << metrics_csv(results, sweep_param, values);
            }
        } else if (synth_cmd->parsed()) {
            if (!hard_groups_csv.empty()) {
                params.hard_group_indices.clear();
                for (const auto& v : split_list(hard_groups_csv))
                    params.hard_group_indices.push_back(std::stoul(v));
            }
            const auto bundle = lbee::synth::generate_benchmark(params);
            lbee::synth::write_benchmark(bundle, synth_out);
            std::cout << "wrote bundle with " << bundle.bundle.images.rows() << " images and "
                      << bundle.bundle.sentences.rows() << " sentences to " << synth_out << "\n";
        } else if (eval->parsed()) {
            if (combine_mode != "and" && combine_mode != "or")
                throw lbee::validation_error("BadValue", "mode must be 'and' or 'or'");
            lbee::RelevanceMatrix combined;
            const auto report = run_eval_relevance(pred_file, pred2_file, combine_mode, gt_file,
                                                   images_file, sentences_file, combined);
            ordered_json j;
            j["accuracy"] = report.accuracy;
            j["tp"] = report.tp_rate;
            j["tn"] = report.tn_rate;
            j["fp"] = report.fp_rate;
            j["fn"] = report.fn_rate;
            j["counts"] = {{"tp", report.tp}, {"tn", report.tn}, {"fp", report.fp},
                           {"fn", report.fn}};
            write_output(j.dump(2) + "\n", out_file);
        } else if (dump->parsed()) {
            const auto bundle = lbee::ingest::load_bundle(bundle_dir);
            if (!bundle.performance || !bundle.relevance)
                throw lbee::validation_error(
                    "MissingFile", "dump-hardness needs performance.csv and relevance.csv");
            const auto table =
                lbee::groundtruth::sentence_hardness(*bundle.performance, *bundle.relevance);
            std::string csv = "sentence_id,support,hardness\n";
            for (const auto& s : table.sentences) {
                csv += s.sentence_id + "," + std::to_string(s.support) + ",";
                if (s.hardness) {
                    char buf[40];
                    std::snprintf(buf, sizeof(buf), "%.12g", *s.hardness);
                    csv += buf;
                }
                csv += "\n";
            }
            write_output(csv, out_file);
        }
    } catch (const lbee::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
