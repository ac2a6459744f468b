#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbee/cluster.hpp"
#include "lbee/ingest.hpp"
#include "lbee/metrics.hpp"
#include "lbee/select.hpp"
#include "lbee/split.hpp"
#include "lbee/types.hpp"

namespace lbee::pipeline {

struct PipelineResult {
    nlohmann::ordered_json report;
    split::SplitResult split;
    cluster::ClusterModel easy_model;
    cluster::ClusterModel hard_model;
    select::ExplanationSet explanation;
    std::vector<std::string> warnings;
};

PipelineResult run_pipeline(const ingest::Bundle& bundle, const RunConfig& config);
PipelineResult run_pipeline(const std::filesystem::path& bundle_dir, const RunConfig& config);

std::vector<PipelineResult> run_sweep(const ingest::Bundle& bundle, const RunConfig& base,
                                      const std::string& param,
                                      const std::vector<std::string>& values);

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& file);

// Canonical report serialization: ordered keys, fixed float formatting.
std::string serialize_report(const nlohmann::ordered_json& report);

}  // namespace lbee::pipeline
