#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "lbee/ingest.hpp"
#include "lbee/types.hpp"

namespace lbee::testing {

// Consistent 4-image / 3-sentence toy bundle (d = 8).
inline ingest::Bundle make_toy_bundle() {
    ingest::Bundle bundle;
    bundle.images_raw.dim = 8;
    bundle.images_raw.ids = {"img_a", "img_b", "img_c", "img_d"};
    const std::vector<std::vector<float>> image_rows = {
        {1, 0, 0, 0, 0, 0, 0, 0},
        {0.9f, 0.1f, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, 0, 0, 0},
        {0, 0.1f, 0.9f, 0, 0, 0, 0, 0},
    };
    for (const auto& row : image_rows)
        bundle.images_raw.values.insert(bundle.images_raw.values.end(), row.begin(), row.end());

    bundle.sentences_raw.dim = 8;
    bundle.sentences_raw.ids = {"s_0", "s_1", "s_2"};
    const std::vector<std::vector<float>> sentence_rows = {
        {1, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 1, 0, 0, 0, 0, 0},
        {0, 0, 0, 1, 0, 0, 0, 0},
    };
    for (const auto& row : sentence_rows)
        bundle.sentences_raw.values.insert(bundle.sentences_raw.values.end(), row.begin(),
                                           row.end());

    bundle.images = ingest::normalize_embeddings(ingest::to_table(bundle.images_raw));
    bundle.sentences = ingest::normalize_embeddings(ingest::to_table(bundle.sentences_raw));

    bundle.catalog.sentence_ids = {"s_0", "s_1", "s_2"};
    bundle.catalog.texts = {"first mode", "second, with comma", "third mode"};

    bundle.confidence.ids = {"img_a", "img_b", "img_c", "img_d"};
    bundle.confidence.values = {0.2, 0.4, 0.6, 0.8};
    bundle.confidence.polarity = Polarity::HigherIsHarder;
    bundle.confidence.kind = ScoreKind::Confidence;

    ScoreTable performance;
    performance.ids = {"img_a", "img_b", "img_c", "img_d"};
    performance.values = {0.9, 0.8, 0.3, 0.2};
    performance.polarity = Polarity::HigherIsEasier;
    performance.kind = ScoreKind::Performance;
    bundle.performance = performance;

    RelevanceMatrix relevance;
    relevance.image_ids = bundle.images_raw.ids;
    relevance.sentence_ids = bundle.sentences_raw.ids;
    relevance.positives = {{"img_a", "s_0"}, {"img_b", "s_0"}, {"img_c", "s_1"},
                           {"img_d", "s_1"}};
    bundle.relevance = relevance;
    return bundle;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("lbee_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace lbee::testing
