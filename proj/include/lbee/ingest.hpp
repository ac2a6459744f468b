#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lbee/types.hpp"

namespace lbee::ingest {

// Raw (file-precision) embedding rows. Kept alongside the normalized double
// tables so a loaded bundle can be re-serialized bit-exactly.
struct RawEmbeddings {
    std::vector<std::string> ids;
    std::vector<float> values;  // row-major
    std::uint32_t dim = 0;
};

struct Bundle {
    RawEmbeddings images_raw;
    RawEmbeddings sentences_raw;
    EmbeddingTable images;     // normalized
    EmbeddingTable sentences;  // normalized
    SentenceCatalog catalog;
    ScoreTable confidence;
    std::optional<ScoreTable> performance;
    std::optional<RelevanceMatrix> relevance;
    std::optional<OutcomeTable> outcomes;
};

// Divides every row by its L2 norm. Throws ZeroNormRow for rows with
// norm below 1e-12. Idempotent.
EmbeddingTable normalize_embeddings(const EmbeddingTable& table);

RawEmbeddings read_embeddings(const std::filesystem::path& emb_file,
                              const std::filesystem::path& ids_file);
void write_embeddings(const RawEmbeddings& raw, const std::filesystem::path& emb_file,
                      const std::filesystem::path& ids_file);

EmbeddingTable to_table(const RawEmbeddings& raw);

Bundle load_bundle(const std::filesystem::path& dir);
void save_bundle(const Bundle& bundle, const std::filesystem::path& dir);

// Shared CSV helpers (header-checked, minimal quoting rules).
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& file,
                                               const std::vector<std::string>& header);
RelevanceMatrix read_relevance(const std::filesystem::path& file,
                               std::vector<std::string> image_ids,
                               std::vector<std::string> sentence_ids);

}  // namespace lbee::ingest
