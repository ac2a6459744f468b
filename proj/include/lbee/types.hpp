#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lbee {

// Identified rows of real-valued vectors in the joint image/sentence space.
// Row order follows the ids file and is the canonical order used for all
// deterministic tie-breaking downstream.
struct EmbeddingTable {
    std::vector<std::string> ids;
    std::vector<double> data;  // row-major, rows() x dim
    std::size_t dim = 0;
    bool normalized = false;

    std::size_t rows() const { return ids.size(); }

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * dim, dim};
    }
};

enum class Polarity { HigherIsHarder, HigherIsEasier };
enum class ScoreKind { Confidence, Performance };

// One scalar per image (confidence or performance), with declared polarity.
struct ScoreTable {
    std::vector<std::string> ids;
    std::vector<double> values;
    Polarity polarity = Polarity::HigherIsHarder;
    ScoreKind kind = ScoreKind::Confidence;
};

// Sparse binary image x sentence relevance; absent pair means 0.
struct RelevanceMatrix {
    std::vector<std::string> image_ids;
    std::vector<std::string> sentence_ids;
    std::set<std::pair<std::string, std::string>> positives;

    bool relevant(const std::string& image, const std::string& sentence) const {
        return positives.count({image, sentence}) > 0;
    }
};

struct SentenceCatalog {
    std::vector<std::string> sentence_ids;
    std::vector<std::string> texts;
};

enum class SelectMethod { TopS, SetDiff, PDiff, FPDiff };
enum class SplitMode { Score, Outcome };

const char* to_string(SelectMethod m);
const char* to_string(SplitMode m);
SelectMethod select_method_from_string(const std::string& s);
SplitMode split_mode_from_string(const std::string& s);

struct RunConfig {
    double a = 0.2;                       // threshold margin factor
    double o = 0.2;                       // beta = o * performance std
    std::optional<double> beta_override;  // absolute beta, wins over o
    std::size_t c_easy = 15;
    std::size_t c_hard = 15;
    std::size_t k = 3;
    double tau = 0.25;
    SelectMethod method = SelectMethod::FPDiff;
    SplitMode split_mode = SplitMode::Score;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Outcome { Correct, FalsePositive, FalseNegative };

using OutcomeTable = std::map<std::string, Outcome>;

}  // namespace lbee
