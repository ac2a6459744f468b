#include "lbee/ingest.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "lbee/errors.hpp"

namespace lbee::ingest {

namespace {

constexpr char kMagic[4] = {'L', 'B', 'E', 'E'};
constexpr std::uint32_t kFormatVersion = 1;

void require_file(const std::filesystem::path& p) {
    if (!std::filesystem::exists(p))
        throw validation_error("MissingFile", p.string());
}

template <typename T>
void write_le(std::ostream& os, T value) {
    // Host is little-endian; plain byte copy matches the on-disk layout.
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    os.write(buf, sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
    char buf[sizeof(T)];
    is.read(buf, sizeof(T));
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

ScoreTable read_scores(const std::filesystem::path& file, Polarity polarity, ScoreKind kind,
                       const std::unordered_set<std::string>& known_images) {
    ScoreTable table;
    table.polarity = polarity;
    table.kind = kind;
    std::unordered_set<std::string> seen;
    for (const auto& row : read_csv(file, {"image_id", "value"})) {
        const std::string& id = row[0];
        if (!known_images.count(id))
            throw validation_error("UnknownId", file.filename().string() + ": " + id);
        if (!seen.insert(id).second)
            throw validation_error("DuplicateId", file.filename().string() + ": " + id);
        double value;
        try {
            value = std::stod(row[1]);
        } catch (const std::exception&) {
            throw validation_error("BadValue", file.filename().string() + ": " + row[1]);
        }
        if (!std::isfinite(value))
            throw validation_error("BadValue", file.filename().string() + ": non-finite " + id);
        table.ids.push_back(id);
        table.values.push_back(value);
    }
    return table;
}

Polarity polarity_from_string(const std::string& s) {
    if (s == "higher_is_harder") return Polarity::HigherIsHarder;
    if (s == "higher_is_easier") return Polarity::HigherIsEasier;
    throw validation_error("BadValue", "unknown polarity: " + s);
}

const char* polarity_to_string(Polarity p) {
    return p == Polarity::HigherIsHarder ? "higher_is_harder" : "higher_is_easier";
}

}  // namespace

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& file,
                                               const std::vector<std::string>& header) {
    require_file(file);
    std::ifstream is(file);
    std::string line;
    if (!std::getline(is, line))
        throw validation_error("BadFormat", file.string() + ": empty file");
    const auto head = split_csv_line(strip_cr(line));
    if (head != header)
        throw validation_error("BadFormat", file.string() + ": unexpected CSV header");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw validation_error("BadFormat", file.string() + ": wrong field count");
        rows.push_back(std::move(fields));
    }
    return rows;
}

EmbeddingTable normalize_embeddings(const EmbeddingTable& table) {
    EmbeddingTable out = table;
    for (std::size_t i = 0; i < table.rows(); ++i) {
        double sq = 0.0;
        for (std::size_t k = 0; k < table.dim; ++k) {
            const double v = table.data[i * table.dim + k];
            sq += v * v;
        }
        const double norm = std::sqrt(sq);
        if (norm < 1e-12)
            throw validation_error("ZeroNormRow", table.ids[i]);
        for (std::size_t k = 0; k < table.dim; ++k)
            out.data[i * table.dim + k] = table.data[i * table.dim + k] / norm;
    }
    out.normalized = true;
    return out;
}

RawEmbeddings read_embeddings(const std::filesystem::path& emb_file,
                              const std::filesystem::path& ids_file) {
    require_file(emb_file);
    require_file(ids_file);

    std::ifstream is(emb_file, std::ios::binary);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw validation_error("BadFormat", emb_file.string() + ": bad magic");
    const auto version = read_le<std::uint32_t>(is);
    if (version != kFormatVersion)
        throw validation_error("BadFormat", emb_file.string() + ": unsupported version");
    const auto rows = read_le<std::uint64_t>(is);
    const auto dim = read_le<std::uint32_t>(is);
    if (dim < 1)
        throw validation_error("BadFormat", emb_file.string() + ": dim must be >= 1");

    RawEmbeddings raw;
    raw.dim = dim;
    raw.values.resize(static_cast<std::size_t>(rows) * dim);
    is.read(reinterpret_cast<char*>(raw.values.data()),
            static_cast<std::streamsize>(raw.values.size() * sizeof(float)));
    if (!is)
        throw validation_error("BadFormat", emb_file.string() + ": truncated matrix");

    std::ifstream ids(ids_file);
    std::string line;
    std::unordered_set<std::string> seen;
    while (std::getline(ids, line)) {
        line = strip_cr(line);
        if (line.empty())
            throw validation_error("BadFormat", ids_file.string() + ": empty id");
        if (!seen.insert(line).second)
            throw validation_error("DuplicateId", ids_file.string() + ": " + line);
        raw.ids.push_back(line);
    }
    if (raw.ids.size() != rows)
        throw validation_error("BadFormat",
                               ids_file.string() + ": id count does not match row count");
    return raw;
}

void write_embeddings(const RawEmbeddings& raw, const std::filesystem::path& emb_file,
                      const std::filesystem::path& ids_file) {
    std::ofstream os(emb_file, std::ios::binary);
    os.write(kMagic, 4);
    write_le<std::uint32_t>(os, kFormatVersion);
    write_le<std::uint64_t>(os, raw.ids.size());
    write_le<std::uint32_t>(os, raw.dim);
    os.write(reinterpret_cast<const char*>(raw.values.data()),
             static_cast<std::streamsize>(raw.values.size() * sizeof(float)));

    std::ofstream ids(ids_file);
    for (const auto& id : raw.ids) ids << id << '\n';
}

EmbeddingTable to_table(const RawEmbeddings& raw) {
    EmbeddingTable table;
    table.ids = raw.ids;
    table.dim = raw.dim;
    table.data.assign(raw.values.begin(), raw.values.end());
    table.normalized = false;
    return table;
}

RelevanceMatrix read_relevance(const std::filesystem::path& file,
                               std::vector<std::string> image_ids,
                               std::vector<std::string> sentence_ids) {
    RelevanceMatrix rel;
    rel.image_ids = std::move(image_ids);
    rel.sentence_ids = std::move(sentence_ids);
    const std::unordered_set<std::string> images(rel.image_ids.begin(), rel.image_ids.end());
    const std::unordered_set<std::string> sentences(rel.sentence_ids.begin(),
                                                    rel.sentence_ids.end());
    for (const auto& row : read_csv(file, {"image_id", "sentence_id"})) {
        if (!images.count(row[0]))
            throw validation_error("UnknownId", file.filename().string() + ": " + row[0]);
        if (!sentences.count(row[1]))
            throw validation_error("UnknownId", file.filename().string() + ": " + row[1]);
        if (!rel.positives.insert({row[0], row[1]}).second)
            throw validation_error("DuplicateId", file.filename().string() + ": duplicate pair " +
                                                      row[0] + "," + row[1]);
    }
    return rel;
}

Bundle load_bundle(const std::filesystem::path& dir) {
    Bundle bundle;
    bundle.images_raw = read_embeddings(dir / "images.emb", dir / "images.ids");
    bundle.sentences_raw = read_embeddings(dir / "sentences.emb", dir / "sentences.ids");
    if (bundle.images_raw.dim != bundle.sentences_raw.dim)
        throw validation_error("DimensionMismatch",
                               "image dim " + std::to_string(bundle.images_raw.dim) +
                                   " vs sentence dim " +
                                   std::to_string(bundle.sentences_raw.dim));
    bundle.images = normalize_embeddings(to_table(bundle.images_raw));
    bundle.sentences = normalize_embeddings(to_table(bundle.sentences_raw));

    for (const auto& row : read_csv(dir / "sentences.txt", {"sentence_id", "text"})) {
        if (row[1].empty())
            throw validation_error("BadValue", "empty sentence text for " + row[0]);
        bundle.catalog.sentence_ids.push_back(row[0]);
        bundle.catalog.texts.push_back(row[1]);
    }
    if (bundle.catalog.sentence_ids != bundle.sentences.ids)
        throw validation_error("UnknownId",
                               "sentences.txt ids do not match sentences.ids exactly");

    require_file(dir / "bundle.json");
    nlohmann::json meta;
    {
        std::ifstream is(dir / "bundle.json");
        try {
            is >> meta;
        } catch (const std::exception& e) {
            throw validation_error("BadFormat", std::string("bundle.json: ") + e.what());
        }
    }

    const std::unordered_set<std::string> known_images(bundle.images.ids.begin(),
                                                       bundle.images.ids.end());

    const auto score_polarity = [&](const char* key, Polarity fallback) {
        if (meta.contains(key) && meta[key].contains("polarity"))
            return polarity_from_string(meta[key]["polarity"].get<std::string>());
        return fallback;
    };

    bundle.confidence =
        read_scores(dir / "confidence.csv", score_polarity("confidence", Polarity::HigherIsHarder),
                    ScoreKind::Confidence, known_images);

    if (std::filesystem::exists(dir / "performance.csv")) {
        bundle.performance =
            read_scores(dir / "performance.csv",
                        score_polarity("performance", Polarity::HigherIsEasier),
                        ScoreKind::Performance, known_images);
    }

    if (std::filesystem::exists(dir / "relevance.csv")) {
        bundle.relevance =
            read_relevance(dir / "relevance.csv", bundle.images.ids, bundle.sentences.ids);
    }

    if (meta.contains("outcomes")) {
        const auto file = dir / meta["outcomes"].get<std::string>();
        OutcomeTable outcomes;
        for (const auto& row : read_csv(file, {"image_id", "outcome"})) {
            if (!known_images.count(row[0]))
                throw validation_error("UnknownId", "outcomes: " + row[0]);
            Outcome outcome;
            if (row[1] == "correct")
                outcome = Outcome::Correct;
            else if (row[1] == "false_positive")
                outcome = Outcome::FalsePositive;
            else if (row[1] == "false_negative")
                outcome = Outcome::FalseNegative;
            else
                throw validation_error("UnknownOutcomeLabel", row[1]);
            if (!outcomes.emplace(row[0], outcome).second)
                throw validation_error("DuplicateId", "outcomes: " + row[0]);
        }
        bundle.outcomes = std::move(outcomes);
    }

    return bundle;
}

void save_bundle(const Bundle& bundle, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_embeddings(bundle.images_raw, dir / "images.emb", dir / "images.ids");
    write_embeddings(bundle.sentences_raw, dir / "sentences.emb", dir / "sentences.ids");

    {
        std::ofstream os(dir / "sentences.txt");
        os << "sentence_id,text\n";
        for (std::size_t i = 0; i < bundle.catalog.sentence_ids.size(); ++i) {
            std::string text = bundle.catalog.texts[i];
            if (text.find_first_of(",\"") != std::string::npos) {
                std::string quoted = "\"";
                for (char c : text) {
                    if (c == '"') quoted += '"';
                    quoted += c;
                }
                quoted += '"';
                text = quoted;
            }
            os << bundle.catalog.sentence_ids[i] << ',' << text << '\n';
        }
    }

    const auto write_score_csv = [&](const ScoreTable& table, const char* name) {
        std::ofstream os(dir / name);
        os << "image_id,value\n";
        os.precision(17);
        for (std::size_t i = 0; i < table.ids.size(); ++i)
            os << table.ids[i] << ',' << table.values[i] << '\n';
    };
    write_score_csv(bundle.confidence, "confidence.csv");
    if (bundle.performance) write_score_csv(*bundle.performance, "performance.csv");

    if (bundle.relevance) {
        std::ofstream os(dir / "relevance.csv");
        os << "image_id,sentence_id\n";
        for (const auto& [image, sentence] : bundle.relevance->positives)
            os << image << ',' << sentence << '\n';
    }

    nlohmann::ordered_json meta;
    meta["confidence"] = {{"polarity", polarity_to_string(bundle.confidence.polarity)},
                          {"kind", "confidence"}};
    if (bundle.performance)
        meta["performance"] = {{"polarity", polarity_to_string(bundle.performance->polarity)},
                               {"kind", "performance"}};
    if (bundle.outcomes) {
        meta["outcomes"] = "outcomes.csv";
        std::ofstream os(dir / "outcomes.csv");
        os << "image_id,outcome\n";
        for (const auto& [id, outcome] : *bundle.outcomes) {
            const char* label = outcome == Outcome::Correct         ? "correct"
                                : outcome == Outcome::FalsePositive ? "false_positive"
                                                                    : "false_negative";
            os << id << ',' << label << '\n';
        }
    }
    std::ofstream os(dir / "bundle.json");
    os << meta.dump(2) << '\n';
}

}  // namespace lbee::ingest
