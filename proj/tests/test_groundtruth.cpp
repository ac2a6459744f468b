#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "lbee/errors.hpp"
#include "lbee/groundtruth.hpp"
#include "lbee/rng.hpp"

using namespace lbee;
using groundtruth::CombineMode;

namespace {

ScoreTable performance_of(const std::vector<std::pair<std::string, double>>& entries) {
    ScoreTable t;
    t.kind = ScoreKind::Performance;
    t.polarity = Polarity::HigherIsEasier;
    for (const auto& [id, v] : entries) {
        t.ids.push_back(id);
        t.values.push_back(v);
    }
    return t;
}

RelevanceMatrix matrix(std::vector<std::string> images, std::vector<std::string> sentences,
                       std::set<std::pair<std::string, std::string>> positives) {
    RelevanceMatrix m;
    m.image_ids = std::move(images);
    m.sentence_ids = std::move(sentences);
    m.positives = std::move(positives);
    return m;
}

}  // namespace

TEST_CASE("sentence_hardness") {
    const auto perf = performance_of({{"a", 0.2}, {"b", 0.4}, {"c", 0.6}, {"d", 0.8}});
    const auto rel = matrix({"a", "b", "c", "d"}, {"s1", "s2", "s3"},
                            {{"a", "s1"}, {"b", "s1"},
                             {"a", "s3"}, {"b", "s3"}, {"c", "s3"}, {"d", "s3"}});
    const auto table = groundtruth::sentence_hardness(perf, rel);
    REQUIRE(table.sentences.size() == 3);
    CHECK(*table.sentences[0].hardness == doctest::Approx(0.3));  // mean of 0.2, 0.4
    CHECK_FALSE(table.sentences[1].hardness.has_value());         // empty support
    CHECK(table.sentences[1].support == 0);
    CHECK(*table.sentences[2].hardness == doctest::Approx(table.global_avg));  // full support
    CHECK(table.global_avg == doctest::Approx(0.5));
    CHECK(table.global_std == doctest::Approx(std::sqrt(0.05)));
}

TEST_CASE("beta_from_factor") {
    groundtruth::HardnessTable table;
    table.global_std = 0.5;  // e.g. omega values {0, 1}
    CHECK(groundtruth::beta_from_factor(table, 0.2) == doctest::Approx(0.1));
    CHECK(groundtruth::beta_from_factor(table, 0.0) == 0.0);
    table.global_std = 0.0;
    CHECK(groundtruth::beta_from_factor(table, 0.7) == 0.0);
}

TEST_CASE("build_gt_set uses a strict threshold") {
    groundtruth::HardnessTable table;
    table.global_avg = 0.5;
    table.sentences = {{"s1", 2, 0.3}, {"s2", 2, 0.45}, {"s3", 2, 0.5}};

    CHECK(groundtruth::build_gt_set(table, 0.1).members == std::vector<std::string>{"s1"});
    CHECK(groundtruth::build_gt_set(table, 0.0).members ==
          std::vector<std::string>{"s1", "s2"});
    CHECK(groundtruth::build_gt_set(table, 0.4).members.empty());

    // Undefined hardness is excluded regardless of beta.
    table.sentences.push_back({"s4", 0, std::nullopt});
    CHECK(groundtruth::build_gt_set(table, 0.0).members ==
          std::vector<std::string>{"s1", "s2"});
}

TEST_CASE("beta nesting property") {
    Xoshiro256pp rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        groundtruth::HardnessTable table;
        table.global_avg = rng.uniform();
        const std::size_t n = 3 + rng.next() % 20;
        for (std::size_t i = 0; i < n; ++i)
            table.sentences.push_back({"s" + std::to_string(i), 1, rng.uniform()});
        const double b1 = rng.uniform() * 0.5;
        const double b2 = b1 + rng.uniform() * 0.5;
        const auto g1 = groundtruth::build_gt_set(table, b1).members;
        const auto g2 = groundtruth::build_gt_set(table, b2).members;
        const std::set<std::string> superset(g1.begin(), g1.end());
        for (const auto& member : g2) CHECK(superset.count(member) == 1);
    }
}

TEST_CASE("combine_relevance truth table") {
    const auto a = matrix({"x"}, {"s"}, {{"x", "s"}});
    const auto b = matrix({"x"}, {"s"}, {});
    CHECK(groundtruth::combine_relevance(a, b, CombineMode::And).positives.empty());
    CHECK(groundtruth::combine_relevance(a, b, CombineMode::Or).positives == a.positives);
    CHECK(groundtruth::combine_relevance(a, a, CombineMode::And).positives == a.positives);
    CHECK(groundtruth::combine_relevance(a, a, CombineMode::Or).positives == a.positives);
    CHECK(groundtruth::combine_relevance(b, a, CombineMode::Or).positives == a.positives);

    const auto other = matrix({"y"}, {"s"}, {});
    CHECK_THROWS_WITH_AS(groundtruth::combine_relevance(a, other, CombineMode::And),
                         doctest::Contains("IdUniverseMismatch"), validation_error);
}

TEST_CASE("combine AND is contained in OR") {
    Xoshiro256pp rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::string> images, sentences;
        for (std::size_t i = 0; i < 5; ++i) images.push_back("i" + std::to_string(i));
        for (std::size_t i = 0; i < 4; ++i) sentences.push_back("s" + std::to_string(i));
        std::set<std::pair<std::string, std::string>> pa, pb;
        for (const auto& img : images)
            for (const auto& s : sentences) {
                if (rng.uniform() < 0.4) pa.insert({img, s});
                if (rng.uniform() < 0.4) pb.insert({img, s});
            }
        const auto a = matrix(images, sentences, pa);
        const auto b = matrix(images, sentences, pb);
        const auto both = groundtruth::combine_relevance(a, b, CombineMode::And).positives;
        const auto either = groundtruth::combine_relevance(a, b, CombineMode::Or).positives;
        CHECK(std::includes(either.begin(), either.end(), both.begin(), both.end()));
    }
}

TEST_CASE("relevance_confusion") {
    SUBCASE("perfect prediction") {
        const auto gt = matrix({"a", "b"}, {"s1", "s2"}, {{"a", "s1"}});
        const auto report = groundtruth::relevance_confusion(gt, gt);
        CHECK(report.accuracy == 1.0);
        CHECK(report.tp_rate == 1.0);
        CHECK(report.fp_rate == 0.0);
    }

    SUBCASE("total disagreement") {
        const auto gt = matrix({"a", "b"}, {"s1", "s2"}, {{"a", "s1"}, {"b", "s2"}});
        const auto pred = matrix({"a", "b"}, {"s1", "s2"}, {{"a", "s2"}, {"b", "s1"}});
        CHECK(groundtruth::relevance_confusion(pred, gt).accuracy == 0.0);
    }

    SUBCASE("hand-counted 2x2 fixture") {
        const auto gt = matrix({"a", "b"}, {"s1", "s2"}, {{"a", "s1"}});
        const auto pred = matrix({"a", "b"}, {"s1", "s2"}, {{"a", "s1"}, {"b", "s2"}});
        const auto report = groundtruth::relevance_confusion(pred, gt);
        CHECK(report.tp == 1);
        CHECK(report.fp == 1);
        CHECK(report.tn == 2);
        CHECK(report.fn == 0);
        CHECK(report.accuracy == doctest::Approx(0.75));
        CHECK(report.tp_rate == doctest::Approx(1.0));
        CHECK(report.fp_rate == doctest::Approx(1.0 / 3.0));
    }

    SUBCASE("rates are complementary") {
        Xoshiro256pp rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::string> images{"a", "b", "c"}, sentences{"s1", "s2"};
            std::set<std::pair<std::string, std::string>> pg, pp;
            for (const auto& img : images)
                for (const auto& s : sentences) {
                    if (rng.uniform() < 0.5) pg.insert({img, s});
                    if (rng.uniform() < 0.5) pp.insert({img, s});
                }
            const auto report = groundtruth::relevance_confusion(matrix(images, sentences, pp),
                                                                 matrix(images, sentences, pg));
            if (!pg.empty()) CHECK(report.tp_rate + report.fn_rate == doctest::Approx(1.0));
            if (pg.size() < images.size() * sentences.size())
                CHECK(report.tn_rate + report.fp_rate == doctest::Approx(1.0));
        }
    }
}
