#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "lbee/cluster.hpp"
#include "lbee/errors.hpp"
#include "lbee/ingest.hpp"
#include "lbee/rng.hpp"
#include "ward_oracle.hpp"

using namespace lbee;

namespace {

EmbeddingTable random_unit_table(std::uint64_t seed, std::size_t rows, std::size_t dim) {
    Xoshiro256pp rng(seed);
    EmbeddingTable t;
    t.dim = dim;
    for (std::size_t i = 0; i < rows; ++i) {
        t.ids.push_back("p" + std::to_string(i));
        for (std::size_t k = 0; k < dim; ++k) t.data.push_back(rng.gaussian());
    }
    return ingest::normalize_embeddings(t);
}

// 1-D points lifted to the unit circle, order-preserving in x.
EmbeddingTable line_table(const std::vector<double>& xs) {
    const double scale = 1.0 / 20.0;
    EmbeddingTable t;
    t.dim = 2;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i] * scale;
        t.ids.push_back("q" + std::to_string(i));
        t.data.push_back(x);
        t.data.push_back(std::sqrt(1.0 - x * x));
    }
    t.normalized = true;
    return t;
}

}  // namespace

TEST_CASE("ward_cluster separates well separated pairs") {
    const auto table = line_table({0.0, 0.1, 10.0, 10.1});
    const auto model = cluster::ward_cluster(table, 2);
    REQUIRE(model.member_ids.size() == 2);
    CHECK(model.member_ids[0] == std::vector<std::string>{"q0", "q1"});
    CHECK(model.member_ids[1] == std::vector<std::string>{"q2", "q3"});
}

TEST_CASE("ward_cluster c equal to rows is the identity") {
    const auto table = random_unit_table(3, 5, 4);
    const auto model = cluster::ward_cluster(table, 5);
    CHECK(model.member_ids.size() == 5);
    CHECK(model.merge_log.empty());
    CHECK_THROWS_WITH_AS(cluster::ward_cluster(table, 6), doctest::Contains("TooManyClusters"),
                         validation_error);
}

TEST_CASE("ward_cluster matches the recompute-from-scratch oracle") {
    const auto table = random_unit_table(77, 12, 5);
    const auto model = cluster::ward_cluster(table, 3);
    const auto oracle = testing::ward_oracle_merges(table, 3);
    REQUIRE(model.merge_log.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        CHECK(model.merge_log[i].cluster_a == oracle[i].cluster_a);
        CHECK(model.merge_log[i].cluster_b == oracle[i].cluster_b);
        CHECK(std::abs(model.merge_log[i].ward_distance - oracle[i].ward_distance) <= 1e-9);
    }
}

TEST_CASE("ward_cluster merge distances are non-decreasing") {
    const auto table = random_unit_table(5, 24, 6);
    const auto model = cluster::ward_cluster(table, 1);
    for (std::size_t i = 1; i < model.merge_log.size(); ++i)
        CHECK(model.merge_log[i].ward_distance >= model.merge_log[i - 1].ward_distance - 1e-12);
}

TEST_CASE("ward_cluster is invariant under row permutation up to relabeling") {
    const auto table = random_unit_table(9, 14, 4);
    const auto model = cluster::ward_cluster(table, 4);

    EmbeddingTable permuted;
    permuted.dim = table.dim;
    permuted.normalized = true;
    std::vector<std::size_t> order(table.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = (i * 5 + 3) % order.size();
    for (std::size_t row : order) {
        permuted.ids.push_back(table.ids[row]);
        const auto r = table.row(row);
        permuted.data.insert(permuted.data.end(), r.begin(), r.end());
    }
    const auto permuted_model = cluster::ward_cluster(permuted, 4);

    const auto as_multiset = [](const cluster::ClusterModel& m) {
        std::set<std::set<std::string>> sets;
        for (const auto& members : m.member_ids)
            sets.insert(std::set<std::string>(members.begin(), members.end()));
        return sets;
    };
    CHECK(as_multiset(model) == as_multiset(permuted_model));
}

TEST_CASE("compute_prototypes") {
    SUBCASE("singleton cluster keeps its vector") {
        const auto table = random_unit_table(2, 3, 4);
        auto model = cluster::ward_cluster(table, 3);
        cluster::compute_prototypes(model, table);
        for (std::size_t ci = 0; ci < 3; ++ci) {
            const std::size_t row = static_cast<std::size_t>(
                std::find(table.ids.begin(), table.ids.end(), model.member_ids[ci][0]) -
                table.ids.begin());
            for (std::size_t k = 0; k < table.dim; ++k)
                CHECK(model.prototypes[ci][k] == doctest::Approx(table.row(row)[k]).epsilon(1e-12));
        }
    }

    SUBCASE("orthonormal pair averages to the diagonal") {
        EmbeddingTable table;
        table.dim = 3;
        table.ids = {"a", "b"};
        table.data = {1, 0, 0, 0, 1, 0};
        table.normalized = true;
        auto model = cluster::ward_cluster(table, 1);
        cluster::compute_prototypes(model, table);
        CHECK(model.prototypes[0][0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(model.prototypes[0][1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(model.prototypes[0][2] == 0.0);
    }

    SUBCASE("antipodal members are degenerate") {
        EmbeddingTable table;
        table.dim = 2;
        table.ids = {"a", "b"};
        table.data = {1, 0, -1, 0};
        table.normalized = true;
        auto model = cluster::ward_cluster(table, 1);
        CHECK_THROWS_WITH_AS(cluster::compute_prototypes(model, table),
                             doctest::Contains("DegeneratePrototype"), runtime_fault);
    }
}

TEST_CASE("assign_to_prototypes") {
    std::vector<std::vector<double>> prototypes = {{1, 0}, {0, 1}};

    SUBCASE("exact prototype match scores 1") {
        EmbeddingTable points;
        points.dim = 2;
        points.ids = {"x"};
        points.data = {0, 1};
        points.normalized = true;
        const auto assignment = cluster::assign_to_prototypes(points, prototypes);
        CHECK(assignment.cluster_index[0] == 1);
        CHECK(assignment.rank_score[0] == doctest::Approx(1.0));
    }

    SUBCASE("equidistant point goes to the smallest index") {
        EmbeddingTable points;
        points.dim = 2;
        points.ids = {"x"};
        const double s = 1.0 / std::sqrt(2.0);
        points.data = {s, s};
        points.normalized = true;
        const auto assignment = cluster::assign_to_prototypes(points, prototypes);
        CHECK(assignment.cluster_index[0] == 0);
    }

    SUBCASE("matches the brute-force argmax on seeded data") {
        const auto points = random_unit_table(13, 20, 6);
        const auto protos = random_unit_table(14, 4, 6);
        std::vector<std::vector<double>> plist;
        for (std::size_t p = 0; p < 4; ++p)
            plist.emplace_back(protos.row(p).begin(), protos.row(p).end());
        const auto assignment = cluster::assign_to_prototypes(points, plist);
        for (std::size_t i = 0; i < points.rows(); ++i) {
            std::size_t arg = 0;
            double best = -2.0;
            for (std::size_t p = 0; p < plist.size(); ++p) {
                double dot = 0.0;
                for (std::size_t k = 0; k < points.dim; ++k)
                    dot += points.row(i)[k] * plist[p][k];
                if (dot > best) {
                    best = dot;
                    arg = p;
                }
            }
            CHECK(assignment.cluster_index[i] == arg);
            CHECK(assignment.rank_score[i] == doctest::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("prototype renormalization preserves sentence ranking") {
    const auto sentences = random_unit_table(21, 15, 6);
    Xoshiro256pp rng(22);
    std::vector<double> raw(6);
    for (auto& v : raw) v = rng.gaussian();
    double norm = 0.0;
    for (double v : raw) norm += v * v;
    norm = std::sqrt(norm);
    std::vector<double> unit(6);
    for (std::size_t k = 0; k < 6; ++k) unit[k] = raw[k] / norm;

    const auto rank = [&](const std::vector<double>& proto) {
        std::vector<std::pair<double, std::size_t>> scored;
        for (std::size_t n = 0; n < sentences.rows(); ++n) {
            double dot = 0.0;
            for (std::size_t k = 0; k < 6; ++k) dot += proto[k] * sentences.row(n)[k];
            scored.push_back({-dot, n});
        }
        std::sort(scored.begin(), scored.end());
        std::vector<std::size_t> order;
        for (const auto& [d, n] : scored) order.push_back(n);
        return order;
    };
    CHECK(rank(raw) == rank(unit));
}
