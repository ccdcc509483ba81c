#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "bellext/behavior.hpp"
#include "bellext/exact_rank.hpp"

using namespace bellext;

namespace {

CorrelatorVector random_correlators(const Scenario& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CorrelatorVector c(s);
    for (double& v : c.values) v = dist(rng);
    return c;
}

// Independent floating-point rank oracle for cross-checking the exact
// integer path.
int float_affine_dimension(const std::vector<std::vector<long long>>& pts) {
    if (pts.empty()) return -1;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()) - 1,
                      static_cast<Eigen::Index>(pts[0].size()));
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[0].size(); ++j)
            m(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) =
                static_cast<double>(pts[i][j] - pts[0][j]);
    if (m.rows() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
}

}  // namespace

TEST_CASE("uniform correlators give the uniform table") {
    const Scenario s = build_cycle_scenario(4);
    const CorrelatorVector c(s);
    const ProbabilityTable t = correlators_to_probabilities(c);
    for (double v : t.p) CHECK(v == 0.125);
}

TEST_CASE("deterministic all-plus vertex gives a point mass") {
    const Scenario s = build_cycle_scenario(4);
    CorrelatorVector c(s);
    for (double& v : c.values) v = 1.0;
    const ProbabilityTable t = correlators_to_probabilities(c);
    for (int x = 0; x < 2; ++x)
        for (int ctx = 0; ctx < 4; ++ctx) {
            CHECK(t.at(x, ctx, 1, 1, 1) == doctest::Approx(1.0));
            CHECK(t.at(x, ctx, -1, 1, 1) == doctest::Approx(0.0));
            CHECK(t.at(x, ctx, 1, -1, 1) == doctest::Approx(0.0));
        }
}

TEST_CASE("contextual vertex with pair signs (+,+,+,-)") {
    // All single-measurement correlators vanish, the pair correlators are
    // (+1,+1,+1,-1): in context (0,1) the outcomes are perfectly aligned and
    // the table is 1/8 (1 + b1 b2); in context (3,0) anti-aligned.
    const Scenario s = build_cycle_scenario(4);
    CorrelatorVector c(s);
    c[CorrelatorIndex::bob_pair(0)] = 1.0;
    c[CorrelatorIndex::bob_pair(1)] = 1.0;
    c[CorrelatorIndex::bob_pair(2)] = 1.0;
    c[CorrelatorIndex::bob_pair(3)] = -1.0;
    const ProbabilityTable t = correlators_to_probabilities(c);
    for (int x = 0; x < 2; ++x)
        for (int a : {-1, 1})
            for (int b1 : {-1, 1})
                for (int b2 : {-1, 1}) {
                    CHECK(t.at(x, 0, a, b1, b2) == doctest::Approx((1.0 + b1 * b2) / 8.0));
                    CHECK(t.at(x, 3, a, b1, b2) == doctest::Approx((1.0 - b1 * b2) / 8.0));
                }
    CHECK(check_no_disturbance(t).max_violation == 0.0);
}

TEST_CASE("correlator round-trip is the identity") {
    std::mt19937_64 rng(0x5eed0001);
    for (int n : {3, 4, 5}) {
        const Scenario s = build_cycle_scenario(n);
        for (int rep = 0; rep < 2000; ++rep) {
            const CorrelatorVector c = random_correlators(s, rng);
            const CorrelatorVector back = probabilities_to_correlators(correlators_to_probabilities(c));
            for (std::size_t i = 0; i < c.values.size(); ++i) {
                CHECK(std::abs(back.values[i] - c.values[i]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("unnormalized tables are rejected") {
    const Scenario s = build_cycle_scenario(4);
    ProbabilityTable t = correlators_to_probabilities(CorrelatorVector(s));
    t.at(0, 0, 1, 1, 1) += 0.5;
    CHECK_THROWS_AS(probabilities_to_correlators(t), std::invalid_argument);
}

TEST_CASE("disturbance is detected and quantified") {
    const Scenario s = build_cycle_scenario(4);
    ProbabilityTable t = correlators_to_probabilities(CorrelatorVector(s));
    // In context (0,1) only, bias measurement y=1 towards +1 by 0.2 in
    // correlator terms; p(+|1) becomes 0.6 there but stays 0.5 elsewhere.
    for (int x = 0; x < 2; ++x)
        for (int a : {-1, 1})
            for (int b1 : {-1, 1})
                for (int b2 : {-1, 1}) t.at(x, 0, a, b1, b2) += b2 * 0.2 / 8.0;
    const NoDisturbanceReport r = check_no_disturbance(t);
    CHECK(r.max_violation == doctest::Approx(0.1));
    CHECK_FALSE(r.pass());
}

TEST_CASE("vertex census for the 4-cycle") {
    const Scenario s = build_cycle_scenario(4);
    const VertexSet vs = enumerate_vertices(s);
    CHECK(vs.alice.size() == 4);
    CHECK(vs.n_bob_noncontextual == 16);
    CHECK(vs.n_bob_contextual == 8);
    CHECK(vs.bob.size() == 24);
    CHECK(vs.products.size() == 96);

    std::set<std::vector<long long>> distinct(vs.products.begin(), vs.products.end());
    CHECK(distinct.size() == 96);

    for (const auto& b : vs.bob) {
        if (b.contextual) {
            int parity = 1;
            for (int y = 0; y < 4; ++y) CHECK(b.singles[static_cast<std::size_t>(y)] == 0);
            for (int ctx = 0; ctx < 4; ++ctx) parity *= b.pairs[static_cast<std::size_t>(ctx)];
            CHECK(parity == -1);
        } else {
            for (int ctx = 0; ctx < 4; ++ctx) {
                const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(ctx)];
                CHECK(b.pairs[static_cast<std::size_t>(ctx)] ==
                      b.singles[static_cast<std::size_t>(y1)] * b.singles[static_cast<std::size_t>(y2)]);
            }
        }
    }
    for (const auto& v : vs.products)
        for (long long entry : v) CHECK((entry == -1 || entry == 0 || entry == 1));
}

TEST_CASE("vertex census for the 3-cycle") {
    const VertexSet vs = enumerate_vertices(build_cycle_scenario(3));
    CHECK(vs.n_bob_noncontextual == 8);
    CHECK(vs.n_bob_contextual == 4);
    CHECK(vs.products.size() == 48);
}

TEST_CASE("vertices are valid no-disturbance behaviors") {
    const Scenario s = build_cycle_scenario(4);
    const VertexSet vs = enumerate_vertices(s);
    for (std::size_t i = 0; i < vs.products.size(); ++i) {
        const CorrelatorVector c = vertex_behavior(vs, i);
        const ProbabilityTable t = correlators_to_probabilities(c);
        CHECK(check_no_disturbance(t).max_violation == 0.0);
        for (double v : t.p) {
            CHECK(v >= 0.0);
            const bool quantized = std::abs(v) < 1e-15 || std::abs(v - 0.125) < 1e-15 ||
                                   std::abs(v - 0.25) < 1e-15 || std::abs(v - 0.5) < 1e-15 ||
                                   std::abs(v - 1.0) < 1e-15;
            CHECK(quantized);
        }
    }
}

TEST_CASE("exact affine dimension: basics") {
    CHECK(integer_affine_dimension({}) == -1);
    CHECK(integer_affine_dimension({{3, 7}}) == 0);
    CHECK(integer_affine_dimension({{0, 0}, {1, 0}, {0, 1}, {1, 1}}) == 2);
    CHECK(integer_affine_dimension({{0, 0}, {1, 1}, {2, 2}}) == 1);
    // Rank that a naive elimination over int64 would overflow is not
    // reachable here, but large values must still work exactly.
    CHECK(integer_matrix_rank({{1000000007, 2}, {2000000014, 4}}) == 1);
}

TEST_CASE("polytope is full-dimensional: affine dimension 26") {
    const VertexSet vs = enumerate_vertices(build_cycle_scenario(4));
    CHECK(integer_affine_dimension(vs.products) == 26);
    CHECK(float_affine_dimension(vs.products) == 26);
}

TEST_CASE("3-cycle polytope has affine dimension 20") {
    const VertexSet vs = enumerate_vertices(build_cycle_scenario(3));
    CHECK(integer_affine_dimension(vs.products) == 20);
    CHECK(float_affine_dimension(vs.products) == 20);
}

TEST_CASE("vertex csv export") {
    const VertexSet vs = enumerate_vertices(build_cycle_scenario(4));
    std::ostringstream out;
    write_vertex_csv(vs, out);
    const std::string text = out.str();
    std::size_t rows = 0;
    for (char ch : text)
        if (ch == '\n') ++rows;
    CHECK(rows == 96);
    std::istringstream in(text);
    std::string first;
    std::getline(in, first);
    std::size_t commas = 0;
    for (char ch : first)
        if (ch == ',') ++commas;
    CHECK(commas == 25);
}
