#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "bellext/scenario.hpp"

namespace bellext {

// Correlator representation of a behavior: one real number per entry of the
// canonical correlator basis (see CorrelatorIndex for the ordering).
struct CorrelatorVector {
    Scenario scenario;
    std::vector<double> values;

    explicit CorrelatorVector(const Scenario& s)
        : scenario(s), values(static_cast<std::size_t>(s.correlator_dimension()), 0.0) {}
    CorrelatorVector(const Scenario& s, std::vector<double> v);

    double& operator[](const CorrelatorIndex& idx) {
        return values[static_cast<std::size_t>(idx.position(scenario))];
    }
    double operator[](const CorrelatorIndex& idx) const {
        return values[static_cast<std::size_t>(idx.position(scenario))];
    }
    int dimension() const { return static_cast<int>(values.size()); }
};

// Full conditional probability table p(a, b1, b2 | x, context). Outcomes are
// +/-1, stored with -1 mapped to array slot 0 and +1 to slot 1.
struct ProbabilityTable {
    Scenario scenario;
    // Layout: [x][ctx][a][b1][b2] flattened.
    std::vector<double> p;

    explicit ProbabilityTable(const Scenario& s);

    double& at(int x, int ctx, int a, int b1, int b2);
    double at(int x, int ctx, int a, int b1, int b2) const;

    static int slot(int outcome);  // -1 -> 0, +1 -> 1
};

// Expands a correlator vector into the (unique) no-disturbance probability
// table with those correlators. Entries can be negative when the input does
// not describe a physical behavior.
ProbabilityTable correlators_to_probabilities(const CorrelatorVector& c);

// Extracts correlators from a normalized probability table. For tables in
// the image of correlators_to_probabilities this is the exact inverse; in
// general each correlator is averaged over every (x, context) block that
// determines it.
CorrelatorVector probabilities_to_correlators(const ProbabilityTable& t);

// Whether the correlator vector describes nonnegative probabilities.
bool is_valid_behavior(const CorrelatorVector& c, double eps = 1e-9);

struct NoDisturbanceReport {
    double max_violation = 0.0;  // largest |p(b|y, ctx) - p(b|y, ctx')| over all splits
    bool pass(double tol = 1e-12) const { return max_violation <= tol; }
};

// Checks that the single-measurement marginals p(b|y) computed from the two
// contexts containing y (and from both Alice inputs) agree.
NoDisturbanceReport check_no_disturbance(const ProbabilityTable& t);

// Vertices of the local/no-disturbance polytope.
struct BobVertex {
    std::vector<int> singles;  // <B_y>
    std::vector<int> pairs;    // <B_y1 B_y2> per context
    bool contextual = false;
};

struct VertexSet {
    Scenario scenario;
    std::vector<std::array<int, 2>> alice;      // deterministic <A_0>, <A_1>
    std::vector<BobVertex> bob;                 // noncontextual first, then contextual
    std::vector<std::vector<long long>> products;  // full correlator vectors
    int n_bob_noncontextual = 0;
    int n_bob_contextual = 0;

    explicit VertexSet(const Scenario& s) : scenario(s) {}
};

VertexSet enumerate_vertices(const Scenario& s);

// Correlator vector (as doubles) for one product vertex.
CorrelatorVector vertex_behavior(const VertexSet& vs, std::size_t product_index);

// Writes the product vertices as integer CSV, one row per vertex, one column
// per correlator in canonical order. Suited for feeding external polytope
// software.
void write_vertex_csv(const VertexSet& vs, std::ostream& out);

}  // namespace bellext
