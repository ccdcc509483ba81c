#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellext/behavior.hpp"
#include "bellext/scenario.hpp"

namespace bellext {

// Linear inequality sum_i coeffs[i] * behavior[i] <= local_bound over the
// local/no-disturbance polytope, with an optional reference quantum maximum.
struct Inequality {
    Scenario scenario;
    std::vector<long long> coeffs;  // canonical correlator order
    long long local_bound = 0;
    std::optional<int> id;              // row number in the bundled table
    std::optional<int> sliwa_class;     // tripartite-equivalent class, when known
    std::optional<double> quantum_bound_ref;

    Inequality(const Scenario& s, std::vector<long long> c, long long bound);

    double evaluate(const CorrelatorVector& behavior) const;
    long long evaluate_exact(const std::vector<long long>& integer_behavior) const;
};

// Exact maximum of the inequality's left-hand side over the product vertices.
long long local_bound(const Inequality& ineq, const VertexSet& vs);

struct FacetReport {
    bool valid = false;          // stated bound is an upper bound over all vertices
    bool tight = false;          // stated bound is attained
    long long max_value = 0;     // exact maximum over the vertices
    int n_tight_vertices = 0;
    int tight_affine_dimension = -1;
    int polytope_affine_dimension = -1;
    bool is_facet() const {
        return valid && tight && tight_affine_dimension == polytope_affine_dimension - 1;
    }
};

// Checks validity and facet status of an inequality against the vertex set.
FacetReport verify_facet(const Inequality& ineq, const VertexSet& vs);

// Default on-disk location of the bundled inequality table; the environment
// variable BELLEXT_DATA overrides the directory.
std::string default_table_path();

// Loads the bundled 26-row inequality table (CSV with header). Validates
// shape and integrality.
std::vector<Inequality> load_inequality_table(const std::string& path);

const Inequality& table_row(const std::vector<Inequality>& table, int id);

}  // namespace bellext
