#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bellext/polytope.hpp"
#include "bellext/scenario.hpp"

namespace bellext {

// Complete facet enumeration of a full-dimensional integer polytope given by
// its vertices, via the double description method on the polar cone in exact
// integer arithmetic. Intended for the small polytopes of this project;
// budget limits turn runaway instances into clean errors.

struct FacetEnumOptions {
    std::size_t max_rays = 500000;  // abort if the intermediate ray set grows past this
    double max_seconds = 600.0;     // wall-clock budget
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LinearFacet {
    std::vector<long long> coeffs;  // c
    long long bound = 0;            // c . x <= bound for every input point
};

struct FacetEnumResult {
    std::vector<LinearFacet> facets;
    std::size_t peak_rays = 0;
    double seconds = 0.0;
};

// `points` must affinely span their ambient space (full-dimensional hull).
FacetEnumResult enumerate_facets(const std::vector<std::vector<long long>>& points,
                                 const FacetEnumOptions& opt = {});

// One representative per symmetry class of the scenario's local polytope
// facets, each paired with its orbit size. Classes are distinguished by the
// canonical form of the coefficient vector together with the bound.
struct FacetClass {
    Inequality representative;
    std::size_t orbit_size = 0;
};

std::vector<FacetClass> enumerate_facet_classes(const Scenario& s,
                                                const FacetEnumOptions& opt = {});

}  // namespace bellext
