#pragma once

#include <vector>

#include "bellext/polytope.hpp"
#include "bellext/scenario.hpp"

namespace bellext {

// A relabeling symmetry acting on behavior space as a signed permutation of
// the correlator coordinates: (g v)[perm[i]] = sign[i] * v[i].
struct SignedPermutation {
    std::vector<int> perm;
    std::vector<int> sign;

    std::vector<long long> apply(const std::vector<long long>& v) const;
    std::vector<double> apply(const std::vector<double>& v) const;
};

// The relabeling group of the scenario: Alice input swap and outcome flips,
// Bob outcome flips, and the dihedral symmetries of the compatibility cycle.
// For the 4-cycle this has 2*4 * 2^4 * 8 = 1024 elements.
class SymmetryGroup {
  public:
    explicit SymmetryGroup(const Scenario& s);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<SignedPermutation>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

  private:
    Scenario scenario_;
    std::vector<SignedPermutation> elements_;
};

// Lexicographically minimal image of the coefficient vector over the group
// orbit. Two inequalities are relabelings of each other iff their canonical
// forms and local bounds agree.
std::vector<long long> canonical_form(const std::vector<long long>& coeffs,
                                      const SymmetryGroup& group);

bool equivalent_inequalities(const Inequality& a, const Inequality& b,
                             const SymmetryGroup& group);

}  // namespace bellext
