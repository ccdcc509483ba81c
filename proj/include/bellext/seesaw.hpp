#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellext/polytope.hpp"
#include "bellext/quantum.hpp"

namespace bellext::seesaw {

// The seesaw engine works on a product of qubit slots, one per virtual
// party. Slot 0 is Alice; the remaining slots make up Bob's factor. A term
// is a coefficient times a product of one dichotomic observable per slot
// (or the identity where a slot does not participate).
inline constexpr int kMaxSlots = 3;

struct Party {
    std::string name;
    int n_meas = 0;
};

struct Term {
    double coeff = 0.0;
    std::array<int, kMaxSlots> meas{-1, -1, -1};  // per slot; -1 = identity
};

struct Problem {
    int n_slots = 0;
    std::vector<Party> parties;  // parties[p] owns slot p; update order
    std::vector<Term> terms;

    int dim() const { return 1 << n_slots; }
    int bob_dim() const { return 1 << (n_slots - 1); }
};

// Three-slot encoding of an inequality of the extended scenario: slot 1
// carries Bob's even measurements (0, 2), slot 2 the odd ones (1, 3).
Problem extended_problem(const Inequality& ineq);

// Plain bipartite problems used for the comparison curves.
Problem chsh_problem();
Problem i3322_problem();

struct Assignment {
    MatrixXcd state;  // dim() x dim() density operator
    std::vector<std::vector<Matrix2cd>> observables;  // [party][measurement]
};

struct Config {
    int seeds = 500;
    int max_sweeps = 1000;
    double convergence_tol = 1e-10;
    bool optimize_state = true;           // false: state is held fixed
    bool random_unitary_on_state = true;  // fixed-state mode: Haar twirl on Bob's factor
    std::uint64_t master_seed = 1;
    std::vector<std::uint64_t> stream_tags;  // decouples streams across grid points
    std::optional<double> stop_at_value;     // stop once some seed reaches this
};

struct Result {
    double best_value = 0.0;
    Assignment best;
    int best_seed = -1;
    std::vector<double> seed_values;  // one entry per evaluated seed, in order
    std::vector<int> sweeps_used;
    bool reached_target = false;
};

// Value of the problem's objective for a given assignment.
double evaluate(const Problem& pb, const Assignment& asg);

// The full objective as an operator on the slot product space.
MatrixXcd bell_operator(const Problem& pb, const Assignment& asg);

// Gradient of the objective with respect to party p's measurement m: the
// Hermitian operator Delta with value contribution Tr[Delta O_m].
Matrix2cd measurement_gradient(const Problem& pb, const Assignment& asg, int party, int meas);

// Reduced seesaw operators for one party: element [m][slot(b)] pairs with
// the outcome projector Q_{b|m} so that
//     sum_{m,b} Tr[ rho_{Q_{b|m}} Q_{b|m} ]
// equals the full objective value (outcome order: -1 then +1).
std::vector<std::array<Matrix2cd, 2>> reduced_operators(const Problem& pb, const Assignment& asg,
                                                        int party);

// Optimal dichotomic observable for a Hermitian gradient: +1 on the strictly
// positive eigenspace, -1 elsewhere.
DichotomicObservable positive_subspace_update(const MatrixXcd& delta);

// Optimal state for a Hermitian objective operator: projector onto a top
// eigenvector (phase fixed for reproducibility).
DensityMatrix state_update(const MatrixXcd& bell_op, int dim_a, int dim_b);

// Runs the alternating optimization over random seeds. With a fixed state,
// only measurements are optimized and each seed twirls the state by a Haar
// unitary on Bob's factor (when enabled).
Result run_seesaw(const Problem& pb, const std::optional<DensityMatrix>& fixed_state,
                  const Config& cfg);

// Assembles the quantum model realizing an assignment of the three-slot
// extended problem, suitable for extract_behavior.
ExtendedModel to_extended_model(const Problem& pb, const Assignment& asg);

}  // namespace bellext::seesaw
