#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "bellext/polytope.hpp"
#include "bellext/quantum.hpp"
#include "bellext/seesaw.hpp"

namespace bellext::analysis {

// The two one-parameter noise families studied in the sweeps: psi(alpha)
// mixed with the ground state |00><00| ("rho") or with white noise ("sigma").
enum class StateFamily { rho, sigma };

StateFamily family_from_name(const std::string& name);
std::string family_name(StateFamily f);

DensityMatrix build_family_state(StateFamily f, double alpha, double w);

// 3x3 correlation matrix T_ij = Tr[rho sigma_i x sigma_j] of a two-qubit state.
Eigen::Matrix3d correlation_matrix(const DensityMatrix& two_qubit);

// Horodecki CHSH parameter: the sum of the two largest eigenvalues of T^T T.
// The maximal CHSH value of the state is 2 sqrt(M); violation iff M > 1.
double horodecki_m(const DensityMatrix& two_qubit);
double chsh_max_value(const DensityMatrix& two_qubit);

// Smallest weight at which the family starts violating CHSH, located by
// bisection on the (monotone) violation predicate M(w) > 1. Returns 1.0
// when even the pure state does not violate.
double chsh_critical_w(StateFamily f, double alpha, double tol = 1e-12);

// Value of the three-setting bipartite inequality
//   -A1 -A2 -B1 -B2 -A1B1 -A2B1 -A3B1 -A1B2 -A2B2 +A3B2 -A1B3 +A2B3 <= 4
// for a two-qubit state and +/-1 observables.
double evaluate_i3322(const DensityMatrix& two_qubit, const std::array<Matrix2cd, 3>& alice,
                      const std::array<Matrix2cd, 3>& bob);

// --- critical-weight sweeps ---------------------------------------------

struct LadderResult {
    std::vector<double> w_path;   // weights probed, in order
    std::vector<bool> violated;   // probe outcomes
    double w_critical = 1.0;      // smallest violated weight; 1.0 if none
};

// Dyadic refinement: probe w, then move down by 2^-(i+2) after a violation
// and up by the same amount otherwise, for `steps` probes starting at i = 1.
LadderResult bisection_ladder(double w_start, int steps,
                              const std::function<bool(double)>& is_violated);

enum class SweepInequality { row15, chsh, i3322 };

SweepInequality sweep_inequality_from_name(const std::string& name);
std::string sweep_inequality_name(SweepInequality v);

struct SweepConfig {
    StateFamily family = StateFamily::rho;
    SweepInequality inequality = SweepInequality::row15;
    std::vector<double> alphas;  // e.g. uniform_alpha_grid(100)
    double w_start = 0.75;
    int bisection_steps = 8;
    int seeds = 500;
    std::uint64_t master_seed = 1;
    double violation_margin = 1e-7;  // value must exceed beta_L by this much
    int threads = 1;
};

struct SweepPoint {
    double alpha = 0.0;
    double w_critical = 1.0;
};

struct SweepResult {
    SweepConfig config;
    std::string method;  // "horodecki-exact" or "seesaw-ladder"
    std::vector<SweepPoint> points;
};

// n equally spaced values covering [1/2, 1] inclusive.
std::vector<double> uniform_alpha_grid(int n);

// Critical weights over the alpha grid. CHSH uses the exact Horodecki
// criterion; the other inequalities use fixed-state seesaw inside the
// dyadic ladder (each reported weight is an upper bound on the true one).
SweepResult critical_w_sweep(const SweepConfig& cfg);

// --- full-table verification ----------------------------------------------

struct RowReport {
    int id = 0;
    long long beta_l_expected = 0;
    long long beta_l_computed = 0;
    bool facet = false;
    int tight_dimension = -1;
    double beta_q_ref = 0.0;
    double seesaw_value = 0.0;
    int seeds_used = 0;
    bool quantum_ok = false;

    bool local_ok() const { return beta_l_computed == beta_l_expected && facet; }
    bool pass(bool with_quantum) const { return local_ok() && (!with_quantum || quantum_ok); }
};

struct TableReport {
    std::vector<RowReport> rows;
    bool with_quantum = false;
    bool all_pass = false;
};

// Verifies every table row: exact local bound, facet status and (optionally)
// the seesaw lower bound against the reference quantum maximum within
// +/- quantum_tol. Seesaw rows stop early once the target is reached.
TableReport verify_table(const std::vector<Inequality>& table, bool with_quantum, int seeds,
                         std::uint64_t master_seed, int threads, double quantum_tol = 1e-3);

// Deterministic parallel map: runs fn(0..n-1) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace bellext::analysis
