#pragma once

#include <Eigen/Dense>
#include <array>

#include "bellext/behavior.hpp"
#include "bellext/scenario.hpp"

namespace bellext {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::Vector2cd;
using Eigen::VectorXcd;

// Numerical contracts used across the quantum layer.
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPositivityTol = 1e-10;
constexpr double kEigenvalueSnapTol = 1e-8;
constexpr double kImaginaryTol = 1e-10;
constexpr double kCommutatorTol = 1e-12;

Matrix2cd pauli_x();
Matrix2cd pauli_y();
Matrix2cd pauli_z();

// Largest absolute entry of m.
double max_abs(const MatrixXcd& m);

// Largest absolute entry of the commutator [a, b].
double commutator_norm(const MatrixXcd& a, const MatrixXcd& b);

// Bipartite density operator with explicit tensor factor dimensions
// (dim_a most significant in the computational basis ordering).
struct DensityMatrix {
    MatrixXcd rho;
    int dim_a = 0;
    int dim_b = 0;

    int dim() const { return dim_a * dim_b; }
};

// Validates Hermiticity, unit trace and positivity before wrapping.
DensityMatrix make_density(const MatrixXcd& rho, int dim_a, int dim_b);
DensityMatrix pure_state(const VectorXcd& psi, int dim_a, int dim_b);

// +/-1-valued observable O = 2 Q_plus - 1 with O^2 = 1.
struct DichotomicObservable {
    MatrixXcd op;

    MatrixXcd projector(int outcome) const;  // outcome in {-1,+1}
};

// Accepts a Hermitian matrix whose eigenvalues all sit within 1e-8 of +/-1
// and snaps them exactly; rejects anything else.
DichotomicObservable observable_from_hermitian(const MatrixXcd& h);
DichotomicObservable trivial_observable(int dim, int outcome = +1);

enum class Subsystem { A, B };

// Partial trace of an operator on C^{da} x C^{db} over the named factor.
MatrixXcd partial_trace(const MatrixXcd& m, int dim_a, int dim_b, Subsystem traced_out);

// --- State families used throughout the sweeps -------------------------

// |psi(alpha)> = sqrt(alpha)|01> + sqrt(1-alpha)|10> on two qubits.
VectorXcd psi_alpha(double alpha);

// w |psi><psi| + (1-w) |00><00|
DensityMatrix state_family_rho(double alpha, double w);

// w |psi><psi| + (1-w) I/4
DensityMatrix state_family_sigma(double alpha, double w);

// Embeds a two-qubit state into C^2 x C^4, mapping Bob's qubit basis onto
// the first two computational basis vectors of C^4.
DensityMatrix embed_bob_in_c4(const DensityMatrix& two_qubit);

// --- The extended model -------------------------------------------------

// Quantum realization of the extended scenario: Alice measures on C^2, Bob
// holds C^4 split into two virtual qubits; measurements 0 and 2 act on the
// first virtual qubit, measurements 1 and 3 on the second, which makes the
// cycle's compatibility relations hold exactly.
struct ExtendedModel {
    DensityMatrix state;  // dims (2, 4)
    std::array<DichotomicObservable, 2> alice;           // on C^2
    std::array<DichotomicObservable, 4> bob;             // on C^4
};

// Builds the model from single-qubit observables for each virtual factor.
ExtendedModel make_extended_model(const DensityMatrix& state,
                                  const std::array<Matrix2cd, 2>& alice_ops,
                                  const std::array<Matrix2cd, 4>& bob_virtual_ops);

// Born-rule correlators of the model in canonical order. Verifies that the
// context pairs commute and that every correlator is real.
CorrelatorVector extract_behavior(const ExtendedModel& model);

}  // namespace bellext
