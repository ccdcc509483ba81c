#include "bellext/quantum.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace bellext {

using namespace std::complex_literals;

Matrix2cd pauli_x() {
    Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2cd pauli_y() {
    Matrix2cd m;
    m << 0, -1i, 1i, 0;
    return m;
}

Matrix2cd pauli_z() {
    Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double commutator_norm(const MatrixXcd& a, const MatrixXcd& b) {
    return max_abs(a * b - b * a);
}

DensityMatrix make_density(const MatrixXcd& rho, int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1 || rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b) {
        throw std::invalid_argument("density matrix dimensions do not match the factors");
    }
    if (max_abs(rho - rho.adjoint()) > kHermitianTol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > kTraceTol || std::abs(rho.trace().imag()) > kTraceTol) {
        throw std::invalid_argument("density matrix does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    return DensityMatrix{rho, dim_a, dim_b};
}

DensityMatrix pure_state(const VectorXcd& psi, int dim_a, int dim_b) {
    if (psi.size() != dim_a * dim_b) throw std::invalid_argument("state vector has wrong dimension");
    const double norm = psi.norm();
    if (norm < 1e-12) throw std::invalid_argument("cannot normalize the zero vector");
    const VectorXcd v = psi / norm;
    return DensityMatrix{v * v.adjoint(), dim_a, dim_b};
}

MatrixXcd DichotomicObservable::projector(int outcome) const {
    if (outcome != 1 && outcome != -1) throw std::invalid_argument("outcome must be +/-1");
    const MatrixXcd id = MatrixXcd::Identity(op.rows(), op.cols());
    return (id + static_cast<double>(outcome) * op) / 2.0;
}

DichotomicObservable observable_from_hermitian(const MatrixXcd& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("observable must be square");
    if (max_abs(h - h.adjoint()) > kHermitianTol) {
        throw std::invalid_argument("observable is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    MatrixXcd snapped = MatrixXcd::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        const double lambda = solver.eigenvalues()(k);
        if (std::abs(lambda - 1.0) > kEigenvalueSnapTol && std::abs(lambda + 1.0) > kEigenvalueSnapTol) {
            throw std::invalid_argument("observable eigenvalue is not within 1e-8 of +/-1");
        }
        const double sign = lambda > 0 ? 1.0 : -1.0;
        snapped += sign * solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
    }
    return DichotomicObservable{snapped};
}

DichotomicObservable trivial_observable(int dim, int outcome) {
    if (outcome != 1 && outcome != -1) throw std::invalid_argument("outcome must be +/-1");
    return DichotomicObservable{static_cast<double>(outcome) * MatrixXcd::Identity(dim, dim)};
}

MatrixXcd partial_trace(const MatrixXcd& m, int dim_a, int dim_b, Subsystem traced_out) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
        throw std::invalid_argument("operator dimensions do not match the factors");
    }
    if (traced_out == Subsystem::A) {
        MatrixXcd out = MatrixXcd::Zero(dim_b, dim_b);
        for (int j = 0; j < dim_b; ++j)
            for (int jp = 0; jp < dim_b; ++jp)
                for (int i = 0; i < dim_a; ++i) out(j, jp) += m(i * dim_b + j, i * dim_b + jp);
        return out;
    }
    MatrixXcd out = MatrixXcd::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
        for (int ip = 0; ip < dim_a; ++ip)
            for (int j = 0; j < dim_b; ++j) out(i, ip) += m(i * dim_b + j, ip * dim_b + j);
    return out;
}

VectorXcd psi_alpha(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0,1]");
    VectorXcd psi = VectorXcd::Zero(4);
    psi(1) = std::sqrt(alpha);
    psi(2) = std::sqrt(1.0 - alpha);
    return psi;
}

namespace {

void check_weight(double w) {
    if (w < 0.0 || w > 1.0) throw std::invalid_argument("w must lie in [0,1]");
}

}  // namespace

DensityMatrix state_family_rho(double alpha, double w) {
    check_weight(w);
    const VectorXcd psi = psi_alpha(alpha);
    MatrixXcd rho = w * (psi * psi.adjoint());
    rho(0, 0) += 1.0 - w;
    return make_density(rho, 2, 2);
}

DensityMatrix state_family_sigma(double alpha, double w) {
    check_weight(w);
    const VectorXcd psi = psi_alpha(alpha);
    MatrixXcd rho = w * (psi * psi.adjoint()) + (1.0 - w) / 4.0 * MatrixXcd::Identity(4, 4);
    return make_density(rho, 2, 2);
}

DensityMatrix embed_bob_in_c4(const DensityMatrix& two_qubit) {
    if (two_qubit.dim_a != 2 || two_qubit.dim_b != 2) {
        throw std::invalid_argument("embedding expects a two-qubit state");
    }
    MatrixXcd isometry = MatrixXcd::Zero(4, 2);
    isometry(0, 0) = 1.0;
    isometry(1, 1) = 1.0;
    const MatrixXcd e = Eigen::kroneckerProduct(Matrix2cd::Identity(), isometry);
    return make_density(e * two_qubit.rho * e.adjoint(), 2, 4);
}

ExtendedModel make_extended_model(const DensityMatrix& state,
                                  const std::array<Matrix2cd, 2>& alice_ops,
                                  const std::array<Matrix2cd, 4>& bob_virtual_ops) {
    if (state.dim_a != 2 || state.dim_b != 4) {
        throw std::invalid_argument("extended model state must have dims (2,4)");
    }
    ExtendedModel model;
    model.state = state;
    for (int x = 0; x < 2; ++x) {
        model.alice[static_cast<std::size_t>(x)] =
            observable_from_hermitian(alice_ops[static_cast<std::size_t>(x)]);
    }
    const Matrix2cd id = Matrix2cd::Identity();
    for (int y = 0; y < 4; ++y) {
        const DichotomicObservable tilde =
            observable_from_hermitian(bob_virtual_ops[static_cast<std::size_t>(y)]);
        // Even measurements act on the first virtual qubit, odd ones on the
        // second; neighbours on the cycle then commute identically.
        const MatrixXcd full = (y % 2 == 0) ? Eigen::kroneckerProduct(tilde.op, id).eval()
                                            : Eigen::kroneckerProduct(id, tilde.op).eval();
        model.bob[static_cast<std::size_t>(y)] = DichotomicObservable{full};
    }
    return model;
}

CorrelatorVector extract_behavior(const ExtendedModel& model) {
    const Scenario s = build_cycle_scenario(4);
    const DensityMatrix& st = model.state;
    if (st.dim_a != 2 || st.dim_b != 4) {
        throw std::invalid_argument("extended model state must have dims (2,4)");
    }

    for (const auto& [y1, y2] : s.contexts()) {
        const double c = commutator_norm(model.bob[static_cast<std::size_t>(y1)].op,
                                         model.bob[static_cast<std::size_t>(y2)].op);
        if (c > kCommutatorTol) {
            throw std::runtime_error("context partners do not commute");
        }
    }

    const Matrix2cd id2 = Matrix2cd::Identity();
    const MatrixXcd id4 = MatrixXcd::Identity(4, 4);
    auto expectation = [&](const MatrixXcd& full_op) {
        const std::complex<double> v = (st.rho * full_op).trace();
        if (std::abs(v.imag()) > kImaginaryTol) {
            throw std::runtime_error("correlator has a nonvanishing imaginary part");
        }
        return v.real();
    };

    CorrelatorVector c(s);
    for (int x = 0; x < 2; ++x) {
        const MatrixXcd& a = model.alice[static_cast<std::size_t>(x)].op;
        c[CorrelatorIndex::alice(x)] = expectation(Eigen::kroneckerProduct(a, id4));
    }
    for (int y = 0; y < 4; ++y) {
        const MatrixXcd& b = model.bob[static_cast<std::size_t>(y)].op;
        c[CorrelatorIndex::bob(y)] = expectation(Eigen::kroneckerProduct(id2, b));
    }
    for (int x = 0; x < 2; ++x) {
        const MatrixXcd& a = model.alice[static_cast<std::size_t>(x)].op;
        for (int y = 0; y < 4; ++y) {
            const MatrixXcd& b = model.bob[static_cast<std::size_t>(y)].op;
            c[CorrelatorIndex::alice_bob(x, y)] = expectation(Eigen::kroneckerProduct(a, b));
        }
    }
    for (int ctx = 0; ctx < 4; ++ctx) {
        const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(ctx)];
        const MatrixXcd pair = model.bob[static_cast<std::size_t>(y1)].op *
                               model.bob[static_cast<std::size_t>(y2)].op;
        c[CorrelatorIndex::bob_pair(ctx)] = expectation(Eigen::kroneckerProduct(id2, pair));
        for (int x = 0; x < 2; ++x) {
            const MatrixXcd& a = model.alice[static_cast<std::size_t>(x)].op;
            c[CorrelatorIndex::alice_bob_pair(x, ctx)] =
                expectation(Eigen::kroneckerProduct(a, pair));
        }
    }
    return c;
}

}  // namespace bellext
