#include "bellext/seesaw.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "bellext/rng.hpp"

namespace bellext::seesaw {

namespace {

constexpr double kMonotonicitySlack = 1e-9;
constexpr std::uint64_t kSeedTag = 0x5eedULL;

void validate_problem(const Problem& pb) {
    if (pb.n_slots < 2 || pb.n_slots > kMaxSlots) {
        throw std::invalid_argument("seesaw problems must use 2 or 3 slots");
    }
    if (static_cast<int>(pb.parties.size()) != pb.n_slots) {
        throw std::invalid_argument("each slot needs exactly one party");
    }
    for (const auto& t : pb.terms) {
        for (int s = 0; s < kMaxSlots; ++s) {
            const int m = t.meas[static_cast<std::size_t>(s)];
            if (m < -1) throw std::invalid_argument("bad measurement index in term");
            if (s >= pb.n_slots) {
                if (m != -1) throw std::invalid_argument("term touches a slot beyond n_slots");
            } else if (m >= pb.parties[static_cast<std::size_t>(s)].n_meas) {
                throw std::invalid_argument("term measurement index out of range");
            }
        }
    }
}

// Bit of slot s inside a composite basis index (slot 0 most significant).
inline int slot_bit(int index, int slot, int n_slots) {
    return (index >> (n_slots - 1 - slot)) & 1;
}

}  // namespace

Problem extended_problem(const Inequality& ineq) {
    const Scenario& s = ineq.scenario;
    if (s.n_bob() != 4) {
        throw std::invalid_argument("the three-slot encoding needs the 4-cycle scenario");
    }
    Problem pb;
    pb.n_slots = 3;
    pb.parties = {{"alice", 2}, {"bob-even", 2}, {"bob-odd", 2}};

    auto slot_of = [](int y) { return 1 + (y % 2); };
    auto local_of = [](int y) { return y / 2; };

    for (int pos = 0; pos < s.correlator_dimension(); ++pos) {
        const long long coeff = ineq.coeffs[static_cast<std::size_t>(pos)];
        if (coeff == 0) continue;
        const CorrelatorIndex idx = CorrelatorIndex::from_position(s, pos);
        Term t;
        t.coeff = static_cast<double>(coeff);
        switch (idx.kind) {
            case CorrelatorIndex::Kind::A:
                t.meas[0] = idx.x;
                break;
            case CorrelatorIndex::Kind::B:
                t.meas[static_cast<std::size_t>(slot_of(idx.y))] = local_of(idx.y);
                break;
            case CorrelatorIndex::Kind::AB:
                t.meas[0] = idx.x;
                t.meas[static_cast<std::size_t>(slot_of(idx.y))] = local_of(idx.y);
                break;
            case CorrelatorIndex::Kind::BB: {
                const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(idx.ctx)];
                t.meas[static_cast<std::size_t>(slot_of(y1))] = local_of(y1);
                t.meas[static_cast<std::size_t>(slot_of(y2))] = local_of(y2);
                break;
            }
            case CorrelatorIndex::Kind::ABB: {
                const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(idx.ctx)];
                t.meas[0] = idx.x;
                t.meas[static_cast<std::size_t>(slot_of(y1))] = local_of(y1);
                t.meas[static_cast<std::size_t>(slot_of(y2))] = local_of(y2);
                break;
            }
        }
        pb.terms.push_back(t);
    }
    return pb;
}

Problem chsh_problem() {
    Problem pb;
    pb.n_slots = 2;
    pb.parties = {{"alice", 2}, {"bob", 2}};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Term t;
            t.coeff = (x == 1 && y == 1) ? -1.0 : 1.0;
            t.meas[0] = x;
            t.meas[1] = y;
            pb.terms.push_back(t);
        }
    return pb;
}

Problem i3322_problem() {
    Problem pb;
    pb.n_slots = 2;
    pb.parties = {{"alice", 3}, {"bob", 3}};
    auto marginal = [&](int slot, int m, double c) {
        Term t;
        t.coeff = c;
        t.meas[static_cast<std::size_t>(slot)] = m;
        pb.terms.push_back(t);
    };
    auto joint = [&](int ma, int mb, double c) {
        Term t;
        t.coeff = c;
        t.meas[0] = ma;
        t.meas[1] = mb;
        pb.terms.push_back(t);
    };
    // -A1 -A2 -B1 -B2 -A1B1 -A2B1 -A3B1 -A1B2 -A2B2 +A3B2 -A1B3 +A2B3 <= 4
    // (measurement indices written 1-based as usual for this inequality).
    marginal(0, 0, -1.0);
    marginal(0, 1, -1.0);
    marginal(1, 0, -1.0);
    marginal(1, 1, -1.0);
    joint(0, 0, -1.0);
    joint(1, 0, -1.0);
    joint(2, 0, -1.0);
    joint(0, 1, -1.0);
    joint(1, 1, -1.0);
    joint(2, 1, 1.0);
    joint(0, 2, -1.0);
    joint(1, 2, 1.0);
    return pb;
}

double evaluate(const Problem& pb, const Assignment& asg) {
    const int n = pb.n_slots;
    const int dim = pb.dim();
    double value = 0.0;
    for (const auto& t : pb.terms) {
        std::complex<double> acc = 0.0;
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                // O_t[c][r] = prod_s F_s[c_s][r_s]; Tr[rho O_t] = sum rho[r][c] O_t[c][r].
                std::complex<double> f = 1.0;
                bool zero = false;
                for (int s = 0; s < n; ++s) {
                    const int m = t.meas[static_cast<std::size_t>(s)];
                    const int rs = slot_bit(r, s, n);
                    const int cs = slot_bit(c, s, n);
                    if (m < 0) {
                        if (rs != cs) {
                            zero = true;
                            break;
                        }
                    } else {
                        f *= asg.observables[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)](
                            cs, rs);
                    }
                }
                if (!zero) acc += asg.state(r, c) * f;
            }
        }
        value += t.coeff * acc.real();
    }
    return value;
}

MatrixXcd bell_operator(const Problem& pb, const Assignment& asg) {
    const int n = pb.n_slots;
    const int dim = pb.dim();
    MatrixXcd op = MatrixXcd::Zero(dim, dim);
    for (const auto& t : pb.terms) {
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                std::complex<double> f = t.coeff;
                bool zero = false;
                for (int s = 0; s < n; ++s) {
                    const int m = t.meas[static_cast<std::size_t>(s)];
                    const int rs = slot_bit(r, s, n);
                    const int cs = slot_bit(c, s, n);
                    if (m < 0) {
                        if (rs != cs) {
                            zero = true;
                            break;
                        }
                    } else {
                        f *= asg.observables[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)](
                            rs, cs);
                    }
                }
                if (!zero) op(r, c) += f;
            }
        }
    }
    return op;
}

namespace {

// Contraction over every slot except `party`: returns the 2x2 operator M
// with M[i][j] = sum over composite indices of rho[(i,K)][(j,K')] times the
// product of the other slots' factors F_s[K'_s][K_s]. This is
// Tr_{slots != party}[ rho (F_other x 1_party) ].
Matrix2cd contract_term(const Problem& pb, const Assignment& asg, const Term& t, int party) {
    const int n = pb.n_slots;
    const int dim = pb.dim();
    Matrix2cd out = Matrix2cd::Zero();
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            std::complex<double> f = 1.0;
            bool zero = false;
            for (int s = 0; s < n; ++s) {
                if (s == party) continue;
                const int m = t.meas[static_cast<std::size_t>(s)];
                const int rs = slot_bit(r, s, n);
                const int cs = slot_bit(c, s, n);
                if (m < 0) {
                    if (rs != cs) {
                        zero = true;
                        break;
                    }
                } else {
                    f *= asg.observables[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)](cs,
                                                                                                   rs);
                }
            }
            if (zero) continue;
            out(slot_bit(r, party, n), slot_bit(c, party, n)) += asg.state(r, c) * f;
        }
    }
    return out;
}

}  // namespace

Matrix2cd measurement_gradient(const Problem& pb, const Assignment& asg, int party, int meas) {
    if (party < 0 || party >= pb.n_slots) throw std::out_of_range("party out of range");
    Matrix2cd grad = Matrix2cd::Zero();
    for (const auto& t : pb.terms) {
        if (t.meas[static_cast<std::size_t>(party)] != meas) continue;
        grad += t.coeff * contract_term(pb, asg, t, party);
    }
    // The contraction of a Hermitian state against Hermitian factors is
    // Hermitian; symmetrize away the floating-point residue.
    return (grad + grad.adjoint()) / 2.0;
}

std::vector<std::array<Matrix2cd, 2>> reduced_operators(const Problem& pb, const Assignment& asg,
                                                        int party) {
    if (party < 0 || party >= pb.n_slots) throw std::out_of_range("party out of range");
    const int n_meas = pb.parties[static_cast<std::size_t>(party)].n_meas;

    // Constant part: terms in which the party does not appear. Folding it
    // into measurement 0 keeps sum_{m,b} Tr[rho_{Q_{b|m}} Q_{b|m}] equal to
    // the full objective, because the outcome projectors of any measurement
    // sum to the identity.
    Matrix2cd constant = Matrix2cd::Zero();
    for (const auto& t : pb.terms) {
        if (t.meas[static_cast<std::size_t>(party)] == -1) {
            constant += t.coeff * contract_term(pb, asg, t, party);
        }
    }
    constant = (constant + constant.adjoint()) / 2.0;

    std::vector<std::array<Matrix2cd, 2>> ops(static_cast<std::size_t>(n_meas));
    for (int m = 0; m < n_meas; ++m) {
        const Matrix2cd grad = measurement_gradient(pb, asg, party, m);
        Matrix2cd minus = -grad;
        Matrix2cd plus = grad;
        if (m == 0) {
            minus += constant;
            plus += constant;
        }
        ops[static_cast<std::size_t>(m)] = {minus, plus};
    }
    return ops;
}

DichotomicObservable positive_subspace_update(const MatrixXcd& delta) {
    if (delta.rows() != delta.cols()) throw std::invalid_argument("gradient must be square");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver((delta + delta.adjoint()) / 2.0);
    MatrixXcd q_plus = MatrixXcd::Zero(delta.rows(), delta.cols());
    for (Eigen::Index k = 0; k < delta.rows(); ++k) {
        if (solver.eigenvalues()(k) > 0.0) {
            q_plus += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
        }
    }
    return DichotomicObservable{2.0 * q_plus - MatrixXcd::Identity(delta.rows(), delta.cols())};
}

DensityMatrix state_update(const MatrixXcd& bell_op, int dim_a, int dim_b) {
    if (bell_op.rows() != bell_op.cols() || bell_op.rows() != dim_a * dim_b) {
        throw std::invalid_argument("operator dimensions do not match the factors");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver((bell_op + bell_op.adjoint()) / 2.0);
    VectorXcd top = solver.eigenvectors().col(bell_op.rows() - 1);
    // Fix the global phase: largest-magnitude entry real and positive.
    Eigen::Index pivot = 0;
    top.cwiseAbs().maxCoeff(&pivot);
    const std::complex<double> ph = top(pivot) / std::abs(top(pivot));
    top /= ph;
    return DensityMatrix{top * top.adjoint(), dim_a, dim_b};
}

namespace {

void party_update(const Problem& pb, Assignment& asg, int party) {
    const int n_meas = pb.parties[static_cast<std::size_t>(party)].n_meas;
    // Gradients of a party's measurements do not involve its own
    // observables, so all of them can be refreshed from one snapshot.
    std::vector<Matrix2cd> grads(static_cast<std::size_t>(n_meas));
    for (int m = 0; m < n_meas; ++m) grads[static_cast<std::size_t>(m)] = measurement_gradient(pb, asg, party, m);
    for (int m = 0; m < n_meas; ++m) {
        asg.observables[static_cast<std::size_t>(party)][static_cast<std::size_t>(m)] =
            positive_subspace_update(grads[static_cast<std::size_t>(m)]).op;
    }
}

double check_monotone(double before, double after, const char* step) {
    if (after < before - kMonotonicitySlack * (1.0 + std::abs(before))) {
        throw std::logic_error(std::string("seesaw value decreased during ") + step);
    }
    return after;
}

}  // namespace

Result run_seesaw(const Problem& pb, const std::optional<DensityMatrix>& fixed_state,
                  const Config& cfg) {
    validate_problem(pb);
    if (cfg.seeds < 1) throw std::invalid_argument("need at least one seed");
    if (fixed_state) {
        if (fixed_state->dim_a != 2 || fixed_state->dim_b != pb.bob_dim()) {
            throw std::invalid_argument("fixed state dimensions do not match the problem");
        }
        if (cfg.optimize_state) {
            throw std::invalid_argument("a fixed state cannot also be optimized");
        }
    } else if (!cfg.optimize_state) {
        throw std::invalid_argument("without a fixed state the state must be optimized");
    }

    const int dim = pb.dim();
    Result result;
    result.best_value = -std::numeric_limits<double>::infinity();

    for (int seed = 0; seed < cfg.seeds; ++seed) {
        std::vector<std::uint64_t> tags(cfg.stream_tags);
        tags.push_back(kSeedTag);
        tags.push_back(static_cast<std::uint64_t>(seed));
        std::mt19937_64 rng = seeded_stream(cfg.master_seed, tags);

        Assignment asg;
        asg.observables.resize(static_cast<std::size_t>(pb.n_slots));
        for (int p = 0; p < pb.n_slots; ++p) {
            auto& list = asg.observables[static_cast<std::size_t>(p)];
            list.resize(static_cast<std::size_t>(pb.parties[static_cast<std::size_t>(p)].n_meas));
            for (auto& obs : list) obs = random_projective_observable(2, rng);
        }
        if (fixed_state) {
            if (cfg.random_unitary_on_state) {
                const MatrixXcd u = haar_unitary(pb.bob_dim(), rng);
                MatrixXcd full = MatrixXcd::Zero(dim, dim);
                for (int i = 0; i < 2; ++i)
                    full.block(i * pb.bob_dim(), i * pb.bob_dim(), pb.bob_dim(), pb.bob_dim()) = u;
                asg.state = full * fixed_state->rho * full.adjoint();
            } else {
                asg.state = fixed_state->rho;
            }
        } else {
            // Best state for the random measurements seeds the iteration.
            asg.state = MatrixXcd::Identity(dim, dim) / dim;
            asg.state = state_update(bell_operator(pb, asg), 2, pb.bob_dim()).rho;
        }

        double value = evaluate(pb, asg);
        int sweeps = 0;
        for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
            const double sweep_start = value;
            for (int p = 0; p < pb.n_slots; ++p) {
                party_update(pb, asg, p);
                value = check_monotone(value, evaluate(pb, asg), "a measurement update");
            }
            if (cfg.optimize_state) {
                asg.state = state_update(bell_operator(pb, asg), 2, pb.bob_dim()).rho;
                value = check_monotone(value, evaluate(pb, asg), "a state update");
            }
            ++sweeps;
            if (value - sweep_start < cfg.convergence_tol) break;
        }

        result.seed_values.push_back(value);
        result.sweeps_used.push_back(sweeps);
        if (value > result.best_value) {
            result.best_value = value;
            result.best = asg;
            result.best_seed = seed;
        }
        if (cfg.stop_at_value && result.best_value >= *cfg.stop_at_value) {
            result.reached_target = true;
            break;
        }
    }
    return result;
}

ExtendedModel to_extended_model(const Problem& pb, const Assignment& asg) {
    if (pb.n_slots != 3) {
        throw std::invalid_argument("only three-slot problems map to the extended scenario");
    }
    const std::array<Matrix2cd, 2> alice = {asg.observables[0][0], asg.observables[0][1]};
    const std::array<Matrix2cd, 4> bob = {asg.observables[1][0], asg.observables[2][0],
                                          asg.observables[1][1], asg.observables[2][1]};
    return make_extended_model(make_density(asg.state, 2, 4), alice, bob);
}

}  // namespace bellext::seesaw
