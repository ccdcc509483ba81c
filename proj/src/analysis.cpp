#include "bellext/analysis.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bellext::analysis {

namespace {

constexpr std::uint64_t kTagTable = 1;
constexpr std::uint64_t kTagSweep = 2;

std::uint64_t inequality_tag(SweepInequality v) {
    switch (v) {
        case SweepInequality::row15: return 15;
        case SweepInequality::chsh: return 1;
        case SweepInequality::i3322: return 3322;
    }
    throw std::logic_error("unknown sweep inequality");
}

}  // namespace

StateFamily family_from_name(const std::string& name) {
    if (name == "rho") return StateFamily::rho;
    if (name == "sigma") return StateFamily::sigma;
    throw std::invalid_argument("unknown state family: " + name);
}

std::string family_name(StateFamily f) {
    return f == StateFamily::rho ? "rho" : "sigma";
}

DensityMatrix build_family_state(StateFamily f, double alpha, double w) {
    return f == StateFamily::rho ? state_family_rho(alpha, w) : state_family_sigma(alpha, w);
}

Eigen::Matrix3d correlation_matrix(const DensityMatrix& two_qubit) {
    if (two_qubit.dim_a != 2 || two_qubit.dim_b != 2) {
        throw std::invalid_argument("correlation matrix needs a two-qubit state");
    }
    const std::array<Matrix2cd, 3> paulis = {pauli_x(), pauli_y(), pauli_z()};
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Eigen::MatrixXcd op = Eigen::kroneckerProduct(paulis[i], paulis[j]);
            const std::complex<double> val = (two_qubit.rho * op).trace();
            if (std::abs(val.imag()) > kImaginaryTol) {
                throw std::runtime_error("correlation matrix entry has an imaginary part");
            }
            t(i, j) = val.real();
        }
    }
    return t;
}

double horodecki_m(const DensityMatrix& two_qubit) {
    const Eigen::Matrix3d t = correlation_matrix(two_qubit);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t);
    const Eigen::Vector3d ev = es.eigenvalues();  // ascending
    return ev(1) + ev(2);
}

double chsh_max_value(const DensityMatrix& two_qubit) {
    return 2.0 * std::sqrt(horodecki_m(two_qubit));
}

double chsh_critical_w(StateFamily f, double alpha, double tol) {
    const auto violated = [&](double w) {
        return horodecki_m(build_family_state(f, alpha, w)) > 1.0;
    };
    if (!violated(1.0)) return 1.0;
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (violated(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double evaluate_i3322(const DensityMatrix& two_qubit, const std::array<Matrix2cd, 3>& alice,
                      const std::array<Matrix2cd, 3>& bob) {
    if (two_qubit.dim_a != 2 || two_qubit.dim_b != 2) {
        throw std::invalid_argument("evaluate_i3322 needs a two-qubit state");
    }
    seesaw::Assignment asg;
    asg.state = two_qubit.rho;
    asg.observables.resize(2);
    for (int m = 0; m < 3; ++m) {
        asg.observables[0].push_back(observable_from_hermitian(alice[m]).op);
        asg.observables[1].push_back(observable_from_hermitian(bob[m]).op);
    }
    return seesaw::evaluate(seesaw::i3322_problem(), asg);
}

LadderResult bisection_ladder(double w_start, int steps,
                              const std::function<bool(double)>& is_violated) {
    if (steps < 1) throw std::invalid_argument("bisection ladder needs at least one step");
    if (w_start < 0.0 || w_start > 1.0) throw std::invalid_argument("w_start outside [0, 1]");
    LadderResult res;
    double w = w_start;
    for (int i = 1; i <= steps; ++i) {
        const bool v = is_violated(w);
        res.w_path.push_back(w);
        res.violated.push_back(v);
        if (v) res.w_critical = std::min(res.w_critical, w);
        const double delta = std::ldexp(1.0, -(i + 2));
        w = std::clamp(v ? w - delta : w + delta, 0.0, 1.0);
    }
    return res;
}

SweepInequality sweep_inequality_from_name(const std::string& name) {
    if (name == "15" || name == "row15") return SweepInequality::row15;
    if (name == "chsh") return SweepInequality::chsh;
    if (name == "i3322") return SweepInequality::i3322;
    throw std::invalid_argument("unknown sweep inequality: " + name);
}

std::string sweep_inequality_name(SweepInequality v) {
    switch (v) {
        case SweepInequality::row15: return "15";
        case SweepInequality::chsh: return "chsh";
        case SweepInequality::i3322: return "i3322";
    }
    throw std::logic_error("unknown sweep inequality");
}

std::vector<double> uniform_alpha_grid(int n) {
    if (n < 2) throw std::invalid_argument("alpha grid needs at least two points");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = 0.5 + 0.5 * static_cast<double>(i) / (n - 1);
    }
    return grid;
}

namespace {

// One fixed-state probe of the ladder: does the family state at (alpha, w)
// violate the inequality? Seeds stop early at the first witnessed violation.
bool seesaw_probe(const seesaw::Problem& pb, const DensityMatrix& state, double beta_l,
                  double margin, int seeds, std::uint64_t master_seed,
                  const std::vector<std::uint64_t>& tags) {
    seesaw::Config scfg;
    scfg.seeds = seeds;
    scfg.optimize_state = false;
    scfg.random_unitary_on_state = true;
    scfg.master_seed = master_seed;
    scfg.stream_tags = tags;
    scfg.stop_at_value = beta_l + margin + 1e-12;
    const seesaw::Result r = seesaw::run_seesaw(pb, state, scfg);
    return r.best_value > beta_l + margin;
}

}  // namespace

SweepResult critical_w_sweep(const SweepConfig& cfg) {
    if (cfg.alphas.empty()) throw std::invalid_argument("sweep needs a non-empty alpha grid");
    if (cfg.seeds < 1) throw std::invalid_argument("sweep needs at least one seed");
    for (double a : cfg.alphas) {
        if (a < 0.0 || a > 1.0) throw std::invalid_argument("alpha outside [0, 1]");
    }

    SweepResult res;
    res.config = cfg;
    res.points.resize(cfg.alphas.size());

    if (cfg.inequality == SweepInequality::chsh) {
        res.method = "horodecki-exact";
        parallel_for(static_cast<int>(cfg.alphas.size()), cfg.threads, [&](int i) {
            res.points[i] = {cfg.alphas[i], chsh_critical_w(cfg.family, cfg.alphas[i])};
        });
        return res;
    }

    res.method = "seesaw-ladder";
    const std::uint64_t ineq_tag = inequality_tag(cfg.inequality);

    seesaw::Problem pb;
    double beta_l = 0.0;
    const Inequality* extended = nullptr;
    std::vector<Inequality> table;
    if (cfg.inequality == SweepInequality::row15) {
        table = load_inequality_table(default_table_path());
        extended = &table_row(table, 15);
        pb = seesaw::extended_problem(*extended);
        beta_l = static_cast<double>(extended->local_bound);
    } else {
        pb = seesaw::i3322_problem();
        beta_l = 4.0;
    }

    parallel_for(static_cast<int>(cfg.alphas.size()), cfg.threads, [&](int i) {
        const double alpha = cfg.alphas[i];
        int step = 0;
        const auto probe = [&](double w) {
            const DensityMatrix two_qubit = build_family_state(cfg.family, alpha, w);
            const DensityMatrix state =
                extended != nullptr ? embed_bob_in_c4(two_qubit) : two_qubit;
            const std::vector<std::uint64_t> tags = {kTagSweep, ineq_tag,
                                                     static_cast<std::uint64_t>(i),
                                                     static_cast<std::uint64_t>(step++)};
            return seesaw_probe(pb, state, beta_l, cfg.violation_margin, cfg.seeds,
                                cfg.master_seed, tags);
        };
        const LadderResult ladder = bisection_ladder(cfg.w_start, cfg.bisection_steps, probe);
        res.points[i] = {alpha, ladder.w_critical};
    });
    return res;
}

TableReport verify_table(const std::vector<Inequality>& table, bool with_quantum, int seeds,
                         std::uint64_t master_seed, int threads, double quantum_tol) {
    if (table.empty()) throw std::invalid_argument("empty inequality table");
    const VertexSet vs = enumerate_vertices(table.front().scenario);

    TableReport report;
    report.with_quantum = with_quantum;
    report.rows.resize(table.size());

    parallel_for(static_cast<int>(table.size()), threads, [&](int i) {
        const Inequality& ineq = table[i];
        RowReport row;
        row.id = ineq.id.value_or(i + 1);
        row.beta_l_expected = ineq.local_bound;
        row.beta_l_computed = local_bound(ineq, vs);
        const FacetReport fr = verify_facet(ineq, vs);
        row.facet = fr.is_facet();
        row.tight_dimension = fr.tight_affine_dimension;
        if (with_quantum) {
            if (!ineq.quantum_bound_ref) {
                throw std::invalid_argument("table row lacks a reference quantum bound");
            }
            row.beta_q_ref = *ineq.quantum_bound_ref;
            seesaw::Config scfg;
            scfg.seeds = seeds;
            scfg.master_seed = master_seed;
            scfg.stream_tags = {kTagTable, static_cast<std::uint64_t>(row.id)};
            scfg.stop_at_value = row.beta_q_ref - quantum_tol;
            const seesaw::Result r = seesaw::run_seesaw(seesaw::extended_problem(ineq), {}, scfg);
            row.seesaw_value = r.best_value;
            row.seeds_used = static_cast<int>(r.seed_values.size());
            row.quantum_ok = std::abs(r.best_value - row.beta_q_ref) <= quantum_tol;
        }
        report.rows[i] = row;
    });

    report.all_pass = std::all_of(report.rows.begin(), report.rows.end(),
                                  [&](const RowReport& r) { return r.pass(with_quantum); });
    return report;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::clamp(threads, 1, std::max(1, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace bellext::analysis
