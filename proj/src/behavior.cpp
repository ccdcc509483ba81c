#include "bellext/behavior.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bellext {

namespace {

constexpr int kOutcomes[2] = {-1, +1};
constexpr double kNormalizationTol = 1e-9;

}  // namespace

CorrelatorVector::CorrelatorVector(const Scenario& s, std::vector<double> v)
    : scenario(s), values(std::move(v)) {
    if (static_cast<int>(values.size()) != s.correlator_dimension()) {
        throw std::invalid_argument("correlator vector has wrong dimension");
    }
}

ProbabilityTable::ProbabilityTable(const Scenario& s)
    : scenario(s),
      p(static_cast<std::size_t>(Scenario::kAliceInputs) * s.n_contexts() * 8, 0.0) {}

int ProbabilityTable::slot(int outcome) {
    if (outcome != -1 && outcome != 1) throw std::invalid_argument("outcome must be +/-1");
    return outcome == 1 ? 1 : 0;
}

double& ProbabilityTable::at(int x, int ctx, int a, int b1, int b2) {
    return p[static_cast<std::size_t>(((x * scenario.n_contexts() + ctx) * 2 + slot(a)) * 2 +
                                      slot(b1)) *
                 2 +
             slot(b2)];
}

double ProbabilityTable::at(int x, int ctx, int a, int b1, int b2) const {
    return const_cast<ProbabilityTable*>(this)->at(x, ctx, a, b1, b2);
}

ProbabilityTable correlators_to_probabilities(const CorrelatorVector& c) {
    const Scenario& s = c.scenario;
    ProbabilityTable t(s);
    for (int x = 0; x < s.alice_inputs(); ++x) {
        for (int ctx = 0; ctx < s.n_contexts(); ++ctx) {
            const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(ctx)];
            const double ca = c[CorrelatorIndex::alice(x)];
            const double cb1 = c[CorrelatorIndex::bob(y1)];
            const double cb2 = c[CorrelatorIndex::bob(y2)];
            const double cbb = c[CorrelatorIndex::bob_pair(ctx)];
            const double cab1 = c[CorrelatorIndex::alice_bob(x, y1)];
            const double cab2 = c[CorrelatorIndex::alice_bob(x, y2)];
            const double cabb = c[CorrelatorIndex::alice_bob_pair(x, ctx)];
            for (int a : kOutcomes) {
                for (int b1 : kOutcomes) {
                    for (int b2 : kOutcomes) {
                        t.at(x, ctx, a, b1, b2) =
                            (1.0 + a * ca + b1 * cb1 + b2 * cb2 + b1 * b2 * cbb + a * b1 * cab1 +
                             a * b2 * cab2 + a * b1 * b2 * cabb) /
                            8.0;
                    }
                }
            }
        }
    }
    return t;
}

CorrelatorVector probabilities_to_correlators(const ProbabilityTable& t) {
    const Scenario& s = t.scenario;
    for (int x = 0; x < s.alice_inputs(); ++x) {
        for (int ctx = 0; ctx < s.n_contexts(); ++ctx) {
            double sum = 0.0;
            for (int a : kOutcomes)
                for (int b1 : kOutcomes)
                    for (int b2 : kOutcomes) sum += t.at(x, ctx, a, b1, b2);
            if (std::abs(sum - 1.0) > kNormalizationTol) {
                throw std::invalid_argument("probability table is not normalized");
            }
        }
    }

    CorrelatorVector c(s);
    const int n = s.n_bob();

    // <A_x>: average over all contexts.
    for (int x = 0; x < 2; ++x) {
        double acc = 0.0;
        for (int ctx = 0; ctx < n; ++ctx)
            for (int a : kOutcomes)
                for (int b1 : kOutcomes)
                    for (int b2 : kOutcomes) acc += a * t.at(x, ctx, a, b1, b2);
        c[CorrelatorIndex::alice(x)] = acc / n;
    }

    // <B_y>: average over both contexts containing y and both Alice inputs.
    for (int y = 0; y < n; ++y) {
        double acc = 0.0;
        for (int x = 0; x < 2; ++x) {
            for (int ctx = 0; ctx < n; ++ctx) {
                const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(ctx)];
                if (y1 != y && y2 != y) continue;
                for (int a : kOutcomes)
                    for (int b1 : kOutcomes)
                        for (int b2 : kOutcomes)
                            acc += (y1 == y ? b1 : b2) * t.at(x, ctx, a, b1, b2);
            }
        }
        c[CorrelatorIndex::bob(y)] = acc / 4.0;
    }

    // <A_x B_y>: average over the two contexts containing y.
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < n; ++y) {
            double acc = 0.0;
            for (int ctx = 0; ctx < n; ++ctx) {
                const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(ctx)];
                if (y1 != y && y2 != y) continue;
                for (int a : kOutcomes)
                    for (int b1 : kOutcomes)
                        for (int b2 : kOutcomes)
                            acc += a * (y1 == y ? b1 : b2) * t.at(x, ctx, a, b1, b2);
            }
            c[CorrelatorIndex::alice_bob(x, y)] = acc / 2.0;
        }
    }

    // <B_y1 B_y2>: average over Alice inputs.
    for (int ctx = 0; ctx < n; ++ctx) {
        double acc = 0.0;
        for (int x = 0; x < 2; ++x)
            for (int a : kOutcomes)
                for (int b1 : kOutcomes)
                    for (int b2 : kOutcomes) acc += b1 * b2 * t.at(x, ctx, a, b1, b2);
        c[CorrelatorIndex::bob_pair(ctx)] = acc / 2.0;
    }

    // <A_x B_y1 B_y2>: single block each.
    for (int x = 0; x < 2; ++x) {
        for (int ctx = 0; ctx < n; ++ctx) {
            double acc = 0.0;
            for (int a : kOutcomes)
                for (int b1 : kOutcomes)
                    for (int b2 : kOutcomes) acc += a * b1 * b2 * t.at(x, ctx, a, b1, b2);
            c[CorrelatorIndex::alice_bob_pair(x, ctx)] = acc;
        }
    }
    return c;
}

bool is_valid_behavior(const CorrelatorVector& c, double eps) {
    const ProbabilityTable t = correlators_to_probabilities(c);
    for (double v : t.p) {
        if (v < -eps) return false;
    }
    return true;
}

NoDisturbanceReport check_no_disturbance(const ProbabilityTable& t) {
    const Scenario& s = t.scenario;
    NoDisturbanceReport report;
    const int n = s.n_bob();
    for (int y = 0; y < n; ++y) {
        for (int b : kOutcomes) {
            // p(b|y) from every (x, ctx) block containing y must agree.
            std::vector<double> marginals;
            for (int x = 0; x < 2; ++x) {
                for (int ctx = 0; ctx < n; ++ctx) {
                    const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(ctx)];
                    if (y1 != y && y2 != y) continue;
                    double m = 0.0;
                    for (int a : kOutcomes)
                        for (int b1 : kOutcomes)
                            for (int b2 : kOutcomes) {
                                if ((y1 == y ? b1 : b2) == b) m += t.at(x, ctx, a, b1, b2);
                            }
                    marginals.push_back(m);
                }
            }
            for (std::size_t i = 0; i < marginals.size(); ++i)
                for (std::size_t j = i + 1; j < marginals.size(); ++j)
                    report.max_violation =
                        std::max(report.max_violation, std::abs(marginals[i] - marginals[j]));
        }
    }
    return report;
}

namespace {

// Assembles the full 2+6n correlator vector of a product vertex.
std::vector<long long> product_vertex(const Scenario& s, const std::array<int, 2>& alice,
                                      const BobVertex& bob) {
    const int n = s.n_bob();
    std::vector<long long> v(static_cast<std::size_t>(s.correlator_dimension()), 0);
    auto set = [&](const CorrelatorIndex& idx, long long val) {
        v[static_cast<std::size_t>(idx.position(s))] = val;
    };
    for (int x = 0; x < 2; ++x) set(CorrelatorIndex::alice(x), alice[static_cast<std::size_t>(x)]);
    for (int y = 0; y < n; ++y) set(CorrelatorIndex::bob(y), bob.singles[static_cast<std::size_t>(y)]);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < n; ++y)
            set(CorrelatorIndex::alice_bob(x, y),
                static_cast<long long>(alice[static_cast<std::size_t>(x)]) *
                    bob.singles[static_cast<std::size_t>(y)]);
    for (int ctx = 0; ctx < n; ++ctx)
        set(CorrelatorIndex::bob_pair(ctx), bob.pairs[static_cast<std::size_t>(ctx)]);
    for (int x = 0; x < 2; ++x)
        for (int ctx = 0; ctx < n; ++ctx)
            set(CorrelatorIndex::alice_bob_pair(x, ctx),
                static_cast<long long>(alice[static_cast<std::size_t>(x)]) *
                    bob.pairs[static_cast<std::size_t>(ctx)]);
    return v;
}

}  // namespace

VertexSet enumerate_vertices(const Scenario& s) {
    const int n = s.n_bob();
    VertexSet vs(s);

    // Deterministic Alice assignments.
    for (int a0 : kOutcomes)
        for (int a1 : kOutcomes) vs.alice.push_back({a0, a1});

    // Noncontextual Bob vertices: deterministic outcomes, pair correlators
    // are products of the singles.
    for (int mask = 0; mask < (1 << n); ++mask) {
        BobVertex b;
        b.singles.resize(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) b.singles[static_cast<std::size_t>(y)] = (mask >> y) & 1 ? 1 : -1;
        b.pairs.resize(static_cast<std::size_t>(n));
        for (int ctx = 0; ctx < n; ++ctx) {
            const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(ctx)];
            b.pairs[static_cast<std::size_t>(ctx)] =
                b.singles[static_cast<std::size_t>(y1)] * b.singles[static_cast<std::size_t>(y2)];
        }
        b.contextual = false;
        vs.bob.push_back(std::move(b));
    }
    vs.n_bob_noncontextual = static_cast<int>(vs.bob.size());

    // Contextual Bob vertices: vanishing singles, pair correlators +/-1 with
    // an odd number of -1 around the cycle.
    for (int mask = 0; mask < (1 << n); ++mask) {
        int parity = 1;
        for (int ctx = 0; ctx < n; ++ctx) parity *= (mask >> ctx) & 1 ? -1 : 1;
        if (parity != -1) continue;
        BobVertex b;
        b.singles.assign(static_cast<std::size_t>(n), 0);
        b.pairs.resize(static_cast<std::size_t>(n));
        for (int ctx = 0; ctx < n; ++ctx)
            b.pairs[static_cast<std::size_t>(ctx)] = (mask >> ctx) & 1 ? -1 : 1;
        b.contextual = true;
        vs.bob.push_back(std::move(b));
    }
    vs.n_bob_contextual = static_cast<int>(vs.bob.size()) - vs.n_bob_noncontextual;

    vs.products.reserve(vs.alice.size() * vs.bob.size());
    for (const auto& a : vs.alice)
        for (const auto& b : vs.bob) vs.products.push_back(product_vertex(s, a, b));
    return vs;
}

CorrelatorVector vertex_behavior(const VertexSet& vs, std::size_t product_index) {
    if (product_index >= vs.products.size()) throw std::out_of_range("vertex index out of range");
    CorrelatorVector c(vs.scenario);
    const auto& v = vs.products[product_index];
    for (std::size_t i = 0; i < v.size(); ++i) c.values[i] = static_cast<double>(v[i]);
    return c;
}

void write_vertex_csv(const VertexSet& vs, std::ostream& out) {
    const Scenario& s = vs.scenario;
    const int dim = s.correlator_dimension();
    for (const auto& v : vs.products) {
        for (int i = 0; i < dim; ++i) {
            if (i) out << ',';
            out << v[static_cast<std::size_t>(i)];
        }
        out << '\n';
    }
}

}  // namespace bellext
