#include "bellext/symmetry.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellext {

namespace {

// Context id of the unordered compatibility edge {u, v}; throws if the two
// measurements are not adjacent on the cycle.
int edge_context(const Scenario& s, int u, int v) {
    const int n = s.n_bob();
    if (v == (u + 1) % n) return u;
    if (u == (v + 1) % n) return v;
    throw std::logic_error("measurements are not compatible");
}

}  // namespace

std::vector<long long> SignedPermutation::apply(const std::vector<long long>& v) const {
    std::vector<long long> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(perm[i])] = sign[i] * v[i];
    }
    return out;
}

std::vector<double> SignedPermutation::apply(const std::vector<double>& v) const {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[static_cast<std::size_t>(perm[i])] = sign[i] * v[i];
    }
    return out;
}

SymmetryGroup::SymmetryGroup(const Scenario& s) : scenario_(s) {
    const int n = s.n_bob();
    const int dim = s.correlator_dimension();

    // Dihedral group of the cycle as measurement maps y -> image.
    std::vector<std::vector<int>> dihedral;
    for (int k = 0; k < n; ++k) {
        std::vector<int> rot(static_cast<std::size_t>(n)), refl(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) {
            rot[static_cast<std::size_t>(y)] = (y + k) % n;
            refl[static_cast<std::size_t>(y)] = (n - y + k) % n;
        }
        dihedral.push_back(std::move(rot));
        dihedral.push_back(std::move(refl));
    }

    elements_.reserve(static_cast<std::size_t>(8) * (1u << n) * dihedral.size());
    for (int swap = 0; swap < 2; ++swap) {
        for (int amask = 0; amask < 4; ++amask) {
            for (const auto& d : dihedral) {
                for (int bmask = 0; bmask < (1 << n); ++bmask) {
                    SignedPermutation g;
                    g.perm.resize(static_cast<std::size_t>(dim));
                    g.sign.resize(static_cast<std::size_t>(dim));
                    auto asign = [&](int x) { return (amask >> x) & 1 ? -1 : 1; };
                    auto bsign = [&](int y) { return (bmask >> y) & 1 ? -1 : 1; };
                    auto amap = [&](int x) { return swap ? 1 - x : x; };
                    for (int pos = 0; pos < dim; ++pos) {
                        const CorrelatorIndex idx = CorrelatorIndex::from_position(s, pos);
                        CorrelatorIndex image = idx;
                        int sign = 1;
                        switch (idx.kind) {
                            case CorrelatorIndex::Kind::A:
                                image.x = amap(idx.x);
                                sign = asign(idx.x);
                                break;
                            case CorrelatorIndex::Kind::B:
                                image.y = d[static_cast<std::size_t>(idx.y)];
                                sign = bsign(idx.y);
                                break;
                            case CorrelatorIndex::Kind::AB:
                                image.x = amap(idx.x);
                                image.y = d[static_cast<std::size_t>(idx.y)];
                                sign = asign(idx.x) * bsign(idx.y);
                                break;
                            case CorrelatorIndex::Kind::BB: {
                                const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(idx.ctx)];
                                image.ctx = edge_context(s, d[static_cast<std::size_t>(y1)],
                                                         d[static_cast<std::size_t>(y2)]);
                                sign = bsign(y1) * bsign(y2);
                                break;
                            }
                            case CorrelatorIndex::Kind::ABB: {
                                const auto [y1, y2] = s.contexts()[static_cast<std::size_t>(idx.ctx)];
                                image.x = amap(idx.x);
                                image.ctx = edge_context(s, d[static_cast<std::size_t>(y1)],
                                                         d[static_cast<std::size_t>(y2)]);
                                sign = asign(idx.x) * bsign(y1) * bsign(y2);
                                break;
                            }
                        }
                        g.perm[static_cast<std::size_t>(pos)] = image.position(s);
                        g.sign[static_cast<std::size_t>(pos)] = sign;
                    }
                    elements_.push_back(std::move(g));
                }
            }
        }
    }
}

std::vector<long long> canonical_form(const std::vector<long long>& coeffs,
                                      const SymmetryGroup& group) {
    std::vector<long long> best = coeffs;
    for (const auto& g : group.elements()) {
        std::vector<long long> image = g.apply(coeffs);
        if (image < best) best = std::move(image);
    }
    return best;
}

bool equivalent_inequalities(const Inequality& a, const Inequality& b,
                             const SymmetryGroup& group) {
    if (a.local_bound != b.local_bound) return false;
    return canonical_form(a.coeffs, group) == canonical_form(b.coeffs, group);
}

}  // namespace bellext
