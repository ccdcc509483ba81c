#include "bellext/facet_enum.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bellext/behavior.hpp"
#include "bellext/exact_rank.hpp"
#include "bellext/symmetry.hpp"

namespace bellext {

namespace {

using I128 = __int128;
using Clock = std::chrono::steady_clock;

[[noreturn]] void overflow() {
    throw std::runtime_error("facet enumeration exceeded 128-bit integer range");
}

I128 checked_mul(I128 a, I128 b) {
    I128 r;
    if (__builtin_mul_overflow(a, b, &r)) overflow();
    return r;
}

I128 checked_sub(I128 a, I128 b) {
    I128 r;
    if (__builtin_sub_overflow(a, b, &r)) overflow();
    return r;
}

I128 abs128(I128 v) { return v < 0 ? -v : v; }

I128 gcd128(I128 a, I128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const I128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long narrow(I128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
        overflow();
    }
    return static_cast<long long>(v);
}

// Determinant by fraction-free (Bareiss) elimination; exact for integer input.
I128 bareiss_det(std::vector<std::vector<I128>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    I128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k; r < n; ++r) {
            if (abs128(m[r][k]) > abs128(m[pivot][k])) pivot = r;
        }
        if (m[pivot][k] == 0) return 0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            for (std::size_t c = k + 1; c < n; ++c) {
                m[r][c] = checked_sub(checked_mul(m[r][c], m[k][k]),
                                      checked_mul(m[r][k], m[k][c])) /
                          prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

struct Ray {
    std::vector<long long> y;
    std::vector<std::uint64_t> zero;  // tight-constraint bitmask over all m constraints
};

int popcount_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    int n = 0;
    for (std::size_t w = 0; w < a.size(); ++w) {
        n += __builtin_popcountll(a[w] & b[w]);
    }
    return n;
}

bool and_subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                   const std::vector<std::uint64_t>& super) {
    for (std::size_t w = 0; w < a.size(); ++w) {
        if (((a[w] & b[w]) & ~super[w]) != 0) return false;
    }
    return true;
}

void gcd_reduce(std::vector<I128>& y) {
    I128 g = 0;
    for (I128 v : y) g = gcd128(g, v);
    if (g > 1) {
        for (I128& v : y) v /= g;
    }
}

I128 dot(const std::vector<long long>& g, const std::vector<long long>& y) {
    I128 s = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        s += checked_mul(static_cast<I128>(g[j]), static_cast<I128>(y[j]));
    }
    return s;
}

}  // namespace

FacetEnumResult enumerate_facets(const std::vector<std::vector<long long>>& points,
                                 const FacetEnumOptions& opt) {
    if (points.empty()) throw std::invalid_argument("facet enumeration needs points");
    const std::size_t dim = points[0].size();
    const std::size_t d = dim + 1;  // homogenizing coordinate first
    const std::size_t m = points.size();
    const std::size_t words = (m + 63) / 64;
    const auto t0 = Clock::now();

    // Generators of the primal cone: g_i = (1, v_i).
    std::vector<std::vector<long long>> gen(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (points[i].size() != dim) throw std::invalid_argument("ragged point set");
        gen[i].reserve(d);
        gen[i].push_back(1);
        gen[i].insert(gen[i].end(), points[i].begin(), points[i].end());
    }

    // Greedy selection of d linearly independent generators as the seed basis.
    std::vector<std::size_t> basis;
    {
        std::vector<std::vector<I128>> rows;
        for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
            rows.emplace_back(gen[i].begin(), gen[i].end());
            if (integer_matrix_rank(rows) == static_cast<int>(rows.size())) {
                basis.push_back(i);
            } else {
                rows.pop_back();
            }
        }
        if (basis.size() < d) {
            throw std::invalid_argument("points do not span the ambient space");
        }
    }

    // Seed rays: signed adjugate columns of the basis matrix, so that ray j is
    // tight on every basis row except j and strictly positive on row j.
    std::vector<Ray> rays;
    {
        std::vector<std::vector<I128>> b(d, std::vector<I128>(d));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) b[i][j] = gen[basis[i]][j];
        }
        const I128 det = bareiss_det(b);
        const int det_sign = det > 0 ? 1 : -1;
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<I128> col(d);
            for (std::size_t k = 0; k < d; ++k) {
                // adj(B)_{kj} = (-1)^{k+j} * minor_{jk}
                std::vector<std::vector<I128>> minor(d - 1, std::vector<I128>(d - 1));
                for (std::size_t r = 0, rr = 0; r < d; ++r) {
                    if (r == j) continue;
                    for (std::size_t c = 0, cc = 0; c < d; ++c) {
                        if (c == k) continue;
                        minor[rr][cc++] = b[r][c];
                    }
                    ++rr;
                }
                const I128 cof = ((j + k) % 2 == 0 ? 1 : -1) * bareiss_det(minor);
                col[k] = det_sign * cof;
            }
            gcd_reduce(col);
            Ray r;
            r.y.resize(d);
            for (std::size_t k = 0; k < d; ++k) r.y[k] = narrow(col[k]);
            r.zero.assign(words, 0);
            for (std::size_t i = 0; i < d; ++i) {
                if (i != j) r.zero[basis[i] / 64] |= 1ull << (basis[i] % 64);
            }
            rays.push_back(std::move(r));
        }
        // Defensive: the seed rays must satisfy their defining sign pattern.
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < d; ++i) {
                const I128 s = dot(gen[basis[i]], rays[j].y);
                if ((i == j && s <= 0) || (i != j && s != 0)) {
                    throw std::logic_error("facet enumeration seed basis is inconsistent");
                }
            }
        }
    }

    FacetEnumResult result;
    result.peak_rays = rays.size();

    const auto check_budget = [&](std::size_t n_rays) {
        result.peak_rays = std::max(result.peak_rays, n_rays);
        if (n_rays > opt.max_rays) {
            throw BudgetExceeded("facet enumeration exceeded the ray budget");
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs > opt.max_seconds) {
            throw BudgetExceeded("facet enumeration exceeded the time budget");
        }
    };

    std::vector<bool> in_basis(m, false);
    for (std::size_t i : basis) in_basis[i] = true;

    for (std::size_t i = 0; i < m; ++i) {
        if (in_basis[i]) continue;
        std::vector<I128> slack(rays.size());
        std::size_t n_neg = 0;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            slack[r] = dot(gen[i], rays[r].y);
            if (slack[r] < 0) ++n_neg;
        }
        // Mark tightness on this constraint for surviving rays.
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (slack[r] == 0) rays[r].zero[i / 64] |= 1ull << (i % 64);
        }
        if (n_neg == 0) continue;

        std::vector<Ray> next;
        next.reserve(rays.size());
        std::vector<std::size_t> pos_idx, neg_idx;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (slack[r] >= 0) {
                next.push_back(rays[r]);
                if (slack[r] > 0) pos_idx.push_back(r);
            } else {
                neg_idx.push_back(r);
            }
        }

        const int need = static_cast<int>(d) - 2;
        for (const std::size_t p : pos_idx) {
            for (const std::size_t n : neg_idx) {
                if (popcount_and(rays[p].zero, rays[n].zero) < need) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size(); ++r) {
                    if (r == p || r == n) continue;
                    if (and_subset_of(rays[p].zero, rays[n].zero, rays[r].zero)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;

                const I128 sp = slack[p];
                const I128 sn = -slack[n];  // > 0
                const I128 g = gcd128(sp, sn);
                std::vector<I128> combo(d);
                for (std::size_t k = 0; k < d; ++k) {
                    combo[k] = checked_sub(
                        checked_mul(sp / g, static_cast<I128>(rays[n].y[k])),
                        checked_mul(-(sn / g), static_cast<I128>(rays[p].y[k])));
                }
                gcd_reduce(combo);
                Ray fresh;
                fresh.y.resize(d);
                for (std::size_t k = 0; k < d; ++k) fresh.y[k] = narrow(combo[k]);
                fresh.zero.assign(words, 0);
                for (std::size_t w = 0; w < words; ++w) {
                    fresh.zero[w] = rays[p].zero[w] & rays[n].zero[w];
                }
                fresh.zero[i / 64] |= 1ull << (i % 64);
                next.push_back(std::move(fresh));
                check_budget(next.size());
            }
        }
        rays = std::move(next);
        check_budget(rays.size());
    }

    // Extreme rays of the polar cone are the facets: y0 + y.v >= 0 for all
    // vertices v, i.e. (-y) . v <= y0.
    result.facets.reserve(rays.size());
    for (const Ray& r : rays) {
        LinearFacet f;
        f.bound = r.y[0];
        f.coeffs.assign(d - 1, 0);
        for (std::size_t k = 1; k < d; ++k) f.coeffs[k - 1] = -r.y[k];
        // Defensive: the bound must be attained (facets touch the polytope).
        I128 best = std::numeric_limits<long long>::min();
        for (const auto& pt : points) {
            I128 v = 0;
            for (std::size_t k = 0; k < pt.size(); ++k) {
                v += checked_mul(static_cast<I128>(f.coeffs[k]), static_cast<I128>(pt[k]));
            }
            best = std::max(best, v);
        }
        if (best != static_cast<I128>(f.bound)) {
            throw std::logic_error("facet enumeration produced a non-tight inequality");
        }
        result.facets.push_back(std::move(f));
    }
    result.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return result;
}

std::vector<FacetClass> enumerate_facet_classes(const Scenario& s, const FacetEnumOptions& opt) {
    const VertexSet vs = enumerate_vertices(s);
    const FacetEnumResult res = enumerate_facets(vs.products, opt);
    const SymmetryGroup group(s);

    std::map<std::pair<std::vector<long long>, long long>, std::size_t> classes;
    for (const LinearFacet& f : res.facets) {
        classes[{canonical_form(f.coeffs, group), f.bound}]++;
    }

    std::vector<FacetClass> out;
    out.reserve(classes.size());
    for (const auto& [key, count] : classes) {
        out.push_back({Inequality(s, key.first, key.second), count});
    }
    return out;
}

}  // namespace bellext
