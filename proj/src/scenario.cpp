#include "bellext/scenario.hpp"

#include <stdexcept>
#include <string>

namespace bellext {

Scenario::Scenario(int n_bob) : n_bob_(n_bob) {
    if (n_bob < 3) {
        throw std::invalid_argument("cycle scenario needs at least 3 Bob measurements, got " +
                                    std::to_string(n_bob));
    }
    contexts_.reserve(n_bob);
    for (int y = 0; y < n_bob; ++y) {
        contexts_.emplace_back(y, (y + 1) % n_bob);
    }
}

std::pair<int, int> Scenario::contexts_of(int y) const {
    if (y < 0 || y >= n_bob_) throw std::out_of_range("bob measurement index out of range");
    // Context c covers measurements (c, c+1): y appears in context y-1 (as
    // second member) and context y (as first member).
    return {(y + n_bob_ - 1) % n_bob_, y};
}

Scenario build_cycle_scenario(int n_bob) { return Scenario(n_bob); }

int CorrelatorIndex::position(const Scenario& s) const {
    const int n = s.n_bob();
    auto check = [](bool ok, const char* what) {
        if (!ok) throw std::out_of_range(what);
    };
    switch (kind) {
        case Kind::A:
            check(x >= 0 && x < 2, "alice input out of range");
            return x;
        case Kind::B:
            check(y >= 0 && y < n, "bob input out of range");
            return 2 + y;
        case Kind::AB:
            check(x >= 0 && x < 2, "alice input out of range");
            check(y >= 0 && y < n, "bob input out of range");
            return 2 + n + x * n + y;
        case Kind::BB:
            check(ctx >= 0 && ctx < n, "context out of range");
            return 2 + 3 * n + ctx;
        case Kind::ABB:
            check(x >= 0 && x < 2, "alice input out of range");
            check(ctx >= 0 && ctx < n, "context out of range");
            return 2 + 4 * n + x * n + ctx;
    }
    throw std::logic_error("unreachable");
}

CorrelatorIndex CorrelatorIndex::from_position(const Scenario& s, int pos) {
    const int n = s.n_bob();
    if (pos < 0 || pos >= s.correlator_dimension()) {
        throw std::out_of_range("correlator position out of range");
    }
    if (pos < 2) return alice(pos);
    pos -= 2;
    if (pos < n) return bob(pos);
    pos -= n;
    if (pos < 2 * n) return alice_bob(pos / n, pos % n);
    pos -= 2 * n;
    if (pos < n) return bob_pair(pos);
    pos -= n;
    return alice_bob_pair(pos / n, pos % n);
}

}  // namespace bellext
