#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace bellext {

// Measurement scenario: Alice has two dichotomic measurements, Bob has
// n dichotomic measurements whose compatibility graph is the n-cycle.
// Contexts are the ordered edges (y, y+1 mod n). Outcomes are +/-1 for
// every measurement.
class Scenario {
  public:
    static constexpr int kAliceInputs = 2;

    explicit Scenario(int n_bob);

    int n_bob() const { return n_bob_; }
    int n_contexts() const { return n_bob_; }
    int alice_inputs() const { return kAliceInputs; }

    // Ordered context pairs, cycle order: (0,1), (1,2), ..., (n-1,0).
    const std::vector<std::pair<int, int>>& contexts() const { return contexts_; }

    // Both contexts containing measurement y: the edge ending at y and
    // the edge starting at y, in that order.
    std::pair<int, int> contexts_of(int y) const;

    // Number of independent correlators: 2 + 6n.
    int correlator_dimension() const { return 2 + 6 * n_bob_; }

    bool operator==(const Scenario& o) const { return n_bob_ == o.n_bob_; }

  private:
    int n_bob_;
    std::vector<std::pair<int, int>> contexts_;
};

Scenario build_cycle_scenario(int n_bob);

// Position of a correlator inside the canonical behavior vector.
// Canonical order (matching the bundled inequality table):
//   <A_x>            x = 0,1
//   <B_y>            y = 0..n-1
//   <A_x B_y>        x-major
//   <B_y1 B_y2>      contexts in cycle order
//   <A_x B_y1 B_y2>  x-major over contexts
struct CorrelatorIndex {
    enum class Kind { A, B, AB, BB, ABB };

    Kind kind;
    int x = -1;    // Alice input, when present
    int y = -1;    // Bob input, when present
    int ctx = -1;  // context id, when present

    static CorrelatorIndex alice(int x) { return {Kind::A, x, -1, -1}; }
    static CorrelatorIndex bob(int y) { return {Kind::B, -1, y, -1}; }
    static CorrelatorIndex alice_bob(int x, int y) { return {Kind::AB, x, y, -1}; }
    static CorrelatorIndex bob_pair(int ctx) { return {Kind::BB, -1, -1, ctx}; }
    static CorrelatorIndex alice_bob_pair(int x, int ctx) { return {Kind::ABB, x, -1, ctx}; }

    int position(const Scenario& s) const;
    static CorrelatorIndex from_position(const Scenario& s, int pos);

    bool operator==(const CorrelatorIndex& o) const {
        return kind == o.kind && x == o.x && y == o.y && ctx == o.ctx;
    }
};

}  // namespace bellext
