#include "bellext/exact_rank.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace bellext {

namespace {

__int128 iabs(__int128 v) { return v < 0 ? -v : v; }

}  // namespace

int integer_matrix_rank(std::vector<std::vector<__int128>> m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    for (const auto& r : m) {
        if (static_cast<int>(r.size()) != cols) {
            throw std::invalid_argument("ragged matrix");
        }
    }

    int rank = 0;
    __int128 prev_pivot = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        // Partial pivoting by magnitude keeps the entries as small as the
        // fraction-free scheme allows.
        int pivot_row = -1;
        __int128 best = 0;
        for (int r = rank; r < rows; ++r) {
            if (iabs(m[r][col]) > best) {
                best = iabs(m[r][col]);
                pivot_row = r;
            }
        }
        if (pivot_row < 0) continue;
        std::swap(m[rank], m[pivot_row]);
        const __int128 pivot = m[rank][col];
        for (int r = rank + 1; r < rows; ++r) {
            const __int128 factor = m[r][col];
            for (int c = col; c < cols; ++c) {
                // Bareiss update: exact division by the previous pivot.
                m[r][c] = (pivot * m[r][c] - factor * m[rank][c]) / prev_pivot;
            }
        }
        prev_pivot = pivot;
        ++rank;
    }
    return rank;
}

int integer_affine_dimension(const std::vector<std::vector<long long>>& points) {
    if (points.empty()) return -1;
    if (points.size() == 1) return 0;
    const auto& base = points.front();
    std::vector<std::vector<__int128>> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != base.size()) throw std::invalid_argument("ragged point set");
        std::vector<__int128> row(base.size());
        for (std::size_t j = 0; j < base.size(); ++j) {
            row[j] = static_cast<__int128>(points[i][j]) - static_cast<__int128>(base[j]);
        }
        diffs.push_back(std::move(row));
    }
    return integer_matrix_rank(std::move(diffs));
}

}  // namespace bellext
