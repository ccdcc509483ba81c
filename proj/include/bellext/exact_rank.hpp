#pragma once

#include <cstdint>
#include <vector>

namespace bellext {

// Exact rank of an integer matrix via fraction-free (Bareiss) Gaussian
// elimination. Intermediate entries are minors of the input, so for the
// matrices handled here (entries in {-2,...,2}, <= 27 columns) Hadamard's
// bound keeps everything comfortably inside 128-bit integers.
int integer_matrix_rank(std::vector<std::vector<__int128>> m);

// Dimension of the affine hull of a set of integer points (rank of the
// difference matrix against the first point). Empty input -> -1.
int integer_affine_dimension(const std::vector<std::vector<long long>>& points);

}  // namespace bellext
