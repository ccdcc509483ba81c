#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace bellext {

// splitmix64 step; the standard constants.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives an independent, reproducible generator from a master seed and a
// list of integer tags (seed index, grid index, bisection step, ...). The
// same (master, tags) always yields the same stream, regardless of what
// other streams were drawn.
std::mt19937_64 seeded_stream(std::uint64_t master, const std::vector<std::uint64_t>& tags);
std::mt19937_64 seeded_stream(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

// Haar-distributed unitary via QR of a complex Ginibre matrix with the
// R-diagonal phase fix.
Eigen::MatrixXcd haar_unitary(int dim, std::mt19937_64& rng);

// Haar-distributed pure state vector.
Eigen::VectorXcd haar_state(int dim, std::mt19937_64& rng);

// Random rank-1 projective dichotomic observable 2|u><u| - 1 with Haar |u>.
Eigen::MatrixXcd random_projective_observable(int dim, std::mt19937_64& rng);

}  // namespace bellext
