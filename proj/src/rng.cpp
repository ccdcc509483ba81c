#include "bellext/rng.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace bellext {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 seeded_stream(std::uint64_t master, const std::vector<std::uint64_t>& tags) {
    std::uint64_t state = master;
    std::uint64_t mixed = splitmix64(state);
    for (std::uint64_t tag : tags) {
        state ^= splitmix64(state) + tag;
        mixed ^= splitmix64(state);
    }
    return std::mt19937_64(mixed);
}

std::mt19937_64 seeded_stream(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    return seeded_stream(master, std::vector<std::uint64_t>(tags));
}

Eigen::MatrixXcd haar_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = std::complex<double>(re, im) / std::sqrt(2.0);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
        const std::complex<double> d = r(k, k);
        const double mag = std::abs(d);
        q.col(k) *= (mag > 0 ? d / mag : std::complex<double>(1.0, 0.0));
    }
    return q;
}

Eigen::VectorXcd haar_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = std::complex<double>(re, im);
    }
    v /= v.norm();
    return v;
}

Eigen::MatrixXcd random_projective_observable(int dim, std::mt19937_64& rng) {
    const Eigen::VectorXcd u = haar_state(dim, rng);
    return 2.0 * (u * u.adjoint()) - Eigen::MatrixXcd::Identity(dim, dim);
}

}  // namespace bellext
