#include "bbsig/rng.hpp"

#include <numeric>

namespace bbsig {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = seed;
    std::uint64_t x = splitmix64(state);
    state ^= a * 0x9e3779b97f4a7c15ULL;
    x ^= splitmix64(state);
    state ^= b * 0xc2b2ae3d27d4eb4fULL;
    x ^= splitmix64(state);
    return x;
}

std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

std::vector<Index> random_permutation(Index n, std::uint64_t seed) {
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    auto engine = make_engine(seed);
    for (Index i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<Index> pick(0, i);
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(engine))]);
    }
    return perm;
}

Vector gaussian_vector(Index n, std::uint64_t seed) {
    auto engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector draws(n);
    for (Index i = 0; i < n; ++i) draws[i] = normal(engine);
    return draws;
}

}  // namespace bbsig
