#pragma once

#include <cstdint>
#include <string>

#include "csr/model.hpp"
#include "csr/oracle.hpp"

namespace csr {

/// Deterministic splitmix64 stream; the only randomness source in the
/// toolkit, so equal seeds give byte-identical instances on every platform.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    double real() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
    bool chance(double p) { return real() < p; }
};

enum class Family { random, coloring, lhr, boolean2, kkclique };

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

struct GenParams {
    Family family = Family::random;
    int n = 6;
    int k = 3;
    int arity = 2;
    double density = 0.5;
    bool weighted = false;
    std::uint64_t seed = 1;
    std::uint64_t budget = 4096;
    int retry_cap = 64;
};

/// Deterministic per seed. Source/target are the lexicographically first and
/// last solutions; constraint tables are resampled up to retry_cap times
/// when no solution exists.
ReconfigInstance generate(const GenParams& params);

} // namespace csr
