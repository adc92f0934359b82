#include "listrec/rng.hpp"

#include <algorithm>

#include "listrec/errors.hpp"

namespace listrec::rng {

std::uint64_t Stream::mix(std::uint64_t z) {
    // SplitMix64 finalizer.
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t Stream::below(std::uint64_t n) {
    require(n > 0, errc::invalid_argument, "rng.below(0)");
    if ((n & (n - 1)) == 0) return next() & (n - 1);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        std::uint64_t v = next();
        if (v < limit) return v % n;
    }
}

std::uint64_t Stream::below_except(std::uint64_t n, std::uint64_t excluded) {
    require(n >= 2, errc::invalid_argument, "rng.below_except needs n >= 2");
    std::uint64_t v = below(n - 1);
    return v >= excluded ? v + 1 : v;
}

std::vector<std::uint64_t> Stream::sample_without_replacement(std::uint64_t n, std::uint64_t k) {
    require(k <= n, errc::invalid_argument, "sample size exceeds population");
    // Floyd's algorithm; result sorted for determinism of downstream loops.
    std::vector<std::uint64_t> out;
    out.reserve(k);
    for (std::uint64_t j = n - k; j < n; ++j) {
        std::uint64_t v = below(j + 1);
        bool dup = false;
        for (std::uint64_t x : out) dup |= (x == v);
        out.push_back(dup ? j : v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Stream Stream::derive(std::string_view label) const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return Stream(mix(key_ ^ h));
}

Stream Stream::derive(std::uint64_t index) const {
    return Stream(mix(key_ ^ mix(index + 0x6A09E667F3BCC909ULL)));
}

}  // namespace listrec::rng
