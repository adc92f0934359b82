#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace listrec::rng {

// Counter-based generator: output i of a stream is a pure function of
// (key, i), so independent streams can be derived by label or index and
// parallel/serial runs agree bit for bit.
class Stream {
  public:
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

    // Uniform in [0, n) by rejection; exact, no modulo bias.
    std::uint64_t below(std::uint64_t n);

    // Uniform element of [0, n) excluding the given value (requires n >= 2).
    std::uint64_t below_except(std::uint64_t n, std::uint64_t excluded);

    // k distinct values from [0, n), in sorted order.
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k);

    // In-place Fisher-Yates.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent stream for a named substream.
    Stream derive(std::string_view label) const;
    // Independent stream for an indexed substream (per trial, per round, ...).
    Stream derive(std::uint64_t index) const;

    static std::uint64_t mix(std::uint64_t z);

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace listrec::rng
