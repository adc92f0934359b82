#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "listrec/field.hpp"
#include "listrec/poly.hpp"
#include "listrec/rational.hpp"
#include "listrec/rng.hpp"

namespace listrec {

enum class Family : std::uint8_t { frs, mult };

// Parameters for one code instance. FRS and univariate multiplicity codes
// carry an explicit evaluation set; multivariate codes evaluate on all of
// F_q^m in lexicographic order.
struct CodeParams {
    Family family = Family::frs;
    PrimeField field{2, 1};
    std::uint32_t s = 1;  // folding parameter / multiplicity
    std::uint32_t m = 1;  // number of variables (1 for frs)
    std::uint32_t n = 1;  // block length (q^m when m >= 2)
    std::uint32_t d = 0;  // degree bound
    std::vector<felem> evalset;  // m == 1 only

    std::size_t symbol_arity() const;
    std::size_t block_length() const { return m >= 2 ? pow_n() : n; }
    std::vector<felem> point(std::size_t idx) const;
    std::size_t pow_n() const;
};

// Default evaluation set a_i = gamma^{s(i-1)}; a custom set must consist of
// distinct elements of { gamma^{si} : 0 <= i <= (q-1)/s - 1 }.
CodeParams frs_params(const PrimeField& f, std::uint32_t s, std::uint32_t n, std::uint32_t d);
CodeParams frs_params(const PrimeField& f, std::uint32_t s, std::uint32_t n, std::uint32_t d,
                      std::vector<felem> evalset);
// m == 1: n distinct evaluation points (default 0..n-1; whole field when n == q).
CodeParams mult_params(const PrimeField& f, std::uint32_t s, std::uint32_t m, std::uint32_t n,
                       std::uint32_t d);
CodeParams mult_params_univariate(const PrimeField& f, std::uint32_t s, std::uint32_t d,
                                  std::vector<felem> evalset);

// One alphabet symbol per domain point, in domain order.
struct Codeword {
    std::vector<std::vector<felem>> symbols;
};

// Per-position candidate sets, each deduplicated and of size <= ell.
struct ListWord {
    std::vector<std::vector<std::vector<felem>>> lists;
};

struct CodeStats {
    Rat rate;
    Rat distance;       // lower bound on relative distance
    bool rate_is_bound = false;  // true when rate is the m>=2 lower bound
};

namespace codes {

Codeword frs_encode(const CodeParams& p, const Poly& poly);
Codeword mult_encode(const CodeParams& p, const Poly& poly);
Codeword mult_encode(const CodeParams& p, const MultiPoly& poly);
// Dispatch on family (univariate message).
Codeword encode(const CodeParams& p, const Poly& poly);

CodeStats code_stats(const CodeParams& p);

// Fraction of positions whose symbol is missing from the list.
Rat dist(const Codeword& c, const ListWord& s);
Rat dist(const Codeword& a, const Codeword& b);

// Corrupts exactly floor(alpha*n) positions (chosen without replacement):
// those lists exclude the true symbol; all others include it. Every list is
// padded with distinct uniform decoy symbols to size exactly ell.
ListWord plant_channel(const CodeParams& p, const Codeword& c, const Rat& alpha,
                       std::uint32_t ell, rng::Stream& rng);
// Same shape, but decoys are drawn from the symbols of ell-1 random
// codewords, stressing list-size bounds.
ListWord plant_channel_adversarial(const CodeParams& p, const Codeword& c, const Rat& alpha,
                                   std::uint32_t ell, rng::Stream& rng);

Poly random_poly(const PrimeField& f, std::uint32_t d, rng::Stream& rng);
MultiPoly random_multipoly(const PrimeField& f, std::uint32_t m, std::uint32_t d,
                           rng::Stream& rng);

// Messages of the code enumerated as base-q digit strings; index -> poly.
Poly message_poly(const PrimeField& f, std::uint32_t d, std::uint64_t index);
std::uint64_t message_index(const PrimeField& f, const Poly& p);
std::uint64_t message_count(const CodeParams& p);

// Line-oriented text format. Header "q s m n d"; then one position per
// line, symbols as comma-separated integers, list entries separated by '|'.
std::string serialize(const CodeParams& p, const Codeword& c);
std::string serialize(const CodeParams& p, const ListWord& w);
std::pair<CodeParams, Codeword> parse_codeword(Family family, const std::string& text);
std::pair<CodeParams, ListWord> parse_listword(Family family, const std::string& text);

}  // namespace codes
}  // namespace listrec
