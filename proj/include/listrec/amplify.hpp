#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "listrec/codes.hpp"
#include "listrec/rational.hpp"
#include "listrec/rng.hpp"

namespace listrec {

// D-regular bipartite multigraph on N+N vertices given as a union of D
// perfect matchings; slot r of left vertex i is matched to slot r of right
// vertex match[r][i]. The slot order defines the symbol redistribution.
struct BipartiteGraph {
    std::uint32_t N = 0;
    std::uint32_t D = 0;
    std::vector<std::vector<std::uint32_t>> match;  // match[r][i] = right neighbor

    std::uint32_t left_neighbor(std::uint32_t i, std::uint32_t r) const { return match[r][i]; }
};

// Explicit inner code: codeword index == message index; symbols are single
// field elements.
struct InnerCodeTable {
    std::uint32_t q = 2;          // alphabet size
    std::uint32_t n0 = 1;         // (padded) codeword length
    std::vector<std::vector<felem>> words;

    std::size_t size() const { return words.size(); }
};

// One block = D inner-alphabet symbols.
using BlockWord = std::vector<felem>;
// Per-block candidate lists.
using BlockListWord = std::vector<std::vector<BlockWord>>;

struct SamplerReport {
    Rat max_bad_fraction;  // worst fraction of poorly-expanding left vertices
    bool pass = false;
};

namespace amplify {

// Union of D uniformly random perfect matchings.
BipartiteGraph sample_expander(std::uint32_t N, std::uint32_t D, rng::Stream& rng);
// D = N cyclic matchings; every left vertex sees every right vertex.
BipartiteGraph complete_graph(std::uint32_t N);

// Empirical check of the sampling property: over `trials` random right sets
// Y with |Y| = ceil((R+4eps)N), at most a xi fraction of left vertices may
// see fewer than (R+3eps)D neighbors inside Y.
SamplerReport check_sampler(const BipartiteGraph& g, const Rat& R, const Rat& eps,
                            const Rat& xi, std::uint32_t trials, rng::Stream& rng);

// Redistributes block symbols along graph edges; fold sends slot r of left
// block i to slot r of right block match[r][i], unfold inverts it.
enum class FoldDirection : std::uint8_t { fold, unfold };
std::vector<BlockWord> ael_transform(const std::vector<BlockWord>& blocks,
                                     const BipartiteGraph& g, FoldDirection dir);

// Exactly { c in table : dist(c, lists) <= alpha }, as codeword indices.
std::vector<std::uint64_t> brute_force_list_recover(const InnerCodeTable& table,
                                                    const std::vector<std::vector<felem>>& lists,
                                                    const Rat& alpha);

// Inner table built from a code instance: message index -> flattened scalar
// codeword, zero-padded to n0 symbols.
InnerCodeTable build_inner_table(const CodeParams& inner, std::uint32_t n0);

// Outer messages are coefficient strings; the outer decoder maps the
// per-position candidate lists of inner-message indices to a message list.
using OuterMessage = std::vector<felem>;
using OuterDecoder =
    std::function<std::vector<OuterMessage>(const std::vector<std::vector<std::uint64_t>>&)>;
// Re-encode callback used by the output distance filter.
using MessageEncoder = std::function<std::vector<BlockWord>(const OuterMessage&)>;

// Decoding through the fold: unfold the block lists into per-symbol lists
// T_{i,r}, brute-force list recover each inner block at radius alpha0 with
// list cap ell1, then hand the message lists to the outer decoder. When a
// re-encoder is given, messages whose folded codeword misses more than a
// `radius` fraction of the block lists are dropped.
std::vector<OuterMessage> ael_list_recover(const BlockListWord& S, const BipartiteGraph& g,
                                           const InnerCodeTable& inner, const Rat& alpha0,
                                           std::uint32_t ell1, const OuterDecoder& outer,
                                           const MessageEncoder& reencode = {},
                                           const Rat& radius = Rat(1));

// Header (N, D), then N lines of D right-indices.
std::string serialize_graph(const BipartiteGraph& g);
BipartiteGraph parse_graph(const std::string& text);

}  // namespace amplify
}  // namespace listrec
