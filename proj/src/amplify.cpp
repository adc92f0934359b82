#include "listrec/amplify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace listrec::amplify {

BipartiteGraph sample_expander(std::uint32_t N, std::uint32_t D, rng::Stream& rng) {
    require(N >= 1 && D >= 1, errc::invalid_argument, "N, D must be positive");
    require(D <= N, errc::invalid_argument, "need D <= N");
    BipartiteGraph g;
    g.N = N;
    g.D = D;
    g.match.resize(D);
    for (std::uint32_t r = 0; r < D; ++r) {
        std::vector<std::uint32_t> perm(N);
        for (std::uint32_t i = 0; i < N; ++i) perm[i] = i;
        rng.shuffle(perm);
        g.match[r] = std::move(perm);
    }
    return g;
}

BipartiteGraph complete_graph(std::uint32_t N) {
    BipartiteGraph g;
    g.N = N;
    g.D = N;
    g.match.resize(N);
    for (std::uint32_t r = 0; r < N; ++r) {
        g.match[r].resize(N);
        for (std::uint32_t i = 0; i < N; ++i) g.match[r][i] = (i + r) % N;
    }
    return g;
}

SamplerReport check_sampler(const BipartiteGraph& g, const Rat& R, const Rat& eps,
                            const Rat& xi, std::uint32_t trials, rng::Stream& rng) {
    require(R > Rat(0) && R < Rat(1) && eps > Rat(0) && eps < Rat(1) && xi > Rat(0) &&
                xi < Rat(1),
            errc::invalid_argument, "parameters must lie in (0,1)");
    std::uint64_t y_size = std::uint64_t(((R + Rat(4) * eps) * Rat(g.N)).ceil());
    require(y_size <= g.N, errc::invalid_argument, "target set larger than the side");
    Rat threshold = (R + Rat(3) * eps) * Rat(g.D);
    SamplerReport report;
    report.max_bad_fraction = Rat(0);
    for (std::uint32_t t = 0; t < trials; ++t) {
        auto y = rng.sample_without_replacement(g.N, y_size);
        std::vector<bool> in_y(g.N, false);
        for (auto v : y) in_y[v] = true;
        std::uint32_t bad = 0;
        for (std::uint32_t i = 0; i < g.N; ++i) {
            std::uint32_t hits = 0;
            for (std::uint32_t r = 0; r < g.D; ++r) hits += in_y[g.match[r][i]];
            if (Rat(hits) < threshold) ++bad;
        }
        Rat frac(bad, g.N);
        if (frac > report.max_bad_fraction) report.max_bad_fraction = frac;
    }
    report.pass = report.max_bad_fraction <= xi;
    return report;
}

std::vector<BlockWord> ael_transform(const std::vector<BlockWord>& blocks,
                                     const BipartiteGraph& g, FoldDirection dir) {
    require(blocks.size() == g.N, errc::dimension_mismatch, "block count mismatch");
    for (const auto& b : blocks)
        require(b.size() == g.D, errc::dimension_mismatch, "block arity mismatch");
    std::vector<BlockWord> out(g.N, BlockWord(g.D));
    for (std::uint32_t i = 0; i < g.N; ++i)
        for (std::uint32_t r = 0; r < g.D; ++r) {
            std::uint32_t j = g.match[r][i];
            if (dir == FoldDirection::fold)
                out[j][r] = blocks[i][r];
            else
                out[i][r] = blocks[j][r];
        }
    return out;
}

std::vector<std::uint64_t> brute_force_list_recover(const InnerCodeTable& table,
                                                    const std::vector<std::vector<felem>>& lists,
                                                    const Rat& alpha) {
    require(std::uint64_t(table.size()) * table.n0 <= (1u << 24), errc::table_too_large,
            "inner table exceeds the brute-force guard");
    require(lists.size() == table.n0, errc::dimension_mismatch, "list length mismatch");
    std::int64_t max_bad = (alpha * Rat(std::int64_t(table.n0))).floor();
    std::vector<std::uint64_t> out;
    for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
        const auto& cw = table.words[idx];
        std::int64_t bad = 0;
        for (std::uint32_t p = 0; p < table.n0 && bad <= max_bad; ++p) {
            bool hit = false;
            for (felem v : lists[p]) hit |= (v == cw[p]);
            bad += !hit;
        }
        if (bad <= max_bad) out.push_back(idx);
    }
    return out;
}

InnerCodeTable build_inner_table(const CodeParams& inner, std::uint32_t n0) {
    InnerCodeTable table;
    table.q = inner.field.q();
    std::uint64_t count = codes::message_count(inner);
    std::size_t flat = inner.block_length() * inner.symbol_arity();
    require(n0 >= flat, errc::invalid_argument, "n0 smaller than the inner codeword");
    table.n0 = n0;
    require(count * n0 <= (1u << 24), errc::table_too_large,
            "inner table exceeds the brute-force guard");
    table.words.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly msg = codes::message_poly(inner.field, inner.d, idx);
        Codeword cw = codes::encode(inner, msg);
        std::vector<felem> word;
        word.reserve(n0);
        for (const auto& sym : cw.symbols) word.insert(word.end(), sym.begin(), sym.end());
        word.resize(n0, 0);  // zero padding up to the block multiple
        table.words.push_back(std::move(word));
    }
    return table;
}

std::vector<OuterMessage> ael_list_recover(const BlockListWord& S, const BipartiteGraph& g,
                                           const InnerCodeTable& inner, const Rat& alpha0,
                                           std::uint32_t ell1, const OuterDecoder& outer,
                                           const MessageEncoder& reencode, const Rat& radius) {
    require(S.size() == g.N, errc::dimension_mismatch, "block list count mismatch");
    require(std::uint64_t(inner.size()) * inner.n0 <= (1u << 24), errc::table_too_large,
            "inner table exceeds the brute-force guard");
    require(inner.n0 % g.D == 0, errc::dimension_mismatch, "D must divide n0");
    std::uint64_t total_symbols = std::uint64_t(g.N) * g.D;
    require(total_symbols % inner.n0 == 0, errc::dimension_mismatch,
            "blocks do not tile inner codewords");
    std::size_t n1 = std::size_t(total_symbols / inner.n0);

    // unfold the lists: T_{i,r} = slot-r projections of block match[r][i]
    std::vector<std::vector<std::set<felem>>> T(g.N, std::vector<std::set<felem>>(g.D));
    for (std::uint32_t i = 0; i < g.N; ++i)
        for (std::uint32_t r = 0; r < g.D; ++r) {
            std::uint32_t j = g.match[r][i];
            for (const auto& beta : S[j])
                if (r < beta.size()) T[i][r].insert(beta[r]);
        }

    // brute-force list recover each inner block
    std::vector<std::vector<std::uint64_t>> message_lists(n1);
    std::uint32_t blocks_per_word = inner.n0 / g.D;
    for (std::size_t t = 0; t < n1; ++t) {
        std::vector<std::vector<felem>> lists(inner.n0);
        for (std::uint32_t b = 0; b < blocks_per_word; ++b) {
            std::size_t block = t * blocks_per_word + b;
            for (std::uint32_t r = 0; r < g.D; ++r)
                lists[b * g.D + r].assign(T[block][r].begin(), T[block][r].end());
        }
        auto cands = brute_force_list_recover(inner, lists, alpha0);
        if (cands.size() > ell1) cands.resize(ell1);
        message_lists[t] = std::move(cands);
    }
    auto out = outer(message_lists);
    if (!reencode) return out;
    std::vector<OuterMessage> kept;
    for (auto& msg : out) {
        auto folded = ael_transform(reencode(msg), g, FoldDirection::fold);
        std::int64_t bad = 0;
        for (std::uint32_t i = 0; i < g.N; ++i) {
            bool hit = false;
            for (const auto& beta : S[i]) hit |= (beta == folded[i]);
            bad += !hit;
        }
        if (Rat(bad, g.N) <= radius) kept.push_back(std::move(msg));
    }
    return kept;
}

std::string serialize_graph(const BipartiteGraph& g) {
    std::ostringstream os;
    os << g.N << ' ' << g.D << '\n';
    for (std::uint32_t i = 0; i < g.N; ++i) {
        for (std::uint32_t r = 0; r < g.D; ++r) {
            if (r) os << ' ';
            os << g.match[r][i];
        }
        os << '\n';
    }
    return os.str();
}

BipartiteGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    BipartiteGraph g;
    require(bool(is >> g.N >> g.D), errc::io_error, "bad graph header");
    g.match.assign(g.D, std::vector<std::uint32_t>(g.N, 0));
    for (std::uint32_t i = 0; i < g.N; ++i)
        for (std::uint32_t r = 0; r < g.D; ++r) {
            std::uint32_t v;
            require(bool(is >> v), errc::io_error, "truncated graph file");
            require(v < g.N, errc::io_error, "neighbor index out of range");
            g.match[r][i] = v;
        }
    return g;
}

}  // namespace listrec::amplify
