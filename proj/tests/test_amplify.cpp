#include <map>

#include "doctest.h"
#include "listrec/amplify.hpp"
#include "listrec/prune.hpp"

using namespace listrec;
using namespace listrec::amplify;

TEST_CASE("sampled expanders are D-regular") {
    rng::Stream rng(501);
    for (int seed = 0; seed < 10; ++seed) {
        auto g = sample_expander(64, 8, rng);
        std::vector<int> right_deg(64, 0);
        for (std::uint32_t r = 0; r < 8; ++r) {
            std::vector<bool> seen(64, false);
            for (std::uint32_t i = 0; i < 64; ++i) {
                CHECK_FALSE(seen[g.match[r][i]]);  // each matching is a permutation
                seen[g.match[r][i]] = true;
                right_deg[g.match[r][i]]++;
            }
        }
        for (int dgr : right_deg) CHECK(dgr == 8);
    }
    CHECK_THROWS_AS(sample_expander(4, 5, rng), error);
}

TEST_CASE("complete multigraph covers the whole right side") {
    auto g = complete_graph(16);
    for (std::uint32_t i = 0; i < 16; ++i) {
        std::vector<bool> seen(16, false);
        for (std::uint32_t r = 0; r < 16; ++r) seen[g.match[r][i]] = true;
        for (bool s : seen) CHECK(s);
    }
    // perfect sampler: zero bad vertices for any Y of the target size
    rng::Stream rng(502);
    auto report = check_sampler(g, Rat(1, 2), Rat(1, 20), Rat(1, 10), 20, rng);
    CHECK(report.pass);
    CHECK(report.max_bad_fraction == Rat(0));
}

TEST_CASE("random matching unions certify at the acceptance parameters") {
    rng::Stream rng(509);
    int passes = 0;
    for (int seed = 0; seed < 10; ++seed) {
        auto g = sample_expander(256, 64, rng);
        auto report = check_sampler(g, Rat(1, 2), Rat(1, 10), Rat(1, 10), 20, rng);
        passes += report.pass;
    }
    CHECK(passes >= 9);
}

TEST_CASE("a single matching is a terrible sampler") {
    rng::Stream rng(503);
    auto g = sample_expander(128, 1, rng);
    auto report = check_sampler(g, Rat(1, 2), Rat(1, 20), Rat(1, 10), 20, rng);
    CHECK_FALSE(report.pass);
    // bad fraction about 1 - (R + 4 eps) = 0.3
    CHECK(report.max_bad_fraction > Rat(1, 5));
}

TEST_CASE("fold is the identity on the identity multigraph") {
    BipartiteGraph g;
    g.N = 4;
    g.D = 3;
    g.match.assign(3, {0, 1, 2, 3});
    std::vector<BlockWord> blocks(4, BlockWord(3));
    rng::Stream rng(504);
    for (auto& blk : blocks)
        for (auto& sym : blk) sym = felem(rng.below(7));
    CHECK(ael_transform(blocks, g, FoldDirection::fold) == blocks);
}

TEST_CASE("unfold inverts fold and preserves the symbol multiset") {
    rng::Stream rng(505);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = sample_expander(16, 4, rng);
        std::vector<BlockWord> blocks(16, BlockWord(4));
        std::map<felem, int> multiset;
        for (auto& blk : blocks)
            for (auto& sym : blk) {
                sym = felem(rng.below(5));
                multiset[sym]++;
            }
        auto folded = ael_transform(blocks, g, FoldDirection::fold);
        std::map<felem, int> folded_multiset;
        for (auto& blk : folded)
            for (auto& sym : blk) folded_multiset[sym]++;
        CHECK(folded_multiset == multiset);
        CHECK(ael_transform(folded, g, FoldDirection::unfold) == blocks);
    }
}

TEST_CASE("brute force inner recovery") {
    InnerCodeTable table;
    table.q = 2;
    table.n0 = 2;
    table.words = {{0, 0}, {1, 1}};
    // lists ({0},{0,1}) at radius 0 keep only 00
    auto out = brute_force_list_recover(table, {{0}, {0, 1}}, Rat(0));
    CHECK(out == std::vector<std::uint64_t>{0});
    // radius 1 returns the whole table
    CHECK(brute_force_list_recover(table, {{0}, {0, 1}}, Rat(1)).size() == 2);
    // matches the sorted pipeline output on a tiny FRS instance
    PrimeField f(5);
    auto params = frs_params(f, 2, 2, 1);
    auto inner = build_inner_table(params, 4);
    CHECK(inner.size() == 25);
    CHECK(inner.words[0] == std::vector<felem>{0, 0, 0, 0});
}

TEST_CASE("inner table padding") {
    PrimeField f(5);
    auto params = frs_params(f, 2, 2, 1);
    auto inner = build_inner_table(params, 6);
    CHECK(inner.n0 == 6);
    for (const auto& w : inner.words) {
        CHECK(w.size() == 6);
        CHECK(w[4] == 0);
        CHECK(w[5] == 0);
    }
}

TEST_CASE("ael end to end with erased blocks") {
    rng::Stream rng(507);
    const std::uint32_t D = 8;
    PrimeField f(17);
    auto inner_params = frs_params(f, 2, 4, 0);  // constants, table of 17
    auto inner = build_inner_table(inner_params, 8);
    auto outer_params = frs_params(f, 1, 16, 7);  // RS, messages of 8 symbols

    const std::uint32_t N2 = 16;
    auto g2 = sample_expander(N2, D, rng);
    auto encode2 = [&](const OuterMessage& msg) {
        Poly p;
        p.c = msg;
        p.trim();
        auto ocw = codes::encode(outer_params, p);
        std::vector<BlockWord> blocks(N2, BlockWord(D));
        for (std::uint32_t t = 0; t < 16; ++t)
            for (std::uint32_t r = 0; r < D; ++r)
                blocks[t][r] = inner.words[ocw.symbols[t][0]][r];
        return blocks;
    };
    OuterDecoder outer = [&](const std::vector<std::vector<std::uint64_t>>& lists) {
        ListWord S;
        S.lists.resize(lists.size());
        for (std::size_t t = 0; t < lists.size(); ++t)
            for (auto idx : lists[t]) S.lists[t].push_back({felem(idx)});
        rng::Stream orng(1111);
        RecoverOptions opts;
        opts.strict = false;
        opts.r = 1;
        opts.tau = 2;
        opts.repetitions = 12;
        opts.alpha = Rat(1, 8);
        std::vector<OuterMessage> msgs;
        for (auto& p : prune::list_recover_frs(S, outer_params, Rat(1, 4), 4, orng, opts)) {
            OuterMessage m(8, 0);
            for (std::size_t k = 0; k < p.c.size(); ++k) m[k] = p.c[k];
            msgs.push_back(std::move(m));
        }
        return msgs;
    };

    int recovered = 0;
    for (int seed = 0; seed < 10; ++seed) {
        auto trial_rng = rng.derive(seed);
        OuterMessage msg(8);
        for (auto& v : msg) v = felem(trial_rng.below(17));
        auto folded = ael_transform(encode2(msg), g2, FoldDirection::fold);
        BlockListWord S(N2);
        for (std::uint32_t i = 0; i < N2; ++i) S[i].push_back(folded[i]);
        // corrupt one block entirely
        std::size_t victim = std::size_t(trial_rng.below(N2));
        for (auto& sym : S[victim][0]) sym = felem(trial_rng.below(17));
        auto out = ael_list_recover(S, g2, inner, Rat(1, 4), 4, outer, encode2, Rat(1, 8));
        bool found = false;
        for (const auto& m : out) found |= (m == msg);
        recovered += found;
        // post-filter: nothing beyond the radius
        for (const auto& m : out) {
            auto refolded = ael_transform(encode2(m), g2, FoldDirection::fold);
            std::int64_t bad = 0;
            for (std::uint32_t i = 0; i < N2; ++i) bad += !(S[i][0] == refolded[i]);
            CHECK(Rat(bad, N2) <= Rat(1, 8));
        }
    }
    CHECK(recovered >= 9);
}

TEST_CASE("graph serialization round trip") {
    rng::Stream rng(508);
    auto g = sample_expander(12, 3, rng);
    auto g2 = parse_graph(serialize_graph(g));
    CHECK(g2.N == g.N);
    CHECK(g2.D == g.D);
    CHECK(g2.match == g.match);
    CHECK(serialize_graph(g2) == serialize_graph(g));
}
