#include <algorithm>

#include "doctest.h"
#include "listrec/local.hpp"

using namespace listrec;
using namespace listrec::local;

namespace {

// small relaxed configuration used throughout: q=13, m=2, s=2, d=13
LocalCfg desk_cfg() {
    LocalCfg cfg;
    cfg.params = mult_params(PrimeField(13), 2, 2, 0, 13);
    cfg.ell = 1;
    cfg.alpha = Rat(1, 169);
    cfg.alpha_prime = Rat(3, 20);
    cfg.s_star = 2;
    cfg.U_size = 13;
    cfg.L_est = 2;
    cfg.K_param = 9;
    cfg.relaxed = true;
    cfg.line_opts.strict = false;
    cfg.line_opts.r = 1;
    cfg.line_opts.tau = 2;
    cfg.line_opts.repetitions = 8;
    cfg.rm_alpha = Rat(1, 3);
    cfg.rm_slice_radius = Rat(1, 5);
    cfg.rm_combine_radius = Rat(1, 5);
    cfg.self_correct_radius = Rat(3, 20);
    return cfg;
}

MultiPoly random_q(const LocalCfg& cfg, rng::Stream& rng) {
    return codes::random_multipoly(cfg.params.field, cfg.params.m, cfg.params.d, rng);
}

}  // namespace

TEST_CASE("recover_candidates finds the true advice at zero error") {
    auto cfg = desk_cfg();
    rng::Stream rng(401);
    int hits = 0, trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        auto trial_rng = rng.derive(trial);
        MultiPoly Q = random_q(cfg, trial_rng);
        auto cw = codes::mult_encode(cfg.params, Q);
        auto S = codes::plant_channel(cfg.params, cw, Rat(0), cfg.ell, trial_rng);
        ListOracle oracle(S, cfg.params);
        std::vector<felem> a{felem(trial_rng.below(13)), felem(trial_rng.below(13))};
        auto Z = recover_candidates(oracle, a, cfg.s_star, cfg, trial_rng);
        auto want = poly::mp_eval_order(cfg.params.field, Q, a, cfg.s_star);
        bool found = std::find(Z.begin(), Z.end(), want) != Z.end();
        hits += found;
        CHECK(Z.size() <= 2 * cfg.K_param * cfg.L_est);
        // query accounting: at most |U|^m * q positions
        CHECK(oracle.queries() <= std::uint64_t(cfg.U_size) * cfg.U_size * 13);
    }
    CHECK(hits >= 18);
}

TEST_CASE("recover_candidates on empty lists returns nothing") {
    auto cfg = desk_cfg();
    ListWord S;
    S.lists.resize(169);
    ListOracle oracle(S, cfg.params);
    rng::Stream rng(402);
    auto Z = recover_candidates(oracle, {3, 7}, cfg.s_star, cfg, rng);
    CHECK(Z.empty());
}

TEST_CASE("oracle machine returns the true symbol under correct advice") {
    auto cfg = desk_cfg();
    rng::Stream rng(403);
    int hits = 0, total = 0;
    for (int trial = 0; trial < 10; ++trial) {
        auto trial_rng = rng.derive(trial);
        MultiPoly Q = random_q(cfg, trial_rng);
        auto cw = codes::mult_encode(cfg.params, Q);
        auto S = codes::plant_channel(cfg.params, cw, Rat(0), cfg.ell, trial_rng);
        ListOracle oracle(S, cfg.params);
        std::vector<felem> a{felem(trial_rng.below(13)), felem(trial_rng.below(13))};
        auto z = poly::mp_eval_order(cfg.params.field, Q, a, cfg.s_star);
        LineCache cache;
        for (int k = 0; k < 10; ++k) {
            std::vector<felem> x{felem(trial_rng.below(13)), felem(trial_rng.below(13))};
            if (x == a) continue;
            std::uint64_t before = oracle.queries();
            auto got = oracle_eval(oracle, a, z, x, cfg, &cache);
            ++total;
            if (got && *got == cw.symbols[oracle.index_of(x)]) ++hits;
            // a fresh line costs at most q+1 reads, a cached one only 1
            CHECK(oracle.queries() - before <= 14);
        }
    }
    CHECK(hits >= (total * 9) / 10);
}

TEST_CASE("oracle machine outputs bot on bad advice or ambiguity") {
    auto cfg = desk_cfg();
    rng::Stream rng(404);
    MultiPoly Q = random_q(cfg, rng);
    auto cw = codes::mult_encode(cfg.params, Q);
    const PrimeField& f = cfg.params.field;

    SUBCASE("advice with no consistent line polynomial") {
        auto S = codes::plant_channel(cfg.params, cw, Rat(0), cfg.ell, rng);
        ListOracle oracle(S, cfg.params);
        std::vector<felem> a{2, 5}, x{7, 11};
        auto z = poly::mp_eval_order(f, Q, a, cfg.s_star);
        z[0] = f.add(z[0], 1);  // corrupt the constant term
        auto got = oracle_eval(oracle, a, z, x, cfg);
        CHECK_FALSE(got.has_value());
    }
    SUBCASE("x == a is degenerate") {
        auto S = codes::plant_channel(cfg.params, cw, Rat(0), cfg.ell, rng);
        ListOracle oracle(S, cfg.params);
        std::vector<felem> a{2, 5};
        auto z = poly::mp_eval_order(f, Q, a, cfg.s_star);
        CHECK_FALSE(oracle_eval(oracle, a, z, a, cfg).has_value());
    }
    SUBCASE("two list entries with equal restriction give bot") {
        std::vector<felem> a{2, 5}, x{7, 11};
        std::vector<felem> bstar{f.sub(a[0], x[0]), f.sub(a[1], x[1])};
        auto S = codes::plant_channel(cfg.params, cw, Rat(0), cfg.ell, rng);
        // craft a second entry at x whose restriction along bstar matches:
        // indices (0,0), (1,0), (0,1); add (0, b2, -b1) which restricts to 0
        std::size_t xi = 0;
        for (std::uint32_t j = 0; j < 2; ++j) xi = xi * 13 + x[j];
        auto y0 = cw.symbols[xi];
        std::vector<felem> y1 = y0;
        y1[1] = f.add(y1[1], bstar[1]);
        y1[2] = f.sub(y1[2], bstar[0]);
        REQUIRE(y1 != y0);
        S.lists[xi].push_back(y1);
        std::sort(S.lists[xi].begin(), S.lists[xi].end());
        ListOracle oracle(S, cfg.params);
        auto z = poly::mp_eval_order(f, Q, a, cfg.s_star);
        CHECK_FALSE(oracle_eval(oracle, a, z, x, cfg).has_value());
    }
}

TEST_CASE("self correction is exact without corruption") {
    auto cfg = desk_cfg();
    rng::Stream rng(405);
    MultiPoly Q = random_q(cfg, rng);
    auto cw = codes::mult_encode(cfg.params, Q);
    SymbolOracle word = [&](const std::vector<felem>& pt) {
        std::size_t idx = 0;
        for (std::uint32_t j = 0; j < 2; ++j) idx = idx * 13 + pt[j];
        return std::optional<std::vector<felem>>(cw.symbols[idx]);
    };
    for (int k = 0; k < 20; ++k) {
        std::vector<felem> x{felem(rng.below(13)), felem(rng.below(13))};
        std::size_t idx = 0;
        for (std::uint32_t j = 0; j < 2; ++j) idx = idx * 13 + x[j];
        CHECK(self_correct(word, x, cfg, rng) == cw.symbols[idx]);
    }
}

TEST_CASE("self correction survives delta/10 corruption") {
    auto cfg = desk_cfg();
    rng::Stream rng(406);
    MultiPoly Q = random_q(cfg, rng);
    auto cw = codes::mult_encode(cfg.params, Q);
    Rat delta = cfg.delta();
    std::size_t bad = std::size_t((delta * Rat(169) / Rat(10)).floor());
    auto corrupted_pos = rng.sample_without_replacement(169, bad);
    auto corrupted = cw;
    for (auto i : corrupted_pos)
        for (auto& v : corrupted.symbols[i]) v = felem(rng.below(13));
    SymbolOracle word = [&](const std::vector<felem>& pt) {
        std::size_t idx = 0;
        for (std::uint32_t j = 0; j < 2; ++j) idx = idx * 13 + pt[j];
        return std::optional<std::vector<felem>>(corrupted.symbols[idx]);
    };
    SelfCorrector sc(word, cfg);
    int hits = 0, trials = 60;
    for (int k = 0; k < trials; ++k) {
        std::vector<felem> x{felem(rng.below(13)), felem(rng.below(13))};
        std::size_t idx = 0;
        for (std::uint32_t j = 0; j < 2; ++j) idx = idx * 13 + x[j];
        hits += (sc.correct(x, rng) == cw.symbols[idx]);
    }
    CHECK(hits >= (trials * 2) / 3);
}

TEST_CASE("local list recovery end to end at desk scale") {
    auto cfg = desk_cfg();
    rng::Stream rng(407);
    int good_runs = 0, runs = 10;
    for (int run = 0; run < runs; ++run) {
        auto run_rng = rng.derive(run);
        MultiPoly Q = random_q(cfg, run_rng);
        auto cw = codes::mult_encode(cfg.params, Q);
        auto S = codes::plant_channel(cfg.params, cw, cfg.alpha, cfg.ell, run_rng);
        auto decoders = local_list_recover(S, cfg, run_rng);
        CHECK(decoders.size() <= 2 * cfg.K_param * cfg.L_est);
        bool some_decoder_good = false;
        for (auto& dec : decoders) {
            int point_hits = 0;
            for (int k = 0; k < 5; ++k) {
                std::vector<felem> x{felem(run_rng.below(13)), felem(run_rng.below(13))};
                std::size_t idx = 0;
                for (std::uint32_t j = 0; j < 2; ++j) idx = idx * 13 + x[j];
                auto sym = dec.decode(x);
                point_hits += (sym == cw.symbols[idx]);
                CHECK(dec.last_queries() <= dec.query_budget());
            }
            some_decoder_good |= (point_hits >= 4);
        }
        good_runs += some_decoder_good;
    }
    CHECK(good_runs >= 7);
}

TEST_CASE("decoders are deterministic under a fixed seed") {
    auto cfg = desk_cfg();
    rng::Stream setup(408);
    MultiPoly Q = random_q(cfg, setup);
    auto cw = codes::mult_encode(cfg.params, Q);
    auto S = codes::plant_channel(cfg.params, cw, cfg.alpha, cfg.ell, setup);

    auto run_once = [&]() {
        rng::Stream rng(4242);
        auto decoders = local_list_recover(S, cfg, rng);
        std::vector<std::vector<felem>> outs;
        for (auto& dec : decoders)
            for (felem x0 = 0; x0 < 3; ++x0) outs.push_back(dec.decode({x0, 1}));
        return outs;
    };
    CHECK(run_once() == run_once());
}

TEST_CASE("truthful advice restricts to the line evaluation") {
    auto cfg = desk_cfg();
    rng::Stream rng(409);
    const PrimeField& f = cfg.params.field;
    for (int k = 0; k < 50; ++k) {
        MultiPoly Q = random_q(cfg, rng);
        std::vector<felem> a{felem(rng.below(13)), felem(rng.below(13))};
        std::vector<felem> b{felem(rng.below(13)), felem(rng.below(13))};
        if (b[0] == 0 && b[1] == 0) continue;
        auto z = poly::mp_eval_order(f, Q, a, cfg.s_star);
        Poly line = poly::restrict_line(f, Q, a, b);
        CHECK(poly::restrict_symbol(f, z, b, 2, cfg.s_star) ==
              poly::eval_order(f, line, 0, cfg.s_star));
    }
}

TEST_CASE("strict mode rejects desk-scale parameters") {
    auto cfg = desk_cfg();
    cfg.relaxed = false;
    ListWord S;
    S.lists.resize(169);
    rng::Stream rng(410);
    CHECK_THROWS_AS(local_list_recover(S, cfg, rng), error);
}
