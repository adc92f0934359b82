#include "doctest.h"
#include "listrec/experiment.hpp"

using namespace listrec;

namespace {

const char* kFrsConfig =
    "[code]\nfamily=frs\nq=41\ns=8\nn=5\nd=10\n"
    "[channel]\nalpha=1/5\nell=1\n"
    "[decoder]\nkind=frs\neps=1/4\nstrict=0\nr=2\ntau=4\nrepetitions=25\nalpha=1/5\n"
    "[run]\ntrials=8\nseed=12\n";

}  // namespace

TEST_CASE("config parsing") {
    auto cfg = parse_experiment_config(kFrsConfig);
    CHECK(cfg.family == Family::frs);
    CHECK(cfg.q == 41);
    CHECK(cfg.alpha == Rat(1, 5));
    CHECK(cfg.opts.r == 2u);
    CHECK(cfg.trials == 8);
    CHECK_THROWS_AS(parse_experiment_config("bogus_key=1\n"), error);
    CHECK_THROWS_AS(parse_experiment_config("[code]\nq\n"), error);
}

TEST_CASE("invalid configs name the failing precondition") {
    // n > (q-1)/s
    const char* bad =
        "[code]\nfamily=frs\nq=5\ns=2\nn=3\nd=1\n[decoder]\nkind=frs\n[run]\ntrials=1\nseed=1\n";
    try {
        run_experiment(parse_experiment_config(bad));
        FAIL("expected config error");
    } catch (const error& e) {
        CHECK(e.code() == errc::config_invalid);
        CHECK(std::string(e.what()).find("(q-1)/s") != std::string::npos);
    }
}

TEST_CASE("experiment runs are deterministic and mostly successful") {
    auto cfg = parse_experiment_config(kFrsConfig);
    auto r1 = run_experiment(cfg);
    auto r2 = run_experiment(cfg);
    CHECK(r1.report == r2.report);
    REQUIRE(r1.records.size() == 8);
    int successes = 0;
    for (const auto& rec : r1.records) successes += rec.success;
    CHECK(successes >= 7);
    CHECK(r1.report.find("summary trials=8") != std::string::npos);
}

TEST_CASE("zero trials yield an undefined-rate summary") {
    auto cfg = parse_experiment_config(kFrsConfig);
    cfg.trials = 0;
    auto r = run_experiment(cfg);
    CHECK(r.records.empty());
    CHECK(r.report == "summary trials=0 rate=undefined mean_list_size=undefined\n");
}

TEST_CASE("timings flag adds fields without breaking the record structure") {
    auto cfg = parse_experiment_config(kFrsConfig);
    cfg.trials = 1;
    cfg.timings = true;
    auto r = run_experiment(cfg);
    CHECK(r.report.find("decode_ms=") != std::string::npos);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("1/4") == Rat(1, 4));
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK(parse_rational("3") == Rat(3));
    CHECK(parse_rational("6/8") == Rat(3, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), error);
    CHECK_THROWS_AS(parse_rational(""), error);
}

TEST_CASE("rational floors and ceilings") {
    CHECK(Rat(303, 4).floor_strict() == 75);   // 75.75
    CHECK(Rat(76).floor_strict() == 75);       // integers step down
    CHECK(Rat(303, 4).ceil() == 76);
    CHECK(Rat(76).ceil() == 76);
    CHECK((Rat(1) - Rat(1, 3)).floor() == 0);
    CHECK(Rat(-5, 2).floor() == -3);
    CHECK(Rat(-5, 2).ceil() == -2);
}
