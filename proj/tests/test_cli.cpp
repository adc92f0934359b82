#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
    std::string cmd = std::string(LISTREC_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    if (exit_code) *exit_code = WEXITSTATUS(rc);
    return out;
}

}  // namespace

TEST_CASE("cli encode -> corrupt -> list-recover round trip") {
    std::string dir = "cli_test_tmp";
    std::remove((dir + "_cw.txt").c_str());
    int rc = 0;
    run_cli("encode --family frs --q 41 --s 8 --n 5 --d 10 --random --seed 5 --out " + dir +
                "_cw.txt",
            &rc);
    REQUIRE(rc == 0);
    run_cli("corrupt --family frs --in " + dir + "_cw.txt --alpha 1/5 --ell 1 --seed 9 --out " +
                dir + "_lw.txt",
            &rc);
    REQUIRE(rc == 0);
    std::string out = run_cli("list-recover --family frs --in " + dir +
                                  "_lw.txt --mode frs --eps 1/4 --alpha 1/5 --ell 1 --r 2 "
                                  "--tau 4 --repetitions 25 --seed 3",
                              &rc);
    CHECK(rc == 0);
    CHECK(out.find("recovered") != std::string::npos);
    CHECK(out.find("recovered 0") == std::string::npos);
    std::remove((dir + "_cw.txt").c_str());
    std::remove((dir + "_lw.txt").c_str());
}

TEST_CASE("cli randomized commands repeat byte-identically") {
    int rc = 0;
    auto a = run_cli("ael --N 32 --D 4 --seed 12", &rc);
    REQUIRE(rc == 0);
    auto b = run_cli("ael --N 32 --D 4 --seed 12", &rc);
    CHECK(a == b);
    CHECK(a.find("32 4") == 0);
}

TEST_CASE("cli verify subcommand runs a fast criterion") {
    int rc = 0;
    auto out = run_cli("verify --only 5", &rc);
    CHECK(rc == 0);
    CHECK(out.find("criterion  5 [PASS]") != std::string::npos);
    CHECK(out.find("acceptance: 1/1") != std::string::npos);
}

TEST_CASE("cli bench smoke") {
    int rc = 0;
    auto out = run_cli("bench", &rc);
    CHECK(rc == 0);
    CHECK(out.find("frs_encode") != std::string::npos);
}

TEST_CASE("cli run executes a config file") {
    std::string cfg_path = "cli_test_run.cfg";
    {
        std::ofstream out(cfg_path);
        out << "[code]\nfamily=mult\nq=13\ns=3\nm=1\nn=13\nd=7\n"
               "[channel]\nalpha=1/13\nell=1\n"
               "[decoder]\nkind=mult-whole\ndelta=1/4\nstrict=0\nr=1\ntau=2\n"
               "repetitions=10\nalpha=1/13\n"
               "[run]\ntrials=4\nseed=44\n";
    }
    int rc = 0;
    auto a = run_cli("run --config " + cfg_path, &rc);
    REQUIRE(rc == 0);
    CHECK(a.find("summary trials=4") != std::string::npos);
    auto b = run_cli("run --config " + cfg_path, &rc);
    CHECK(a == b);
    std::remove(cfg_path.c_str());
}
