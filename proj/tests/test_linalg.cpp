#include "doctest.h"
#include "listrec/linalg.hpp"
#include "listrec/rng.hpp"

using namespace listrec;

TEST_CASE("solve consistent and inconsistent systems") {
    PrimeField f(7);
    Mat m(2, 2);
    m.at(0, 0) = 1; m.at(0, 1) = 2;
    m.at(1, 0) = 3; m.at(1, 1) = 1;
    auto sol = linalg::solve(f, m, {5, 4});
    REQUIRE(sol.consistent);
    CHECK(sol.kernel.empty());
    // verify by substitution
    CHECK(f.add(f.mul(1, sol.particular[0]), f.mul(2, sol.particular[1])) == 5);
    CHECK(f.add(f.mul(3, sol.particular[0]), f.mul(1, sol.particular[1])) == 4);

    Mat bad(2, 1);
    bad.at(0, 0) = 1;
    bad.at(1, 0) = 1;
    CHECK_FALSE(linalg::solve(f, bad, {1, 2}).consistent);
}

TEST_CASE("kernel vectors satisfy the homogeneous system") {
    PrimeField f(13);
    rng::Stream rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t rows = 3 + rng.below(4), cols = rows + 1 + rng.below(4);
        Mat m(rows, cols);
        for (auto& v : m.a) v = felem(rng.below(13));
        auto kernel = linalg::nullspace(f, m);
        CHECK(kernel.size() >= cols - rows);  // more unknowns than equations
        for (const auto& k : kernel) {
            for (std::size_t r = 0; r < rows; ++r) {
                felem acc = 0;
                for (std::size_t c = 0; c < cols; ++c) acc = f.add(acc, f.mul(m.at(r, c), k[c]));
                CHECK(acc == 0);
            }
        }
        CHECK(linalg::rank(f, m) + kernel.size() == cols);
    }
}

TEST_CASE("in_span and row_basis") {
    PrimeField f(5);
    std::vector<std::vector<felem>> basis = {{1, 2, 0}, {0, 1, 1}};
    CHECK(linalg::in_span(f, basis, {1, 3, 1}));   // sum of the two
    CHECK_FALSE(linalg::in_span(f, basis, {0, 0, 1}));
    CHECK(linalg::in_span(f, {}, {0, 0, 0}));
    CHECK_FALSE(linalg::in_span(f, {}, {1, 0, 0}));

    auto rb = linalg::row_basis(f, {{1, 2, 0}, {2, 4, 0}, {0, 1, 1}});
    CHECK(rb.size() == 2);
}
