#include "doctest.h"
#include "listrec/codes.hpp"
#include "listrec/subspace.hpp"

using namespace listrec;
using namespace listrec::subspace;

namespace {

Poly xpow(std::uint32_t k, felem c = 1) {
    Poly p;
    p.c.assign(k + 1, 0);
    p.c[k] = c;
    return p;
}

}  // namespace

TEST_CASE("planted polynomial lies in the operator's solution space") {
    rng::Stream rng(101);
    PrimeField f(13);

    SUBCASE("derivative mode, ell=1, alpha=0, r=1") {
        auto p = mult_params(f, 3, 1, 13, 7);
        for (int trial = 0; trial < 20; ++trial) {
            Poly planted = codes::random_poly(f, 7, rng);
            auto S = codes::plant_channel(p, codes::encode(p, planted), Rat(0), 1, rng);
            auto op = find_operator_mult(S, 1, Rat(0), p);
            // operator identity A + B0 planted = 0 holds pointwise
            Poly lhs = poly::add(f, op.A, poly::mul(f, op.B[0], planted));
            CHECK(lhs.is_zero());
            auto space = solution_space(f, op, p.d);
            CHECK(space.contains(f, planted));
        }
    }
    SUBCASE("fold mode, ell=1, alpha=0, r=1") {
        auto p = frs_params(f, 3, 4, 5);
        for (int trial = 0; trial < 20; ++trial) {
            Poly planted = codes::random_poly(f, 5, rng);
            auto S = codes::plant_channel(p, codes::encode(p, planted), Rat(0), 1, rng);
            auto op = find_operator_frs(S, 1, Rat(0), p);
            auto space = solution_space(f, op, p.d);
            CHECK(space.contains(f, planted));
        }
    }
}

TEST_CASE("all-zero-codeword lists keep zero in the space") {
    PrimeField f(13);
    auto p = mult_params(f, 3, 1, 13, 7);
    rng::Stream rng(5);
    auto S = codes::plant_channel(p, codes::encode(p, Poly::zero()), Rat(0), 1, rng);
    auto op = find_operator_mult(S, 2, Rat(0), p);
    auto space = solution_space(f, op, p.d);
    CHECK(space.contains(f, Poly::zero()));
}

TEST_CASE("under-determined systems are rejected") {
    PrimeField f(5);
    auto p = mult_params(f, 2, 1, 5, 3);
    ListWord S;
    rng::Stream rng(6);
    S = codes::plant_channel(p, codes::encode(p, Poly{{1}}), Rat(0), 2, rng);
    CHECK_THROWS_AS(find_operator_mult(S, 1, Rat(0), p, /*strict=*/true), error);
}

TEST_CASE("vacuous constraints still produce a space") {
    PrimeField f(13);
    auto p = frs_params(f, 3, 4, 5);
    ListWord S;
    S.lists.resize(4);  // all positions empty
    auto op = find_operator_frs(S, 2, Rat(0), p);
    CHECK_FALSE(op.is_zero());
    auto space = solution_space(f, op, p.d);
    // nothing asserted about the space beyond well-formedness
    if (!space.empty)
        for (const auto& b : space.basis) CHECK(b.degree() <= 5);
}

TEST_CASE("planted containment and dim(V) <= r-1 across random FRS instances") {
    rng::Stream rng(102);
    // radius below the bound 1 - l/(r+1) - r/(r+1) * s/(s-r+1) * d/(sn)
    PrimeField f(41);
    std::uint32_t s = 8, n = 5, d = 10, r = 2, ell = 1;
    auto p = frs_params(f, s, n, d);
    Rat bound = Rat(1) - Rat(ell, r + 1) -
                Rat(r, r + 1) * Rat(s, s - r + 1) * Rat(d, std::int64_t(s) * n);
    REQUIRE(bound > Rat(0));
    for (int trial = 0; trial < 100; ++trial) {
        Poly planted = codes::random_poly(f, d, rng);
        Rat alpha(std::int64_t(rng.below(std::uint64_t(bound.num * n / bound.den) + 1)),
                  std::int64_t(n));
        auto S = codes::plant_channel(p, codes::encode(p, planted), alpha, ell, rng);
        auto op = find_operator_frs(S, r, alpha, p);
        auto space = solution_space(f, op, p.d);
        CHECK(space.contains(f, planted));
        CHECK(space.dim() <= r - 1);
    }
}

TEST_CASE("solution_space edge operators") {
    PrimeField f(5);
    SUBCASE("A=0, B0=1 gives the zero space") {
        LinOperator op{OpMode::derivative, 1, Poly::zero(), {Poly{{1}}}, 10};
        auto space = solution_space(f, op, 10);
        REQUIRE_FALSE(space.empty);
        CHECK(space.v0.is_zero());
        CHECK(space.dim() == 0);
    }
    SUBCASE("A=-1, B0=1 pins v0 = 1") {
        LinOperator op{OpMode::derivative, 1, Poly{{4}}, {Poly{{1}}}, 10};
        auto space = solution_space(f, op, 10);
        REQUIRE_FALSE(space.empty);
        CHECK(space.v0 == Poly{{1}});
        CHECK(space.dim() == 0);
    }
    SUBCASE("f^(1) = 0 has kernel spanned by q-th powers") {
        LinOperator op{OpMode::derivative, 2, Poly::zero(), {Poly::zero(), Poly{{1}}}, 12};
        auto space = solution_space(f, op, 12);
        REQUIRE_FALSE(space.empty);
        CHECK(space.dim() == 3);  // span{1, X^5, X^10}
        for (const auto& b : space.basis)
            CHECK(poly::hasse_derive(f, b, 1).is_zero());
        CHECK(space.contains(f, xpow(5)));
        CHECK(space.contains(f, xpow(10)));
        CHECK_FALSE(space.contains(f, xpow(3)));
    }
}

TEST_CASE("vanish_subspace drops dimension exactly on the q-th power module") {
    PrimeField f(7);
    std::uint32_t d = 35;
    std::vector<Poly> V;
    for (std::uint32_t i = 0; i * 7 < d; ++i) V.push_back(xpow(7 * i));
    REQUIRE(V.size() == 5);
    rng::Stream rng(103);
    for (std::uint32_t tau = 1; tau <= 4; ++tau) {
        auto pts = rng.sample_without_replacement(7, tau);
        std::vector<felem> points(pts.begin(), pts.end());
        auto W = vanish_subspace(f, V, points, VanishMode::mult_order, 6);
        CHECK(W.size() == V.size() - tau);
    }
    CHECK(vanish_subspace(f, V, {}, VanishMode::mult_order, 6).size() == 5);
}

TEST_CASE("coordinate dimension drop matches the distance bound on average") {
    // E_i[dim(W cap H_i)] <= t - delta for subspaces of codewords
    rng::Stream rng(104);
    PrimeField f(11);
    auto params = frs_params(f, 2, 5, 3);
    for (int trial = 0; trial < 25; ++trial) {
        std::uint32_t t = 1 + std::uint32_t(rng.below(3));
        std::vector<Poly> gens;
        for (std::uint32_t i = 0; i < t; ++i) gens.push_back(codes::random_poly(f, 3, rng));
        auto basis = degree_distinct_basis(f, gens, 3);
        t = std::uint32_t(basis.size());
        if (t == 0) continue;
        // minimum distance of the spanned code, exhaustively
        std::size_t n = params.n;
        std::uint64_t combos = 1;
        for (std::uint32_t i = 0; i < t; ++i) combos *= 11;
        std::size_t min_wt = n;
        for (std::uint64_t ci = 1; ci < combos; ++ci) {
            std::uint64_t v = ci;
            Poly p;
            for (std::uint32_t i = 0; i < t; ++i) {
                p = poly::add(f, p, poly::scale(f, basis[i], felem(v % 11)));
                v /= 11;
            }
            auto cw = codes::encode(params, p);
            std::size_t wt = 0;
            for (const auto& sym : cw.symbols)
                wt += std::any_of(sym.begin(), sym.end(), [](felem x) { return x != 0; });
            if (wt) min_wt = std::min(min_wt, wt);
        }
        // sum over coordinates of dim(W cap H_i)
        std::size_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto Wi = vanish_subspace(f, basis, {params.evalset[i]}, VanishMode::fold, 2);
            total += Wi.size();
        }
        // t - delta <= average  <=>  total <= t*n - min_wt
        CHECK(total <= std::size_t(t) * n - min_wt);
    }
}

TEST_CASE("is_xq_closed examples") {
    PrimeField f(5);
    std::uint32_t q = 5;
    SUBCASE("span{1, X^q} with d = q") {
        CHECK(is_xq_closed(f, {Poly{{1}}, xpow(q)}, q));
    }
    SUBCASE("zero space") { CHECK(is_xq_closed(f, {}, q)); }
    SUBCASE("span{1} with d = q is not closed") {
        CHECK_FALSE(is_xq_closed(f, {Poly{{1}}}, q));
    }
}

TEST_CASE("qdim_and_basis examples") {
    PrimeField f(5);
    SUBCASE("span{1, X^5}, d=5") {
        auto qb = qdim_and_basis(f, {Poly{{1}}, xpow(5)}, 5);
        CHECK(qb.qdim == 1);
        REQUIRE(qb.gens.size() == 1);
        CHECK(qb.gens[0] == Poly{{1}});
    }
    SUBCASE("zero space") {
        auto qb = qdim_and_basis(f, {}, 5);
        CHECK(qb.qdim == 0);
        CHECK(qb.gens.empty());
    }
    SUBCASE("span{1, X}, d=1") {
        auto qb = qdim_and_basis(f, {Poly{{1}}, Poly{{0, 1}}}, 1);
        CHECK(qb.qdim == 2);
    }
    SUBCASE("not closed is rejected") {
        CHECK_THROWS_AS(qdim_and_basis(f, {Poly{{1}}}, 5), error);
    }
}

TEST_CASE("random derivative operators give closed solution spaces") {
    // closure, qdim <= r-1, and the averaged dimension-drop bound; lists hold
    // two planted codewords so the solution spaces have positive dimension
    rng::Stream rng(105);
    PrimeField f(13);
    std::uint32_t q = 13, s = 6;
    int interesting = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::uint32_t r = 2 + std::uint32_t(rng.below(3));
        std::uint32_t d_max = r == 2 ? 32 : (r == 3 ? 34 : 26);  // keeps unknowns > rows
        std::uint32_t d = std::uint32_t(5 + rng.below(d_max - 4));
        auto params = mult_params(f, s, 1, q, d);
        Poly planted = codes::random_poly(f, d, rng);
        auto S = codes::plant_channel_adversarial(params, codes::encode(params, planted), Rat(0),
                                                  2, rng);
        auto op = find_operator_mult(S, r, Rat(0), params);
        auto space = solution_space(f, op, d);
        REQUIRE_FALSE(space.empty);
        CHECK(space.contains(f, planted));
        if (space.basis.empty()) continue;
        ++interesting;
        CHECK(is_xq_closed(f, space.basis, d));
        auto qb = qdim_and_basis(f, space.basis, d);
        CHECK(qb.qdim <= r - 1);
        // E_b dim(V cap H_b) <= (1 - 1/s) dim V, exhaustively over b
        if (d <= (s - qb.qdim) * q) {
            std::size_t total = 0;
            for (felem b = 0; b < q; ++b)
                total += vanish_subspace(f, space.basis, {b}, VanishMode::mult_order, s).size();
            CHECK(Rat(std::int64_t(total), q) <=
                  (Rat(1) - Rat(1, s)) * Rat(std::int64_t(space.dim())));
        }
        // intersections stay closed at random points
        std::vector<felem> pts;
        for (int j = 0; j < 2; ++j) pts.push_back(felem(rng.below(q)));
        auto inter = vanish_subspace(f, space.basis, pts, VanishMode::mult_order, s);
        CHECK(is_xq_closed(f, inter, d));
    }
    CHECK(interesting > 10);
}

TEST_CASE("fold-mode subspace design inequality") {
    // sum_i dim(W cap H_i) <= d t / (s - t + 1)
    rng::Stream rng(106);
    PrimeField f(13);
    std::uint32_t s = 6, d = 20;
    auto params = frs_params(f, s, 2, d);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint32_t t = 1 + std::uint32_t(rng.below(6));
        std::vector<Poly> gens;
        for (std::uint32_t i = 0; i < t; ++i) gens.push_back(codes::random_poly(f, d, rng));
        auto W = degree_distinct_basis(f, gens, d);
        t = std::uint32_t(W.size());
        if (t == 0 || t > s) continue;
        std::size_t total = 0;
        for (felem a : params.evalset)
            total += vanish_subspace(f, W, {a}, VanishMode::fold, s).size();
        CHECK(Rat(std::int64_t(total)) <= Rat(d, s - t + 1) * Rat(t));
    }
}
