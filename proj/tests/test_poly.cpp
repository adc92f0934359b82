#include "doctest.h"
#include "listrec/codes.hpp"
#include "listrec/poly.hpp"
#include "listrec/rng.hpp"

using namespace listrec;
using namespace listrec::poly;

namespace {

// Pascal-triangle oracle for binomials mod q.
felem binom_oracle(const PrimeField& f, unsigned n, unsigned k) {
    std::vector<std::vector<felem>> pas(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        pas[i].assign(i + 1, 1);
        for (unsigned j = 1; j < i; ++j) pas[i][j] = f.add(pas[i - 1][j - 1], pas[i - 1][j]);
    }
    return k <= n ? pas[n][k] : 0;
}

MultiPoly mp_from(std::uint32_t m, std::vector<std::pair<std::vector<std::uint32_t>, felem>> ts) {
    MultiPoly p;
    p.m = m;
    for (auto& [e, c] : ts) p.terms[e] = c;
    return p;
}

}  // namespace

TEST_CASE("binomials match the Pascal oracle") {
    for (std::uint32_t q : {2u, 5u, 11u}) {
        PrimeField f(q);
        for (unsigned n = 0; n <= 40; ++n)
            for (unsigned k = 0; k <= n; ++k) CHECK(binom_mod(f, n, k) == binom_oracle(f, n, k));
    }
}

TEST_CASE("hasse derivative examples") {
    PrimeField f2(2);
    Poly x3{{0, 0, 0, 1}};
    // C(3,2) = 3 = 1 mod 2, so (X^3)^(2) = X
    CHECK(hasse_derive(f2, x3, 2) == Poly{{0, 1}});
    CHECK(hasse_derive(f2, x3, 0) == x3);

    PrimeField f5(5);
    auto q = mp_from(2, {{{1, 1}, 1}});  // X1 X2
    auto dq = mp_hasse_derive(f5, q, {1, 0});
    CHECK(dq == mp_from(2, {{{0, 1}, 1}}));  // X2
}

TEST_CASE("hasse composition identity") {
    // p^(i)^(j) = C(i+j, i) p^(i+j)
    rng::Stream rng(21);
    PrimeField f(7);
    for (int trial = 0; trial < 200; ++trial) {
        Poly p = codes::random_poly(f, 1 + std::uint32_t(rng.below(20)), rng);
        std::uint64_t i = rng.below(4), j = rng.below(4);
        Poly lhs = hasse_derive(f, hasse_derive(f, p, i), j);
        Poly rhs = scale(f, hasse_derive(f, p, i + j), binom_mod(f, i + j, i));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("eval_order examples") {
    PrimeField f5(5);
    Poly p{{1, 0, 1}};  // X^2 + 1
    // P(2)=5=0, P'(2)=4, second Hasse derivative = 1
    CHECK(eval_order(f5, p, 2, 3) == std::vector<felem>{0, 4, 1});
    CHECK(eval_order(f5, Poly::zero(), 3, 4) == std::vector<felem>{0, 0, 0, 0});
    CHECK(eval_order(f5, p, 3, 1) == std::vector<felem>{eval(f5, p, 3)});
}

TEST_CASE("restrict_line examples") {
    PrimeField f5(5);
    auto q = mp_from(2, {{{1, 0}, 1}, {{0, 1}, 1}});  // X1 + X2
    CHECK(restrict_line(f5, q, {0, 0}, {1, 1}) == Poly{{0, 2}});  // 2T
    auto c = mp_from(2, {{{0, 0}, 3}});
    CHECK(restrict_line(f5, c, {1, 4}, {2, 2}) == Poly{{3}});
    CHECK(restrict_line(f5, q, {1, 2}, {0, 0}) == Poly{{3}});  // constant Q(x)
}

TEST_CASE("restrict_symbol examples") {
    PrimeField f5(5);
    // m=2, s=2: indices (0,0), (1,0), (0,1)
    std::vector<felem> z{1, 2, 3};
    CHECK(restrict_symbol(f5, z, {1, 0}, 2, 2) == std::vector<felem>{1, 2});
    CHECK(restrict_symbol(f5, z, {0, 0}, 2, 2) == std::vector<felem>{1, 0});
    CHECK(restrict_symbol(f5, z, {2, 1}, 2, 2) == std::vector<felem>{1, 2});  // 2*2+3*1 = 7 = 2
}

TEST_CASE("derivative restriction commutes with line restriction") {
    // eval_order(restrict_line(Q,x,b), 0, s) == restrict_symbol(eval_order(Q,x,s), b)
    rng::Stream rng(42);
    PrimeField f(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::uint32_t m = 2 + std::uint32_t(rng.below(2));
        std::uint32_t stilde = 1 + std::uint32_t(rng.below(5));
        MultiPoly q = codes::random_multipoly(f, m, std::uint32_t(rng.below(5)), rng);
        std::vector<felem> x(m), b(m);
        for (auto& v : x) v = felem(rng.below(7));
        for (auto& v : b) v = felem(rng.below(7));
        Poly line = restrict_line(f, q, x, b);
        auto lhs = eval_order(f, line, 0, stilde);
        auto rhs = restrict_symbol(f, mp_eval_order(f, q, x, stilde), b, m, stilde);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("wronskian examples") {
    PrimeField f5(5);
    CHECK(wronskian_det(f5, {Poly{{1}}, Poly{{0, 1}}}) == Poly{{1}});
    // {X, X^2}: det [[X, X^2], [1, 2X]] = X^2
    CHECK(wronskian_det(f5, {Poly{{0, 1}}, Poly{{0, 0, 1}}}) == Poly{{0, 0, 1}});
    // {1, X^q}: Hasse derivative of X^q is C(q,1) X^{q-1} = 0
    Poly xq;
    xq.c.assign(6, 0);
    xq.c[5] = 1;
    CHECK(wronskian_det(f5, {Poly{{1}}, xq}).is_zero());
}

TEST_CASE("wronskian nonzero for distinct degrees mod q") {
    rng::Stream rng(33);
    for (std::uint32_t q : {5u, 7u, 11u}) {
        PrimeField f(q);
        for (int trial = 0; trial < 200; ++trial) {
            std::uint32_t t = 1 + std::uint32_t(rng.below(std::min(q - 1, 5u)));
            // t distinct residues mod q, lifted by random multiples of q
            auto res = rng.sample_without_replacement(q, t);
            std::vector<Poly> fs;
            for (auto r : res) {
                std::uint32_t deg = std::uint32_t(r + q * rng.below(3));
                Poly p = codes::random_poly(f, deg, rng);
                if (p.degree() < std::int64_t(deg)) {
                    p.c.resize(deg + 1, 0);
                    p.c[deg] = 1 + felem(rng.below(q - 1));
                }
                fs.push_back(std::move(p));
            }
            CHECK_FALSE(wronskian_det(f, fs).is_zero());
        }
    }
}

TEST_CASE("deriv_indices ordering") {
    auto idx = deriv_indices(2, 3);
    std::vector<std::vector<std::uint32_t>> want = {{0, 0}, {1, 0}, {0, 1},
                                                    {2, 0}, {1, 1}, {0, 2}};
    CHECK(idx == want);
    CHECK(deriv_index_count(2, 3) == 6);
    CHECK(deriv_indices(1, 4).size() == 4);
}

TEST_CASE("divmod and compose_affine") {
    PrimeField f(11);
    rng::Stream rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Poly a = codes::random_poly(f, std::uint32_t(rng.below(12)), rng);
        Poly b = codes::random_poly(f, std::uint32_t(rng.below(6)), rng);
        if (b.is_zero()) continue;
        auto [q, r] = divmod(f, a, b);
        CHECK(add(f, mul(f, q, b), r) == a);
        CHECK(r.degree() < b.degree());

        felem c0 = felem(rng.below(11)), c1 = felem(rng.below(11)), x = felem(rng.below(11));
        Poly comp = compose_affine(f, a, c0, c1);
        CHECK(eval(f, comp, x) == eval(f, a, f.add(c0, f.mul(c1, x))));
    }
}
