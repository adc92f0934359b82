#include <algorithm>

#include "doctest.h"
#include "listrec/codes.hpp"
#include "listrec/rm_grid.hpp"

using namespace listrec;
using namespace listrec::rm_grid;

namespace {

std::vector<std::pair<felem, std::vector<felem>>> whole_field_points(const PrimeField& f) {
    std::vector<std::pair<felem, std::vector<felem>>> pts;
    for (felem x = 0; x < f.q(); ++x) pts.push_back({x, {}});
    return pts;
}

bool contains_poly(const std::vector<Poly>& list, const Poly& p) {
    return std::find(list.begin(), list.end(), p) != list.end();
}

// all tuples of t m-variate polynomials of total degree <= stilde within
// radius alpha of the instance lists
std::vector<std::vector<MultiPoly>> rm_brute_force(const GridInstance& inst) {
    auto monos = deriv_indices(inst.m, inst.stilde + 1);
    std::uint64_t per_poly = 1;
    for (std::size_t i = 0; i < monos.size(); ++i) per_poly *= inst.field.q();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < inst.t; ++i) total *= per_poly;
    std::size_t n = inst.grid_size();
    std::int64_t max_bad = (inst.alpha * Rat(std::int64_t(n))).floor();
    std::vector<std::vector<MultiPoly>> out;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t v = code;
        std::vector<MultiPoly> tuple(inst.t);
        for (std::uint32_t c = 0; c < inst.t; ++c) {
            tuple[c].m = inst.m;
            for (const auto& e : monos) {
                felem coef = felem(v % inst.field.q());
                v /= inst.field.q();
                if (coef) tuple[c].terms[e] = coef;
            }
        }
        std::int64_t bad = 0;
        std::vector<std::uint32_t> upos(inst.m, 0);
        for (std::size_t idx = 0; idx < n && bad <= max_bad; ++idx) {
            std::size_t w = idx;
            for (std::uint32_t j = inst.m; j-- > 0;) {
                upos[j] = std::uint32_t(w % inst.U.size());
                w /= inst.U.size();
            }
            std::vector<felem> pt(inst.m);
            for (std::uint32_t j = 0; j < inst.m; ++j) pt[j] = inst.U[upos[j]];
            std::vector<felem> val(inst.t);
            for (std::uint32_t c = 0; c < inst.t; ++c)
                val[c] = poly::mp_eval(inst.field, tuple[c], pt);
            bool hit = false;
            for (const auto& y : inst.lists[idx]) hit |= (y == val);
            bad += !hit;
        }
        if (bad <= max_bad) out.push_back(std::move(tuple));
    }
    return out;
}

bool same_tuple_set(std::vector<std::vector<MultiPoly>> a, std::vector<std::vector<MultiPoly>> b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        bool found = false;
        for (const auto& y : b) found |= (x == y);
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sudan recovers a planted polynomial with no errors") {
    PrimeField f(13);
    rng::Stream rng(301);
    for (int trial = 0; trial < 20; ++trial) {
        Poly planted = codes::random_poly(f, 2, rng);
        auto pts = whole_field_points(f);
        for (auto& [x, list] : pts) list.push_back(poly::eval(f, planted, x));
        auto out = sudan_list_recover(f, pts, 2, Rat(0));
        CHECK(contains_poly(out, planted));
    }
}

TEST_CASE("sudan finds two fully planted lines") {
    PrimeField f(17);
    Poly l1{{3, 2}}, l2{{5, 9}};
    auto pts = whole_field_points(f);
    for (auto& [x, list] : pts) {
        list.push_back(poly::eval(f, l1, x));
        list.push_back(poly::eval(f, l2, x));
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    auto out = sudan_list_recover(f, pts, 1, Rat(0));
    CHECK(contains_poly(out, l1));
    CHECK(contains_poly(out, l2));
    // brute force over all q^2 lines
    std::vector<Poly> truth;
    for (felem a = 0; a < 17; ++a)
        for (felem b = 0; b < 17; ++b) {
            Poly cand{{a, b}};
            cand.trim();
            bool ok = true;
            for (auto& [x, list] : pts) {
                felem v = poly::eval(f, cand, x);
                ok &= std::find(list.begin(), list.end(), v) != list.end();
            }
            if (ok) truth.push_back(cand);
        }
    CHECK(out.size() == truth.size());
    for (const auto& p : truth) CHECK(contains_poly(out, p));
}

TEST_CASE("sudan output is sound on adversarial lists") {
    PrimeField f(13);
    auto pts = whole_field_points(f);
    for (auto& [x, list] : pts) list.push_back(f.pow(x, 5));
    auto out = sudan_list_recover(f, pts, 1, Rat(2, 13));
    for (const auto& p : out) {
        std::size_t agree = 0;
        for (auto& [x, list] : pts) agree += (poly::eval(f, p, x) == list[0]);
        CHECK(agree >= 11);
    }
}

TEST_CASE("sudan agreement precondition is enforced") {
    PrimeField f(5);
    auto pts = whole_field_points(f);
    for (auto& [x, list] : pts) {
        list.push_back(x);
        list.push_back(f.add(x, 1));
    }
    // n = 10 pairs, agreement 5 < 2 sqrt(10)
    CHECK_THROWS_AS(sudan_list_recover(f, pts, 1, Rat(0)), error);
}

TEST_CASE("extension-field sudan and the big-field round trip") {
    // scalar recovery over K of phi(f) == phi applied to vector recovery of f
    PrimeField f(7);
    ExtField K = build_extension(7, 2);
    rng::Stream rng(302);
    for (int trial = 0; trial < 10; ++trial) {
        Poly p0 = codes::random_poly(f, 1, rng), p1 = codes::random_poly(f, 1, rng);
        GridInstance inst;
        inst.field = f;
        inst.U.resize(7);
        for (felem u = 0; u < 7; ++u) inst.U[u] = u;
        inst.m = 1;
        inst.stilde = 1;
        inst.t = 2;
        inst.ell = 1;
        inst.alpha = Rat(0);
        inst.K = 9;
        inst.lists.resize(7);
        std::vector<std::pair<fvec, std::vector<fvec>>> ext_pts;
        for (felem u = 0; u < 7; ++u) {
            std::vector<felem> val{poly::eval(f, p0, u), poly::eval(f, p1, u)};
            inst.lists[u].push_back(val);
            ext_pts.push_back({K.from_base(u), {K.phi(val)}});
        }
        auto vec_out = vector_rm_list_recover(inst);
        auto ext_out = sudan_list_recover_ext(K, ext_pts, 1, Rat(0));
        REQUIRE(vec_out.size() == ext_out.size());
        for (const auto& kp : ext_out) {
            std::vector<Poly> split(2);
            for (std::size_t k = 0; k < kp.size(); ++k) {
                fvec coords = K.phi_inv(kp[k]);
                split[0].c.push_back(coords[0]);
                split[1].c.push_back(coords[1]);
            }
            split[0].trim();
            split[1].trim();
            bool found = false;
            for (const auto& tuple : vec_out) {
                bool eq = true;
                for (int c = 0; c < 2; ++c) {
                    MultiPoly want;
                    want.m = 1;
                    for (std::size_t k = 0; k < split[c].c.size(); ++k)
                        if (split[c].c[k]) want.terms[{std::uint32_t(k)}] = split[c].c[k];
                    eq &= (tuple[c] == want);
                }
                found |= eq;
            }
            CHECK(found);
        }
    }
}

TEST_CASE("vector RM equals exhaustive enumeration on tiny grids") {
    PrimeField f(5);
    rng::Stream rng(303);
    for (std::uint32_t t : {1u, 2u}) {
        for (int trial = 0; trial < 8; ++trial) {
            GridInstance inst;
            inst.field = f;
            inst.U = {0, 1, 2, 3, 4};
            inst.m = 2;
            inst.stilde = 1;
            inst.t = t;
            inst.ell = 1;
            inst.alpha = Rat(0);
            inst.K = 9;
            inst.slice_radius = Rat(0);
            inst.combine_radius = Rat(0);
            inst.lists.resize(25);
            if (trial % 2 == 0) {
                std::vector<MultiPoly> planted(t);
                for (auto& p : planted) p = codes::random_multipoly(f, 2, 1, rng);
                for (std::size_t idx = 0; idx < 25; ++idx) {
                    std::vector<felem> pt{felem(idx / 5), felem(idx % 5)};
                    std::vector<felem> val(t);
                    for (std::uint32_t c = 0; c < t; ++c)
                        val[c] = poly::mp_eval(f, planted[c], pt);
                    inst.lists[idx].push_back(val);
                }
            } else {
                for (std::size_t idx = 0; idx < 25; ++idx) {
                    std::vector<felem> val(t);
                    for (auto& v : val) v = felem(rng.below(5));
                    inst.lists[idx].push_back(val);
                }
            }
            auto out = vector_rm_list_recover(inst);
            auto truth = rm_brute_force(inst);
            CHECK(same_tuple_set(out, truth));
        }
    }
}

TEST_CASE("constant tuple present in every list is recovered") {
    PrimeField f(13);
    GridInstance inst;
    inst.field = f;
    inst.U.resize(13);
    for (felem u = 0; u < 13; ++u) inst.U[u] = u;
    inst.m = 2;
    inst.stilde = 1;
    inst.t = 1;
    inst.ell = 2;
    inst.alpha = Rat(0);
    inst.K = 9;
    inst.slice_radius = Rat(0);
    inst.combine_radius = Rat(0);
    inst.lists.resize(169);
    rng::Stream rng(304);
    for (auto& list : inst.lists) {
        list.push_back({3});
        list.push_back({felem(rng.below_except(13, 3))});
    }
    auto out = vector_rm_list_recover(inst);
    MultiPoly c3;
    c3.m = 2;
    c3.terms[{0, 0}] = 3;
    bool found = false;
    for (const auto& tuple : out) found |= (tuple[0] == c3);
    CHECK(found);
}

TEST_CASE("johnson regime: list size capped at 2 K ell and output sound") {
    PrimeField f(31);
    rng::Stream rng(305);
    for (int trial = 0; trial < 20; ++trial) {
        GridInstance inst;
        inst.field = f;
        inst.U.resize(18);
        for (felem u = 0; u < 18; ++u) inst.U[u] = u;
        inst.m = 2;
        inst.stilde = 1;
        inst.t = 1;
        inst.ell = 1;
        inst.alpha = Rat(1, 3);
        inst.K = 9;
        inst.strict = true;
        inst.slice_radius = Rat(1, 9);
        inst.combine_radius = Rat(1, 9);
        inst.lists.resize(inst.grid_size());
        MultiPoly planted = codes::random_multipoly(f, 2, 1, rng);
        for (std::size_t idx = 0; idx < inst.lists.size(); ++idx) {
            std::vector<felem> pt{inst.U[idx / 18], inst.U[idx % 18]};
            if (rng.below(10) == 0)
                inst.lists[idx].push_back({felem(rng.below(31))});
            else
                inst.lists[idx].push_back({poly::mp_eval(f, planted, pt)});
        }
        auto out = vector_rm_list_recover(inst);
        CHECK(out.size() <= 2 * inst.K * inst.ell);
        std::size_t max_bad = std::size_t((inst.alpha * Rat(324)).floor());
        for (const auto& tuple : out) {
            std::size_t bad = 0;
            for (std::size_t idx = 0; idx < inst.lists.size(); ++idx) {
                std::vector<felem> pt{inst.U[idx / 18], inst.U[idx % 18]};
                bad += (inst.lists[idx][0][0] != poly::mp_eval(f, tuple[0], pt));
            }
            CHECK(bad <= max_bad);
        }
    }
}

TEST_CASE("strict grid preconditions") {
    PrimeField f(5);
    GridInstance inst;
    inst.field = f;
    inst.U = {0, 1, 2, 3, 4};
    inst.m = 2;
    inst.stilde = 1;
    inst.t = 1;
    inst.ell = 1;
    inst.alpha = Rat(1, 3);
    inst.K = 9;
    inst.strict = true;  // |U| = 5 < 2 ell stilde K = 18
    inst.lists.resize(25);
    for (auto& l : inst.lists) l.push_back({0});
    CHECK_THROWS_AS(vector_rm_list_recover(inst), error);
}
