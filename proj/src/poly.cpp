#include "listrec/poly.hpp"

#include <algorithm>
#include <map>

namespace listrec {

std::int64_t MultiPoly::total_degree() const {
    std::int64_t d = -1;
    for (const auto& [e, c] : terms) d = std::max<std::int64_t>(d, weight(e));
    return d;
}

std::uint32_t weight(const std::vector<std::uint32_t>& e) {
    std::uint32_t w = 0;
    for (auto x : e) w += x;
    return w;
}

std::vector<std::vector<std::uint32_t>> deriv_indices(std::uint32_t m, std::uint32_t s) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(m, 0);
    // enumerate all vectors of weight w in lexicographically descending order
    auto rec = [&](auto&& self, std::uint32_t pos, std::uint32_t left) -> void {
        if (pos == m - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = left; v >= 0; --v) {
            cur[pos] = std::uint32_t(v);
            self(self, pos + 1, left - std::uint32_t(v));
        }
    };
    for (std::uint32_t w = 0; w < s; ++w) rec(rec, 0, w);
    return out;
}

std::size_t deriv_index_count(std::uint32_t m, std::uint32_t s) {
    // C(m+s-1, m)
    std::uint64_t num = 1, den = 1;
    for (std::uint32_t i = 1; i <= m; ++i) {
        num *= (s - 1 + i);
        den *= i;
    }
    return std::size_t(num / den);
}

namespace poly {

namespace {

// factorials and inverse factorials mod q, built once per field
struct FactTable {
    std::vector<felem> fact, inv_fact;
};

const FactTable& fact_table(const PrimeField& f) {
    thread_local std::map<std::uint32_t, FactTable> cache;
    auto it = cache.find(f.q());
    if (it != cache.end()) return it->second;
    FactTable t;
    std::uint32_t q = f.q();
    t.fact.resize(q);
    t.inv_fact.resize(q);
    t.fact[0] = 1;
    for (std::uint32_t i = 1; i < q; ++i) t.fact[i] = f.mul(t.fact[i - 1], i);
    t.inv_fact[q - 1] = f.inv(t.fact[q - 1]);
    for (std::uint32_t i = q - 1; i > 0; --i)
        t.inv_fact[i - 1] = f.mul(t.inv_fact[i], i);
    return cache.emplace(q, std::move(t)).first->second;
}

}  // namespace

felem binom_mod(const PrimeField& f, std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint32_t q = f.q();
    felem out = 1;
    if (q <= (1u << 20)) {
        const FactTable& t = fact_table(f);
        while (n > 0 || k > 0) {
            std::uint64_t nd = n % q, kd = k % q;
            if (kd > nd) return 0;
            felem digit = f.mul(t.fact[nd], f.mul(t.inv_fact[kd], t.inv_fact[nd - kd]));
            out = f.mul(out, digit);
            n /= q;
            k /= q;
        }
        return out;
    }
    while (n > 0 || k > 0) {
        std::uint64_t nd = n % q, kd = k % q;
        if (kd > nd) return 0;
        kd = std::min(kd, nd - kd);
        felem num = 1, den = 1;
        for (std::uint64_t i = 1; i <= kd; ++i) {
            num = f.mul(num, felem((nd - kd + i) % q));
            den = f.mul(den, felem(i % q));
        }
        out = f.mul(out, f.div(num, den));
        n /= q;
        k /= q;
    }
    return out;
}

Poly add(const PrimeField& f, const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = f.add(a.coeff(i), b.coeff(i));
    out.trim();
    return out;
}

Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = f.sub(a.coeff(i), b.coeff(i));
    out.trim();
    return out;
}

Poly scale(const PrimeField& f, const Poly& a, felem s) {
    if (s == 0) return Poly::zero();
    Poly out = a;
    for (felem& c : out.c) c = f.mul(c, s);
    return out;
}

Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = f.add(out.c[i + j], f.mul(a.c[i], b.c[j]));
    }
    return out;
}

std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b) {
    require(!b.is_zero(), errc::division_by_zero, "polynomial division by zero");
    Poly rem = a, quot;
    felem lead_inv = f.inv(b.c.back());
    if (rem.c.size() >= b.c.size()) quot.c.assign(rem.c.size() - b.c.size() + 1, 0);
    while (!rem.is_zero() && rem.c.size() >= b.c.size()) {
        std::size_t shift = rem.c.size() - b.c.size();
        felem q0 = f.mul(rem.c.back(), lead_inv);
        quot.c[shift] = q0;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            rem.c[shift + j] = f.sub(rem.c[shift + j], f.mul(q0, b.c[j]));
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

felem eval(const PrimeField& f, const Poly& p, felem x) {
    felem acc = 0;
    for (std::size_t i = p.c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p.c[i]);
    return acc;
}

Poly compose_affine(const PrimeField& f, const Poly& p, felem c0, felem c1) {
    // Horner: acc = acc*(c0 + c1 X) + coeff
    Poly acc;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        Poly next;
        next.c.assign(acc.c.size() + 1, 0);
        for (std::size_t k = 0; k < acc.c.size(); ++k) {
            next.c[k] = f.add(next.c[k], f.mul(acc.c[k], c0));
            next.c[k + 1] = f.add(next.c[k + 1], f.mul(acc.c[k], c1));
        }
        if (next.c.empty()) next.c.assign(1, 0);
        next.c[0] = f.add(next.c[0], p.c[i]);
        next.trim();
        acc = std::move(next);
    }
    return acc;
}

Poly hasse_derive(const PrimeField& f, const Poly& p, std::uint64_t i) {
    Poly out;
    if (p.c.size() <= i) return out;
    out.c.assign(p.c.size() - i, 0);
    for (std::size_t k = std::size_t(i); k < p.c.size(); ++k)
        out.c[k - i] = f.mul(p.c[k], binom_mod(f, k, i));
    out.trim();
    return out;
}

std::vector<felem> eval_order(const PrimeField& f, const Poly& p, felem a, std::uint32_t s) {
    require(s >= 1, errc::invalid_argument, "eval_order: s must be >= 1");
    std::vector<felem> out(s, 0);
    // Taylor shift: p(a + Z) = sum_i p^(i)(a) Z^i; synthetic division by (X-a).
    Poly rem = p;
    for (std::uint32_t i = 0; i < s && !rem.is_zero(); ++i) {
        // divide rem by (X - a): quotient in place, remainder = rem(a)
        felem carry = 0;
        for (std::size_t k = rem.c.size(); k-- > 0;) {
            felem cur = f.add(rem.c[k], f.mul(carry, a));
            rem.c[k] = carry;
            carry = cur;
        }
        out[i] = carry;
        rem.trim();
    }
    return out;
}

MultiPoly mp_add(const PrimeField& f, const MultiPoly& a, const MultiPoly& b) {
    require(a.m == b.m, errc::dimension_mismatch, "mp_add arity mismatch");
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms) {
        felem v = f.add(out.terms.count(e) ? out.terms[e] : 0, c);
        if (v == 0)
            out.terms.erase(e);
        else
            out.terms[e] = v;
    }
    return out;
}

MultiPoly mp_mul(const PrimeField& f, const MultiPoly& a, const MultiPoly& b) {
    require(a.m == b.m, errc::dimension_mismatch, "mp_mul arity mismatch");
    MultiPoly out;
    out.m = a.m;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<std::uint32_t> e(a.m);
            for (std::uint32_t j = 0; j < a.m; ++j) e[j] = ea[j] + eb[j];
            felem v = f.add(out.terms.count(e) ? out.terms[e] : 0, f.mul(ca, cb));
            if (v == 0)
                out.terms.erase(e);
            else
                out.terms[e] = v;
        }
    return out;
}

MultiPoly mp_hasse_derive(const PrimeField& f, const MultiPoly& p,
                          const std::vector<std::uint32_t>& i) {
    require(i.size() == p.m, errc::dimension_mismatch, "mp_hasse_derive arity mismatch");
    MultiPoly out;
    out.m = p.m;
    for (const auto& [e, c] : p.terms) {
        felem coef = c;
        std::vector<std::uint32_t> e2(p.m);
        bool ok = true;
        for (std::uint32_t j = 0; j < p.m && ok; ++j) {
            if (e[j] < i[j]) {
                ok = false;
                break;
            }
            coef = f.mul(coef, binom_mod(f, e[j], i[j]));
            e2[j] = e[j] - i[j];
        }
        if (!ok || coef == 0) continue;
        felem v = f.add(out.terms.count(e2) ? out.terms[e2] : 0, coef);
        if (v == 0)
            out.terms.erase(e2);
        else
            out.terms[e2] = v;
    }
    return out;
}

felem mp_eval(const PrimeField& f, const MultiPoly& p, const std::vector<felem>& a) {
    require(a.size() == p.m, errc::dimension_mismatch, "mp_eval arity mismatch");
    felem acc = 0;
    for (const auto& [e, c] : p.terms) {
        felem term = c;
        for (std::uint32_t j = 0; j < p.m; ++j) term = f.mul(term, f.pow(a[j], e[j]));
        acc = f.add(acc, term);
    }
    return acc;
}

std::vector<felem> mp_eval_order(const PrimeField& f, const MultiPoly& p,
                                 const std::vector<felem>& a, std::uint32_t s) {
    require(a.size() == p.m, errc::dimension_mismatch, "mp_eval_order arity mismatch");
    auto idx = deriv_indices(p.m, s);
    std::vector<felem> out;
    out.reserve(idx.size());
    for (const auto& i : idx) out.push_back(mp_eval(f, mp_hasse_derive(f, p, i), a));
    return out;
}

Poly restrict_line(const PrimeField& f, const MultiPoly& p, const std::vector<felem>& x,
                   const std::vector<felem>& b) {
    require(x.size() == p.m && b.size() == p.m, errc::dimension_mismatch,
            "restrict_line arity mismatch");
    Poly acc;
    for (const auto& [e, c] : p.terms) {
        Poly term = Poly::constant(c);
        for (std::uint32_t j = 0; j < p.m; ++j) {
            // multiply by (x_j + T b_j)^{e_j}
            Poly lin;
            lin.c = {x[j], b[j]};
            lin.trim();
            for (std::uint32_t rep = 0; rep < e[j]; ++rep) term = mul(f, term, lin);
        }
        acc = add(f, acc, term);
    }
    return acc;
}

MultiPoly mp_shift(const PrimeField& f, const MultiPoly& p, const std::vector<felem>& shift) {
    require(shift.size() == p.m, errc::dimension_mismatch, "mp_shift arity mismatch");
    MultiPoly acc;
    acc.m = p.m;
    for (const auto& [e, c] : p.terms) {
        MultiPoly term;
        term.m = p.m;
        term.terms[std::vector<std::uint32_t>(p.m, 0)] = c;
        for (std::uint32_t j = 0; j < p.m; ++j) {
            if (e[j] == 0) continue;
            MultiPoly lin;
            lin.m = p.m;
            std::vector<std::uint32_t> ej(p.m, 0);
            if (shift[j] != 0) lin.terms[ej] = shift[j];
            ej[j] = 1;
            lin.terms[ej] = 1;
            for (std::uint32_t rep = 0; rep < e[j]; ++rep) term = mp_mul(f, term, lin);
        }
        acc = mp_add(f, acc, term);
    }
    return acc;
}

std::vector<felem> restrict_symbol(const PrimeField& f, const std::vector<felem>& z,
                                   const std::vector<felem>& b, std::uint32_t m,
                                   std::uint32_t s) {
    auto idx = deriv_indices(m, s);
    require(z.size() == idx.size(), errc::dimension_mismatch, "restrict_symbol symbol arity");
    require(b.size() == m, errc::dimension_mismatch, "restrict_symbol direction arity");
    std::vector<felem> h(s, 0);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (z[k] == 0) continue;
        felem term = z[k];
        for (std::uint32_t j = 0; j < m; ++j) term = f.mul(term, f.pow(b[j], idx[k][j]));
        std::uint32_t w = weight(idx[k]);
        h[w] = f.add(h[w], term);
    }
    return h;
}

Poly wronskian_det(const PrimeField& f, const std::vector<Poly>& fs) {
    require(!fs.empty(), errc::invalid_argument, "wronskian of empty tuple");
    std::size_t t = fs.size();
    std::vector<std::vector<Poly>> m(t, std::vector<Poly>(t));
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t i = 0; i < t; ++i) m[i][j] = hasse_derive(f, fs[j], i);
    // Bareiss fraction-free elimination; all divisions are exact.
    felem sign = 1;
    Poly prev_pivot = Poly::constant(1);
    for (std::size_t k = 0; k < t; ++k) {
        std::size_t piv = k;
        while (piv < t && m[piv][k].is_zero()) ++piv;
        if (piv == t) return Poly::zero();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = f.neg(sign);
        }
        for (std::size_t i = k + 1; i < t; ++i) {
            for (std::size_t j = k + 1; j < t; ++j) {
                Poly num = sub(f, mul(f, m[k][k], m[i][j]), mul(f, m[i][k], m[k][j]));
                auto [quot, rem] = divmod(f, num, prev_pivot);
                require(rem.is_zero(), errc::invalid_argument, "bareiss: inexact division");
                m[i][j] = quot;
            }
            m[i][k] = Poly::zero();
        }
        prev_pivot = m[k][k];
    }
    return scale(f, m[t - 1][t - 1], sign);
}

}  // namespace poly
}  // namespace listrec
