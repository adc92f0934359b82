#include "listrec/rm_grid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <type_traits>

#include "listrec/rng.hpp"

namespace listrec {

std::size_t GridInstance::grid_size() const {
    std::size_t n = 1;
    for (std::uint32_t i = 0; i < m; ++i) n *= U.size();
    return n;
}

std::size_t GridInstance::grid_index(const std::vector<std::uint32_t>& u_pos) const {
    std::size_t idx = 0;
    for (std::uint32_t j = 0; j < m; ++j) idx = idx * U.size() + u_pos[j];
    return idx;
}

namespace rm_grid {
namespace {

// --- field adapters ---------------------------------------------------------

struct PrimeOps {
    const PrimeField& f;
    using Elem = felem;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return f.add(a, b); }
    Elem sub(Elem a, Elem b) const { return f.sub(a, b); }
    Elem neg(Elem a) const { return f.neg(a); }
    Elem mul(Elem a, Elem b) const { return f.mul(a, b); }
    Elem inv(Elem a) const { return f.inv(a); }
    Elem from_base(felem a) const { return a; }
    std::uint32_t base_q() const { return f.q(); }
    // field size if it fits in 64 bits, else 0
    std::uint64_t size() const { return f.q(); }
    Elem element_at(std::uint64_t i) const { return Elem(i); }
    Elem random(rng::Stream& rng) const { return Elem(rng.below(f.q())); }
    std::vector<std::uint32_t> half_order_limbs() const {
        return {std::uint32_t((f.q() - 1) / 2)};
    }
};

struct ExtOps {
    const ExtField& f;
    using Elem = fvec;
    Elem zero() const { return f.zero(); }
    Elem one() const { return f.one(); }
    bool is_zero(const Elem& a) const { return f.is_zero(a); }
    Elem add(const Elem& a, const Elem& b) const { return f.add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return f.sub(a, b); }
    Elem neg(const Elem& a) const { return f.neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return f.mul(a, b); }
    Elem inv(const Elem& a) const { return f.inv(a); }
    Elem from_base(felem a) const { return f.from_base(a); }
    std::uint32_t base_q() const { return f.base().q(); }
    std::uint64_t size() const {
        std::uint64_t n = 1;
        for (std::uint32_t i = 0; i < f.t(); ++i) {
            if (n > UINT64_MAX / f.base().q()) return 0;
            n *= f.base().q();
        }
        return n;
    }
    Elem element_at(std::uint64_t i) const {
        Elem v(f.t());
        for (std::uint32_t k = 0; k < f.t(); ++k) {
            v[k] = felem(i % f.base().q());
            i /= f.base().q();
        }
        return v;
    }
    Elem random(rng::Stream& rng) const {
        Elem v(f.t());
        for (auto& c : v) c = felem(rng.below(f.base().q()));
        return v;
    }
    std::vector<std::uint32_t> half_order_limbs() const { return f.half_group_order_limbs(); }
};

// --- generic dense univariate polynomials -----------------------------------

template <class Ops>
using GPoly = std::vector<typename Ops::Elem>;

template <class Ops>
void gtrim(const Ops& K, GPoly<Ops>& p) {
    while (!p.empty() && K.is_zero(p.back())) p.pop_back();
}

template <class Ops>
std::int64_t gdeg(const GPoly<Ops>& p) {
    return std::int64_t(p.size()) - 1;
}

template <class Ops>
GPoly<Ops> gadd(const Ops& K, const GPoly<Ops>& a, const GPoly<Ops>& b) {
    GPoly<Ops> out(std::max(a.size(), b.size()), K.zero());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] = K.add(out[i], a[i]);
        if (i < b.size()) out[i] = K.add(out[i], b[i]);
    }
    gtrim(K, out);
    return out;
}

template <class Ops>
GPoly<Ops> gscale(const Ops& K, const GPoly<Ops>& a, const typename Ops::Elem& s) {
    if (K.is_zero(s)) return {};
    GPoly<Ops> out = a;
    for (auto& c : out) c = K.mul(c, s);
    return out;
}

template <class Ops>
GPoly<Ops> gmul(const Ops& K, const GPoly<Ops>& a, const GPoly<Ops>& b) {
    if (a.empty() || b.empty()) return {};
    GPoly<Ops> out(a.size() + b.size() - 1, K.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (K.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = K.add(out[i + j], K.mul(a[i], b[j]));
    }
    gtrim(K, out);
    return out;
}

template <class Ops>
GPoly<Ops> gmod(const Ops& K, GPoly<Ops> a, const GPoly<Ops>& b) {
    typename Ops::Elem lead_inv = K.inv(b.back());
    while (a.size() >= b.size()) {
        typename Ops::Elem c = K.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - b.size();
        if (!K.is_zero(c))
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = K.sub(a[shift + j], K.mul(c, b[j]));
        a.pop_back();
        gtrim(K, a);
        if (a.empty()) break;
    }
    return a;
}

template <class Ops>
GPoly<Ops> ggcd(const Ops& K, GPoly<Ops> a, GPoly<Ops> b) {
    gtrim(K, a);
    gtrim(K, b);
    while (!b.empty()) {
        GPoly<Ops> r = gmod(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = gscale(K, a, K.inv(a.back()));  // monic gcd
    return a;
}

template <class Ops>
typename Ops::Elem geval(const Ops& K, const GPoly<Ops>& p, const typename Ops::Elem& x) {
    typename Ops::Elem acc = K.zero();
    for (std::size_t i = p.size(); i-- > 0;) acc = K.add(K.mul(acc, x), p[i]);
    return acc;
}

template <class Ops>
GPoly<Ops> gderive(const Ops& K, const GPoly<Ops>& p) {
    GPoly<Ops> out;
    for (std::size_t k = 1; k < p.size(); ++k) {
        felem kq = felem(k % K.base_q());
        out.push_back(K.mul(p[k], K.from_base(kq)));
    }
    gtrim(K, out);
    return out;
}

// base^e mod m, exponent as base-2^32 limbs (least significant first)
template <class Ops>
GPoly<Ops> gpowmod_limbs(const Ops& K, const GPoly<Ops>& base,
                         const std::vector<std::uint32_t>& e, const GPoly<Ops>& m) {
    GPoly<Ops> result{K.one()};
    bool started = false;
    for (std::size_t li = e.size(); li-- > 0;) {
        for (int bit = 31; bit >= 0; --bit) {
            if (started) result = gmod(K, gmul(K, result, result), m);
            if ((e[li] >> bit) & 1) {
                result = gmod(K, gmul(K, result, base), m);
                started = true;
            }
        }
    }
    return result;
}

template <class Ops>
GPoly<Ops> gpowmod(const Ops& K, const GPoly<Ops>& base, std::uint64_t e, const GPoly<Ops>& m) {
    return gpowmod_limbs(K, base, {std::uint32_t(e), std::uint32_t(e >> 32)}, m);
}

// --- root finding over K ----------------------------------------------------

constexpr std::uint64_t kEnumerateLimit = 1u << 16;

template <class Ops>
void cz_split(const Ops& K, const GPoly<Ops>& h, rng::Stream& rng,
              std::vector<typename Ops::Elem>& out) {
    // h = monic product of distinct linear factors over K
    if (h.size() <= 1) return;
    if (h.size() == 2) {
        out.push_back(K.neg(h[0]));  // root of Y + c
        return;
    }
    require(K.base_q() != 2, errc::invalid_argument,
            "root splitting over large binary fields is not supported");
    auto half = K.half_order_limbs();
    for (int attempt = 0; attempt < 256; ++attempt) {
        GPoly<Ops> shift{K.random(rng), K.one()};  // Y + delta
        GPoly<Ops> w = gpowmod_limbs(K, shift, half, h);
        if (w.empty())
            w = GPoly<Ops>{K.neg(K.one())};
        else
            w[0] = K.sub(w[0], K.one());
        gtrim(K, w);
        GPoly<Ops> g = ggcd(K, w, h);
        if (g.size() > 1 && g.size() < h.size()) {
            // divide h by g
            GPoly<Ops> quot;
            GPoly<Ops> rem = h;
            typename Ops::Elem lead_inv = K.inv(g.back());
            quot.assign(rem.size() - g.size() + 1, K.zero());
            while (rem.size() >= g.size() && !rem.empty()) {
                std::size_t sh = rem.size() - g.size();
                typename Ops::Elem c = K.mul(rem.back(), lead_inv);
                quot[sh] = c;
                for (std::size_t j = 0; j < g.size(); ++j)
                    rem[sh + j] = K.sub(rem[sh + j], K.mul(c, g[j]));
                gtrim(K, rem);
            }
            cz_split(K, g, rng, out);
            gtrim(K, quot);
            cz_split(K, gscale(K, quot, K.inv(quot.back())), rng, out);
            return;
        }
    }
    fail(errc::invalid_argument, "equal-degree splitting did not converge");
}

template <class Ops>
std::vector<typename Ops::Elem> roots_in_field(const Ops& K, GPoly<Ops> p, rng::Stream& rng) {
    gtrim(K, p);
    std::vector<typename Ops::Elem> out;
    if (p.size() <= 1) return out;
    std::uint64_t sz = K.size();
    if (sz != 0 && sz <= kEnumerateLimit) {
        for (std::uint64_t i = 0; i < sz; ++i) {
            auto x = K.element_at(i);
            if (K.is_zero(geval(K, p, x))) out.push_back(x);
        }
        return out;
    }
    // squarefree part
    GPoly<Ops> d = gderive(K, p);
    GPoly<Ops> g = d.empty() ? GPoly<Ops>{} : ggcd(K, p, d);
    GPoly<Ops> sf = p;
    if (g.size() > 1) {
        // exact division p / g
        GPoly<Ops> quot(p.size() - g.size() + 1, K.zero());
        GPoly<Ops> rem = p;
        typename Ops::Elem lead_inv = K.inv(g.back());
        while (rem.size() >= g.size() && !rem.empty()) {
            std::size_t sh = rem.size() - g.size();
            typename Ops::Elem c = K.mul(rem.back(), lead_inv);
            quot[sh] = c;
            for (std::size_t j = 0; j < g.size(); ++j)
                rem[sh + j] = K.sub(rem[sh + j], K.mul(c, g[j]));
            gtrim(K, rem);
        }
        sf = quot;
        gtrim(K, sf);
    }
    sf = gscale(K, sf, K.inv(sf.back()));
    // distinct-roots-in-K part: gcd(Y^{|K|} - Y, sf) with Y^{q^t} computed by
    // iterated q-th powers in K[Y]/(sf)
    GPoly<Ops> y{K.zero(), K.one()};
    GPoly<Ops> acc = gpowmod(K, y, K.base_q(), sf);
    std::uint32_t ext_t = 1;
    if constexpr (std::is_same_v<Ops, ExtOps>) ext_t = K.f.t();
    for (std::uint32_t step = 1; step < ext_t; ++step)
        acc = gpowmod(K, acc, K.base_q(), sf);
    // acc = Y^{|K|} mod sf; subtract Y
    GPoly<Ops> diff = acc;
    if (diff.size() < 2) diff.resize(2, K.zero());
    diff[1] = K.sub(diff[1], K.one());
    gtrim(K, diff);
    GPoly<Ops> h = ggcd(K, diff, sf);
    if (h.size() <= 1) return out;
    cz_split(K, h, rng, out);
    return out;
}

// --- Roth-Ruckenstein Y-root extraction --------------------------------------

template <class Ops>
void rr_strip_x(const Ops& K, std::vector<GPoly<Ops>>& Q) {
    std::size_t v = SIZE_MAX;
    for (const auto& qj : Q) {
        if (qj.empty()) continue;
        std::size_t val = 0;
        while (val < qj.size() && K.is_zero(qj[val])) ++val;
        v = std::min(v, val);
    }
    if (v == SIZE_MAX || v == 0) return;
    for (auto& qj : Q)
        if (!qj.empty()) qj.erase(qj.begin(), qj.begin() + std::min(v, qj.size()));
}

template <class Ops>
typename Ops::Elem rr_pow(const Ops& K, const typename Ops::Elem& a, std::uint64_t e) {
    typename Ops::Elem r = K.one();
    typename Ops::Elem b = a;
    while (e > 0) {
        if (e & 1) r = K.mul(r, b);
        b = K.mul(b, b);
        e >>= 1;
    }
    return r;
}

template <class Ops>
void rr_recurse(const Ops& K, std::vector<GPoly<Ops>> Q, std::uint32_t k, std::uint32_t stilde,
                GPoly<Ops>& prefix, std::vector<GPoly<Ops>>& out, rng::Stream& rng) {
    rr_strip_x(K, Q);
    GPoly<Ops> r;
    for (const auto& qj : Q) r.push_back(qj.empty() ? K.zero() : qj[0]);
    gtrim(K, r);
    for (const auto& rho : roots_in_field(K, r, rng)) {
        prefix.push_back(rho);
        if (k == stilde) {
            GPoly<Ops> cand = prefix;
            gtrim(K, cand);
            out.push_back(cand);
        } else {
            // substitute Y <- rho + X*Y
            std::vector<GPoly<Ops>> Q2(Q.size());
            for (std::size_t jp = 0; jp < Q.size(); ++jp) {
                if (Q[jp].empty()) continue;
                typename Ops::Elem rho_pow = K.one();
                for (std::size_t j = 0; j <= jp; ++j) {
                    // C(jp, j) rho^{jp-j} X^j Q_{jp}
                    felem bin = 1;
                    {
                        // Pascal value mod base characteristic
                        std::uint64_t nn = jp, kk = j;
                        PrimeField pf(K.base_q(), 1);
                        bin = poly::binom_mod(pf, nn, kk);
                    }
                    if (bin != 0) {
                        auto coef = K.mul(K.from_base(bin),
                                          rr_pow(K, rho, jp - j));
                        if (!K.is_zero(coef)) {
                            GPoly<Ops> term = gscale(K, Q[jp], coef);
                            // shift by X^j
                            term.insert(term.begin(), j, K.zero());
                            if (Q2[j].empty())
                                Q2[j] = std::move(term);
                            else
                                Q2[j] = gadd(K, Q2[j], term);
                        }
                    }
                }
                (void)rho_pow;
            }
            bool all_zero = true;
            for (const auto& qj : Q2) all_zero &= qj.empty();
            if (!all_zero) rr_recurse(K, std::move(Q2), k + 1, stilde, prefix, out, rng);
        }
        prefix.pop_back();
    }
}

// --- generic Sudan core -------------------------------------------------------

template <class Ops>
std::vector<std::size_t> grref(const Ops& K, std::vector<GPoly<Ops>>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        std::size_t piv = row;
        while (piv < rows.size() && K.is_zero(rows[piv][col])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[row]);
        auto scale = K.inv(rows[row][col]);
        for (std::size_t c = col; c < cols; ++c) rows[row][c] = K.mul(rows[row][c], scale);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == row || K.is_zero(rows[r][col])) continue;
            auto c0 = rows[r][col];
            for (std::size_t c = col; c < cols; ++c)
                rows[r][c] = K.sub(rows[r][c], K.mul(c0, rows[row][c]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// First nullspace vector of a homogeneous system (free column rule), or empty.
template <class Ops>
GPoly<Ops> gkernel_vector(const Ops& K, std::vector<GPoly<Ops>>& rows, std::size_t cols) {
    auto pivots = grref(K, rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t free_col = SIZE_MAX;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col == SIZE_MAX) return {};
    GPoly<Ops> k(cols, K.zero());
    k[free_col] = K.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = K.neg(rows[r][free_col]);
    return k;
}

template <class Ops>
std::vector<GPoly<Ops>> sudan_core(const Ops& K,
                                   const std::vector<std::pair<typename Ops::Elem,
                                                               std::vector<typename Ops::Elem>>>& pts,
                                   std::uint32_t stilde, std::size_t agree_target) {
    require(stilde >= 1, errc::invalid_argument, "stilde must be >= 1");
    std::size_t n_pairs = 0;
    for (const auto& [x, list] : pts) n_pairs += list.size();
    std::size_t A = agree_target;
    require(A >= 1 && A * A >= 4 * n_pairs * stilde, errc::agreement_too_low,
            "agreement below the interpolation requirement");
    std::size_t W = A - 1;
    std::size_t ydeg = W / stilde;
    // column layout: for each j <= ydeg, coefficients of X^0..X^{W - j*stilde}
    std::vector<std::size_t> col_base(ydeg + 2, 0);
    for (std::size_t j = 0; j <= ydeg; ++j) col_base[j + 1] = col_base[j] + (W - j * stilde + 1);
    std::size_t cols = col_base[ydeg + 1];

    std::vector<GPoly<Ops>> rows;
    rows.reserve(n_pairs);
    for (const auto& [x, list] : pts) {
        for (const auto& y : list) {
            GPoly<Ops> row(cols, K.zero());
            auto ypow = K.one();
            for (std::size_t j = 0; j <= ydeg; ++j) {
                auto xpow = ypow;
                for (std::size_t kk = 0; kk + col_base[j] < col_base[j + 1]; ++kk) {
                    row[col_base[j] + kk] = xpow;
                    xpow = K.mul(xpow, x);
                }
                ypow = K.mul(ypow, y);
            }
            rows.push_back(std::move(row));
        }
    }
    GPoly<Ops> sol = gkernel_vector(K, rows, cols);
    require(!sol.empty(), errc::agreement_too_low, "interpolation system had full rank");

    std::vector<GPoly<Ops>> Q(ydeg + 1);
    for (std::size_t j = 0; j <= ydeg; ++j) {
        Q[j].assign(sol.begin() + col_base[j], sol.begin() + col_base[j + 1]);
        gtrim(K, Q[j]);
    }

    rng::Stream rr_rng(0x524F4F5453ULL);  // fixed seed: root finding only
    std::vector<GPoly<Ops>> cands;
    GPoly<Ops> prefix;
    rr_recurse(K, Q, 0, stilde, prefix, cands, rr_rng);

    // filter by true agreement and dedupe
    std::set<GPoly<Ops>> seen;
    std::vector<GPoly<Ops>> out;
    for (auto& p : cands) {
        if (seen.count(p)) continue;
        std::size_t agree = 0;
        for (const auto& [x, list] : pts) {
            auto v = geval(K, p, x);
            bool hit = false;
            for (const auto& y : list) hit |= (y == v);
            agree += hit;
        }
        if (agree >= A) {
            seen.insert(p);
            out.push_back(std::move(p));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t agreement_target(std::size_t positions, const Rat& alpha) {
    std::int64_t bad = (alpha * Rat(std::int64_t(positions))).floor();
    return positions - std::size_t(bad);
}

}  // namespace

std::vector<Poly> sudan_list_recover(const PrimeField& f,
                                     const std::vector<std::pair<felem, std::vector<felem>>>& pts,
                                     std::uint32_t stilde, const Rat& alpha) {
    PrimeOps ops{f};
    auto res = sudan_core(ops, pts, stilde, agreement_target(pts.size(), alpha));
    std::vector<Poly> out;
    for (auto& c : res) {
        Poly p;
        p.c = std::move(c);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::vector<fvec>> sudan_list_recover_ext(
    const ExtField& K, const std::vector<std::pair<fvec, std::vector<fvec>>>& pts,
    std::uint32_t stilde, const Rat& alpha) {
    ExtOps ops{K};
    return sudan_core(ops, pts, stilde, agreement_target(pts.size(), alpha));
}

// --- vector RM recursion ------------------------------------------------------

namespace {

using VecList = std::vector<std::vector<std::vector<felem>>>;  // grid -> list of t-vectors

struct RmCtx {
    const PrimeField& f;
    const std::vector<felem>& U;
    std::uint32_t stilde;
    std::uint32_t ell;
    std::uint64_t K;
    std::optional<Rat> slice_radius;
    std::optional<Rat> combine_radius;
    std::map<std::uint32_t, ExtField> ext_cache;

    const ExtField& ext(std::uint32_t t) {
        auto it = ext_cache.find(t);
        if (it == ext_cache.end())
            it = ext_cache.emplace(t, build_extension(f.q(), t)).first;
        return it->second;
    }
};

// smallest integer agreement A with A^2 * K > (N * frac_num)^2 where
// frac = (m - 1) resp. 1 over sqrt(K); mirrors 1 - c/sqrt(K) radii exactly
std::size_t default_agreement(std::uint64_t K, std::size_t N, std::uint64_t c) {
    std::size_t A = 0;
    while (std::uint64_t(A) * A * K <= std::uint64_t(N) * N * c * c) ++A;
    return A;
}

// inclusive: dist <= radius
std::size_t radius_agreement(const Rat& radius, std::size_t N) {
    std::int64_t bad = (radius * Rat(std::int64_t(N))).floor();
    if (bad >= std::int64_t(N)) return 0;
    if (bad < 0) bad = 0;
    return N - std::size_t(bad);
}

std::size_t count_disagreements(const PrimeField& f, const std::vector<MultiPoly>& tuple,
                                const VecList& lists, const std::vector<felem>& U,
                                std::uint32_t m) {
    std::size_t n = lists.size();
    std::size_t bad = 0;
    std::vector<std::uint32_t> upos(m, 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t v = idx;
        for (std::uint32_t j = m; j-- > 0;) {
            upos[j] = std::uint32_t(v % U.size());
            v /= U.size();
        }
        std::vector<felem> pt(m);
        for (std::uint32_t j = 0; j < m; ++j) pt[j] = U[upos[j]];
        std::vector<felem> val(tuple.size());
        for (std::size_t i = 0; i < tuple.size(); ++i) val[i] = poly::mp_eval(f, tuple[i], pt);
        bool hit = false;
        for (const auto& y : lists[idx]) hit |= (y == val);
        bad += !hit;
    }
    return bad;
}

// list recovery of t-tuples of univariate polynomials through GF(q^t)
std::vector<std::vector<Poly>> vector_sudan(RmCtx& ctx, std::uint32_t t,
                                            const std::vector<felem>& xs,
                                            const VecList& lists, std::size_t agree_target) {
    std::vector<std::vector<Poly>> out;
    if (t == 1) {
        std::vector<std::pair<felem, std::vector<felem>>> pts;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<felem> flat;
            for (const auto& y : lists[i]) flat.push_back(y[0]);
            pts.emplace_back(xs[i], std::move(flat));
        }
        PrimeOps ops{ctx.f};
        for (auto& c : sudan_core(ops, pts, ctx.stilde, agree_target)) {
            Poly p;
            p.c = std::move(c);
            out.push_back({std::move(p)});
        }
        return out;
    }
    const ExtField& K = ctx.ext(t);
    ExtOps ops{K};
    std::vector<std::pair<fvec, std::vector<fvec>>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<fvec> flat;
        for (const auto& y : lists[i]) flat.push_back(K.phi(y));
        pts.emplace_back(K.from_base(xs[i]), std::move(flat));
    }
    for (auto& kp : sudan_core(ops, pts, ctx.stilde, agree_target)) {
        // split K-coefficients into t component polynomials
        std::vector<Poly> tuple(t);
        for (std::uint32_t i = 0; i < t; ++i) tuple[i].c.assign(kp.size(), 0);
        for (std::size_t k = 0; k < kp.size(); ++k) {
            fvec coords = K.phi_inv(kp[k]);
            for (std::uint32_t i = 0; i < t; ++i) tuple[i].c[k] = coords[i];
        }
        for (auto& p : tuple) p.trim();
        out.push_back(std::move(tuple));
    }
    return out;
}

MultiPoly poly_as_multipoly(const Poly& p, std::uint32_t m, std::uint32_t var);

// recursive vector RM recovery; returns tuples of m-variate polynomials
std::vector<std::vector<MultiPoly>> rm_recover(RmCtx& ctx, std::uint32_t m, std::uint32_t t,
                                               const VecList& lists, std::size_t agree_target) {
    const PrimeField& f = ctx.f;
    std::size_t usz = ctx.U.size();
    std::vector<std::vector<MultiPoly>> out;
    if (m == 1) {
        for (auto& tuple : vector_sudan(ctx, t, ctx.U, lists, agree_target)) {
            std::vector<MultiPoly> mp;
            for (const auto& p : tuple) mp.push_back(poly_as_multipoly(p, 1, 0));
            out.push_back(std::move(mp));
        }
        return out;
    }
    std::size_t sub_n = lists.size() / usz;
    std::size_t slice_agree = ctx.slice_radius ? radius_agreement(*ctx.slice_radius, sub_n)
                                               : default_agreement(ctx.K, sub_n, m - 1);
    std::size_t combine_agree = ctx.combine_radius ? radius_agreement(*ctx.combine_radius, usz)
                                                   : default_agreement(ctx.K, usz, 1);

    // monomials of degree <= stilde in the first m-1 variables
    auto monomials = deriv_indices(m - 1, ctx.stilde + 1);
    std::uint32_t tt = std::uint32_t(monomials.size());
    std::map<std::vector<std::uint32_t>, std::size_t> mono_pos;
    for (std::size_t j = 0; j < monomials.size(); ++j) mono_pos[monomials[j]] = j;

    // slice on the last coordinate (contiguous blocks in lex order are the
    // first coordinate, so gather strided)
    VecList combine_lists(usz);
    std::size_t cap = 2 * std::size_t(ctx.K) * ctx.ell;
    for (std::size_t ui = 0; ui < usz; ++ui) {
        VecList slice(sub_n);
        for (std::size_t r = 0; r < sub_n; ++r) slice[r] = lists[r * usz + ui];
        auto slice_out = rm_recover(ctx, m - 1, t, slice, slice_agree);
        // keep the closest <= 2 K ell tuples
        std::vector<std::pair<std::size_t, std::size_t>> order;
        for (std::size_t i = 0; i < slice_out.size(); ++i)
            order.emplace_back(count_disagreements(f, slice_out[i], slice, ctx.U, m - 1), i);
        std::sort(order.begin(), order.end());
        if (order.size() > cap) order.resize(cap);
        // lift each surviving tuple to its coefficient vector
        std::set<std::vector<felem>> dedup;
        for (const auto& [dd, i] : order) {
            std::vector<felem> lift(std::size_t(t) * tt, 0);
            for (std::uint32_t comp = 0; comp < t; ++comp)
                for (const auto& [e, c] : slice_out[i][comp].terms)
                    lift[std::size_t(comp) * tt + mono_pos.at(e)] = c;
            if (dedup.insert(lift).second) combine_lists[ui].push_back(std::move(lift));
        }
    }

    auto combined = vector_sudan(ctx, t * tt, ctx.U, combine_lists, combine_agree);
    std::set<std::vector<std::vector<std::pair<std::vector<std::uint32_t>, felem>>>> seen;
    for (const auto& tuple : combined) {
        // R_i(Y_1..Y_m) = sum_j M_j(Y_1..Y_{m-1}) P_{i,j}(Y_m)
        std::vector<MultiPoly> assembled(t);
        bool degree_ok = true;
        for (std::uint32_t comp = 0; comp < t && degree_ok; ++comp) {
            MultiPoly R;
            R.m = m;
            for (std::uint32_t j = 0; j < tt; ++j) {
                const Poly& pj = tuple[std::size_t(comp) * tt + j];
                for (std::size_t k = 0; k < pj.c.size(); ++k) {
                    if (pj.c[k] == 0) continue;
                    std::vector<std::uint32_t> e(m, 0);
                    for (std::uint32_t v = 0; v + 1 < m; ++v) e[v] = monomials[j][v];
                    e[m - 1] = std::uint32_t(k);
                    R.terms[e] = f.add(R.terms.count(e) ? R.terms[e] : 0, pj.c[k]);
                    if (R.terms[e] == 0) R.terms.erase(e);
                }
            }
            if (R.total_degree() > std::int64_t(ctx.stilde)) degree_ok = false;
            assembled[comp] = std::move(R);
        }
        if (!degree_ok) continue;
        std::size_t bad = count_disagreements(f, assembled, lists, ctx.U, m);
        if (bad > lists.size() - agree_target) continue;
        std::vector<std::vector<std::pair<std::vector<std::uint32_t>, felem>>> key;
        for (const auto& mp : assembled)
            key.emplace_back(mp.terms.begin(), mp.terms.end());
        if (seen.insert(key).second) out.push_back(assembled);
    }
    // cap at 2 K ell by distance
    if (out.size() > cap) {
        std::vector<std::pair<std::size_t, std::size_t>> order;
        for (std::size_t i = 0; i < out.size(); ++i)
            order.emplace_back(count_disagreements(f, out[i], lists, ctx.U, m), i);
        std::sort(order.begin(), order.end());
        std::vector<std::vector<MultiPoly>> capped;
        for (std::size_t i = 0; i < cap; ++i) capped.push_back(std::move(out[order[i].second]));
        out = std::move(capped);
    }
    return out;
}

MultiPoly poly_as_multipoly(const Poly& p, std::uint32_t m, std::uint32_t var) {
    MultiPoly out;
    out.m = m;
    for (std::size_t k = 0; k < p.c.size(); ++k) {
        if (p.c[k] == 0) continue;
        std::vector<std::uint32_t> e(m, 0);
        e[var] = std::uint32_t(k);
        out.terms[e] = p.c[k];
    }
    return out;
}

}  // namespace

std::vector<std::vector<MultiPoly>> vector_rm_list_recover(const GridInstance& inst) {
    require(!inst.U.empty(), errc::invalid_argument, "grid side U must not be empty");
    require(inst.m >= 1 && inst.t >= 1, errc::invalid_argument, "m, t must be >= 1");
    require(inst.lists.size() == inst.grid_size(), errc::dimension_mismatch,
            "grid list count mismatch");
    {
        std::set<felem> seen;
        for (felem u : inst.U) {
            require(u < inst.field.q(), errc::invalid_argument, "grid point out of range");
            require(seen.insert(u).second, errc::invalid_argument, "duplicate grid point");
        }
    }
    if (inst.strict) {
        require(std::uint64_t(inst.U.size()) >=
                    2 * std::uint64_t(inst.ell) * inst.stilde * inst.K,
                errc::regime_violation, "need |U| >= 2 ell stilde K");
        require(inst.K >= std::uint64_t(inst.m) * inst.m, errc::regime_violation,
                "need K >= m^2");
        Rat oma = Rat(1) - inst.alpha;  // need (1-alpha) >= m/sqrt(K)
        require(oma * oma * Rat(std::int64_t(inst.K)) >=
                    Rat(std::int64_t(inst.m) * inst.m),
                errc::regime_violation, "need alpha <= 1 - m/sqrt(K)");
    }
    RmCtx ctx{inst.field, inst.U,      inst.stilde,        inst.ell,
              inst.K,     inst.slice_radius, inst.combine_radius, {}};
    std::size_t n = inst.grid_size();
    std::int64_t bad_allowed = (inst.alpha * Rat(std::int64_t(n))).floor();
    std::size_t agree_target = n - std::size_t(bad_allowed);
    return rm_recover(ctx, inst.m, inst.t, inst.lists, agree_target);
}

}  // namespace rm_grid
}  // namespace listrec
