#include "listrec/field.hpp"

#include <algorithm>

namespace listrec {

bool is_prime(std::uint32_t q) {
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (std::uint64_t p = 3; p * p <= q; p += 2)
        if (q % p == 0) return false;
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(std::uint32_t(p));
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(std::uint32_t(n));
    return out;
}

felem find_primitive(std::uint32_t q) {
    require(is_prime(q), errc::invalid_modulus, "find_primitive: q is not prime");
    if (q == 2) return 1;
    PrimeField f(q, 1);  // gamma placeholder, not used below
    auto factors = prime_factors(q - 1);
    for (felem g = 2; g < q; ++g) {
        bool primitive = true;
        for (std::uint32_t p : factors) {
            if (f.pow(g, (q - 1) / p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    fail(errc::invalid_modulus, "find_primitive: no generator found");
}

PrimeField::PrimeField(std::uint32_t q) : q_(q), gamma_(0) {
    require(is_prime(q), errc::invalid_modulus, "PrimeField: modulus is not prime");
    gamma_ = find_primitive(q);
}

PrimeField::PrimeField(std::uint32_t q, felem gamma) : q_(q), gamma_(gamma) {
    require(is_prime(q), errc::invalid_modulus, "PrimeField: modulus is not prime");
    require(gamma < q, errc::invalid_argument, "PrimeField: gamma out of range");
}

felem PrimeField::inv(felem a) const {
    check(a);
    require(a != 0, errc::division_by_zero, "inverse of zero");
    // Extended Euclid on (a, q).
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q_, new_r = a;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t; new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r; new_r = tmp;
    }
    if (t < 0) t += q_;
    return felem(t);
}

felem PrimeField::pow(felem a, std::uint64_t e) const {
    check(a);
    felem result = 1 % q_;
    felem base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::uint64_t PrimeField::order(felem a) const {
    check(a);
    require(a != 0, errc::invalid_argument, "order of zero");
    std::uint64_t n = q_ - 1;
    for (std::uint32_t p : prime_factors(n))
        while (n % p == 0 && pow(a, n / p) == 1) n /= p;
    return n;
}

// --- extension fields -------------------------------------------------------

namespace {

// Dense univariate arithmetic over the base field, used only for modulus
// search and element reduction. Coefficient index = power of Y.
using bpoly = std::vector<felem>;

void btrim(bpoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

bpoly bmulmod(const PrimeField& f, const bpoly& a, const bpoly& b, const bpoly& mod) {
    bpoly prod(a.size() + b.size() - 1, 0);
    if (a.empty() || b.empty()) return {};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
    }
    // reduce by monic mod
    std::size_t t = mod.size() - 1;
    for (std::size_t k = prod.size(); k-- > t;) {
        felem c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (std::size_t j = 0; j < t; ++j)
            prod[k - t + j] = f.sub(prod[k - t + j], f.mul(c, mod[j]));
    }
    prod.resize(t);
    return prod;
}

bpoly bpowmod(const PrimeField& f, bpoly base, std::uint64_t e, const bpoly& mod) {
    bpoly result(mod.size() - 1, 0);
    result[0] = 1;
    while (e > 0) {
        if (e & 1) result = bmulmod(f, result, base, mod);
        base = bmulmod(f, base, base, mod);
        e >>= 1;
    }
    return result;
}

bpoly bgcd(const PrimeField& f, bpoly a, bpoly b) {
    btrim(a);
    btrim(b);
    while (!b.empty()) {
        // a mod b
        felem lead_inv = f.inv(b.back());
        while (a.size() >= b.size()) {
            felem c = f.mul(a.back(), lead_inv);
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
            btrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const PrimeField& f, const bpoly& mod) {
    std::uint32_t t = std::uint32_t(mod.size() - 1);
    if (t == 1) return true;
    // Y^(q^k) mod f via iterated q-th powers.
    bpoly y(2, 0);
    y[1] = 1;
    bpoly frob = y;
    std::vector<bpoly> powers(t + 1);
    for (std::uint32_t k = 1; k <= t; ++k) {
        frob = bpowmod(f, frob, f.q(), mod);
        powers[k] = frob;
    }
    // Y^(q^t) == Y mod f
    bpoly diff = powers[t];
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = f.sub(diff[1], 1);
    btrim(diff);
    if (!diff.empty()) return false;
    // gcd(Y^(q^(t/p)) - Y, f) == 1 for each prime p | t
    for (std::uint32_t p : prime_factors(t)) {
        bpoly d = powers[t / p];
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = f.sub(d[1], 1);
        bpoly g = bgcd(f, d, mod);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

ExtField build_extension(std::uint32_t q, std::uint32_t t) {
    PrimeField base(q);
    require(t >= 1, errc::invalid_argument, "extension degree must be >= 1");
    // Enumerate non-leading coefficient vectors as base-q integers, smallest
    // first; c[0] is the least significant digit.
    std::vector<felem> mod(t + 1, 0);
    mod[t] = 1;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < t && count < (1ULL << 40); ++i) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < t; ++i) {
            mod[i] = felem(v % q);
            v /= q;
        }
        if (mod[0] == 0) continue;  // reducible: divisible by Y
        if (is_irreducible(base, mod)) return ExtField(base, t, mod);
    }
    fail(errc::irreducible_search_failed, "no irreducible modulus found");
}

ExtField::ExtField(const PrimeField& base, std::uint32_t t)
    : ExtField(build_extension(base.q(), t)) {}

ExtField::ExtField(const PrimeField& base, std::uint32_t t, std::vector<felem> modpoly)
    : base_(base), t_(t), modpoly_(std::move(modpoly)) {
    require(t_ >= 1, errc::invalid_argument, "extension degree must be >= 1");
    require(modpoly_.size() == t_ + 1 && modpoly_[t_] == 1, errc::invalid_argument,
            "modulus must be monic of degree t");
    require(is_irreducible(base_, modpoly_), errc::invalid_modulus,
            "modulus polynomial is reducible");
}

void ExtField::check(const fvec& a) const {
    require(a.size() == t_, errc::invalid_argument, "element arity mismatch");
    for (felem c : a)
        require(c < base_.q(), errc::invalid_argument, "element out of range for F_q");
}

fvec ExtField::one() const {
    fvec v(t_, 0);
    v[0] = 1;
    return v;
}

fvec ExtField::from_base(felem a) const {
    fvec v(t_, 0);
    v[0] = a;
    return v;
}

bool ExtField::is_zero(const fvec& a) const {
    check(a);
    return std::all_of(a.begin(), a.end(), [](felem c) { return c == 0; });
}

fvec ExtField::add(const fvec& a, const fvec& b) const {
    check(a); check(b);
    fvec out(t_);
    for (std::uint32_t i = 0; i < t_; ++i) out[i] = base_.add(a[i], b[i]);
    return out;
}

fvec ExtField::sub(const fvec& a, const fvec& b) const {
    check(a); check(b);
    fvec out(t_);
    for (std::uint32_t i = 0; i < t_; ++i) out[i] = base_.sub(a[i], b[i]);
    return out;
}

fvec ExtField::neg(const fvec& a) const {
    check(a);
    fvec out(t_);
    for (std::uint32_t i = 0; i < t_; ++i) out[i] = base_.neg(a[i]);
    return out;
}

fvec ExtField::mul(const fvec& a, const fvec& b) const {
    check(a); check(b);
    bpoly prod = bmulmod(base_, a, b, modpoly_);
    prod.resize(t_, 0);
    return prod;
}

fvec ExtField::inv(const fvec& a) const {
    check(a);
    require(!is_zero(a), errc::division_by_zero, "inverse of zero");
    // Extended Euclid over F_q[Y].
    bpoly r0 = modpoly_, r1 = a;
    btrim(r1);
    bpoly s0, s1{1};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        bpoly quot;
        bpoly rem = r0;
        felem lead_inv = base_.inv(r1.back());
        while (rem.size() >= r1.size() && !rem.empty()) {
            std::size_t shift = rem.size() - r1.size();
            felem c = base_.mul(rem.back(), lead_inv);
            if (quot.size() < shift + 1) quot.resize(shift + 1, 0);
            quot[shift] = base_.add(quot[shift], c);
            for (std::size_t j = 0; j < r1.size(); ++j)
                rem[shift + j] = base_.sub(rem[shift + j], base_.mul(c, r1[j]));
            btrim(rem);
        }
        // s2 = s0 - q*s1
        bpoly qs(quot.size() + s1.size(), 0);
        if (!quot.empty() && !s1.empty()) {
            for (std::size_t i = 0; i < quot.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j)
                    qs[i + j] = base_.add(qs[i + j], base_.mul(quot[i], s1[j]));
        }
        bpoly s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = base_.sub(s2[i], qs[i]);
        btrim(s2);
        r0 = r1; r1 = rem;
        s0 = s1; s1 = s2;
    }
    // r0 = gcd (a constant, since modulus is irreducible)
    require(r0.size() == 1, errc::division_by_zero, "element not invertible");
    felem scale = base_.inv(r0[0]);
    s0.resize(t_, 0);
    for (felem& c : s0) c = base_.mul(c, scale);
    return s0;
}

fvec ExtField::pow(const fvec& a, std::uint64_t e) const {
    check(a);
    fvec result = one();
    fvec base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

fvec ExtField::pow_limbs(const fvec& a, const std::vector<std::uint32_t>& e) const {
    check(a);
    fvec result = one();
    // Process bits from most significant limb downward.
    bool started = false;
    for (std::size_t li = e.size(); li-- > 0;) {
        for (int bit = 31; bit >= 0; --bit) {
            if (started) result = mul(result, result);
            if ((e[li] >> bit) & 1) {
                result = mul(result, a);
                started = true;
            }
        }
    }
    return result;
}

fvec ExtField::phi(const fvec& coords) const {
    check(coords);
    return coords;
}

fvec ExtField::phi_inv(const fvec& elem) const {
    check(elem);
    return elem;
}

std::vector<std::uint32_t> ExtField::half_group_order_limbs() const {
    // (q^t - 1) / 2 in base-2^32 limbs.
    std::vector<std::uint32_t> limbs{1};
    for (std::uint32_t i = 0; i < t_; ++i) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs) {
            std::uint64_t v = std::uint64_t(limb) * base_.q() + carry;
            limb = std::uint32_t(v);
            carry = v >> 32;
        }
        if (carry) limbs.push_back(std::uint32_t(carry));
    }
    // subtract 1
    for (auto& limb : limbs) {
        if (limb > 0) { --limb; break; }
        limb = 0xFFFFFFFF;
    }
    // divide by 2
    std::uint32_t rem = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
        std::uint64_t v = (std::uint64_t(rem) << 32) | limbs[i];
        limbs[i] = std::uint32_t(v >> 1);
        rem = std::uint32_t(v & 1);
    }
    while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
    return limbs;
}

}  // namespace listrec
