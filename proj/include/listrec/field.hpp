#pragma once

#include <cstdint>
#include <vector>

#include "listrec/errors.hpp"

namespace listrec {

using felem = std::uint32_t;
// Extension-field element: coefficient vector of length t over the base
// prime field, index k = coefficient of Y^k.
using fvec = std::vector<felem>;

// Arithmetic context for a prime field F_q. Immutable after construction;
// every operation checks its operands are canonical residues in [0, q).
class PrimeField {
  public:
    explicit PrimeField(std::uint32_t q);
    PrimeField(std::uint32_t q, felem gamma);

    std::uint32_t q() const { return q_; }
    // Primitive element (smallest one, fixed at construction).
    felem gamma() const { return gamma_; }

    felem add(felem a, felem b) const {
        check(a); check(b);
        std::uint64_t s = std::uint64_t(a) + b;
        return s >= q_ ? felem(s - q_) : felem(s);
    }
    felem sub(felem a, felem b) const {
        check(a); check(b);
        return a >= b ? a - b : felem(a + q_ - b);
    }
    felem neg(felem a) const {
        check(a);
        return a == 0 ? 0 : q_ - a;
    }
    felem mul(felem a, felem b) const {
        check(a); check(b);
        return felem((std::uint64_t(a) * b) % q_);
    }
    felem inv(felem a) const;
    felem div(felem a, felem b) const { return mul(a, inv(b)); }
    felem pow(felem a, std::uint64_t e) const;

    // Multiplicative order of a nonzero element.
    std::uint64_t order(felem a) const;

    bool operator==(const PrimeField& o) const { return q_ == o.q_ && gamma_ == o.gamma_; }

  private:
    void check(felem a) const {
        require(a < q_, errc::invalid_argument, "element out of range for F_q");
    }

    std::uint32_t q_;
    felem gamma_;
};

// Smallest primitive element of F_q*; order verified against the prime
// factorization of q-1.
felem find_primitive(std::uint32_t q);

bool is_prime(std::uint32_t q);
std::vector<std::uint32_t> prime_factors(std::uint64_t n);

// GF(q^t) as F_q[Y] mod a monic irreducible of degree t. Elements are
// coefficient vectors of length t; the F_q-linear bijection between F_q^t
// and the field is the identity on that representation.
class ExtField {
  public:
    ExtField(const PrimeField& base, std::uint32_t t);
    ExtField(const PrimeField& base, std::uint32_t t, std::vector<felem> modpoly);

    const PrimeField& base() const { return base_; }
    std::uint32_t t() const { return t_; }
    const std::vector<felem>& modpoly() const { return modpoly_; }

    fvec zero() const { return fvec(t_, 0); }
    fvec one() const;
    fvec from_base(felem a) const;
    bool is_zero(const fvec& a) const;

    fvec add(const fvec& a, const fvec& b) const;
    fvec sub(const fvec& a, const fvec& b) const;
    fvec neg(const fvec& a) const;
    fvec mul(const fvec& a, const fvec& b) const;
    fvec inv(const fvec& a) const;
    fvec div(const fvec& a, const fvec& b) const { return mul(a, inv(b)); }
    fvec pow(const fvec& a, std::uint64_t e) const;
    // a^e for e given in base-2^32 limbs, least significant first.
    fvec pow_limbs(const fvec& a, const std::vector<std::uint32_t>& e) const;

    // Vector-of-coordinates <-> field element bijection (identity layout).
    fvec phi(const fvec& coords) const;
    fvec phi_inv(const fvec& elem) const;

    // (q^t - 1) / 2 as base-2^32 limbs; used by root finding in odd
    // characteristic.
    std::vector<std::uint32_t> half_group_order_limbs() const;

  private:
    void check(const fvec& a) const;

    PrimeField base_;
    std::uint32_t t_;
    std::vector<felem> modpoly_;
};

// Context with the lexicographically-smallest irreducible modulus, so test
// vectors are stable.
ExtField build_extension(std::uint32_t q, std::uint32_t t);

}  // namespace listrec
