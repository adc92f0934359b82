#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "listrec/field.hpp"

namespace listrec {

// Dense univariate polynomial over a prime field; index k = coefficient of
// X^k, trailing coefficient nonzero (zero polynomial = empty vector).
struct Poly {
    std::vector<felem> c;

    static Poly zero() { return {}; }
    static Poly constant(felem v) { return v == 0 ? Poly{} : Poly{{v}}; }

    // degree, or -1 for the zero polynomial
    std::int64_t degree() const { return std::int64_t(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    felem coeff(std::size_t k) const { return k < c.size() ? c[k] : 0; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator<(const Poly& o) const { return c < o.c; }
};

// Sparse m-variate polynomial; exponent vectors of length m map to nonzero
// coefficients.
struct MultiPoly {
    std::uint32_t m = 1;
    std::map<std::vector<std::uint32_t>, felem> terms;

    bool is_zero() const { return terms.empty(); }
    std::int64_t total_degree() const;
    bool operator==(const MultiPoly& o) const { return m == o.m && terms == o.terms; }
};

std::uint32_t weight(const std::vector<std::uint32_t>& e);

// Exponent vectors of U_{m,s} = { i : wt(i) < s } in the serialization order
// used everywhere: grade ascending, lexicographically descending within a
// grade. For m = 1 this is 0, 1, ..., s-1.
std::vector<std::vector<std::uint32_t>> deriv_indices(std::uint32_t m, std::uint32_t s);

// |U_{m,s}| = C(m+s-1, m)
std::size_t deriv_index_count(std::uint32_t m, std::uint32_t s);

namespace poly {

// C(n, k) mod q via Lucas' theorem.
felem binom_mod(const PrimeField& f, std::uint64_t n, std::uint64_t k);

Poly add(const PrimeField& f, const Poly& a, const Poly& b);
Poly sub(const PrimeField& f, const Poly& a, const Poly& b);
Poly scale(const PrimeField& f, const Poly& a, felem s);
Poly mul(const PrimeField& f, const Poly& a, const Poly& b);
// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b);
felem eval(const PrimeField& f, const Poly& p, felem x);
// p(c0 + c1*X)
Poly compose_affine(const PrimeField& f, const Poly& p, felem c0, felem c1);

// i'th Hasse derivative: coefficient of Z^i in p(X+Z).
Poly hasse_derive(const PrimeField& f, const Poly& p, std::uint64_t i);
// [p(a), p^(1)(a), ..., p^(s-1)(a)]
std::vector<felem> eval_order(const PrimeField& f, const Poly& p, felem a, std::uint32_t s);

MultiPoly mp_add(const PrimeField& f, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_mul(const PrimeField& f, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_hasse_derive(const PrimeField& f, const MultiPoly& p,
                          const std::vector<std::uint32_t>& i);
felem mp_eval(const PrimeField& f, const MultiPoly& p, const std::vector<felem>& a);
// (p^(i)(a))_{i in U_{m,s}} in deriv_indices order
std::vector<felem> mp_eval_order(const PrimeField& f, const MultiPoly& p,
                                 const std::vector<felem>& a, std::uint32_t s);
// p(x + T b) as a univariate polynomial in T
Poly restrict_line(const PrimeField& f, const MultiPoly& p, const std::vector<felem>& x,
                   const std::vector<felem>& b);
// p(Y - b) style multivariate affine shift: substitute X_j -> X_j + shift_j
MultiPoly mp_shift(const PrimeField& f, const MultiPoly& p, const std::vector<felem>& shift);

// Restriction of a symbol z in Sigma_{m,s} to direction b:
// h^(j) = sum_{wt(i)=j} z^(i) b^i for j < s.
std::vector<felem> restrict_symbol(const PrimeField& f, const std::vector<felem>& z,
                                   const std::vector<felem>& b, std::uint32_t m,
                                   std::uint32_t s);

// Determinant of the t x t matrix with entry (i, j) = f_j^(i), Hasse rows.
Poly wronskian_det(const PrimeField& f, const std::vector<Poly>& fs);

}  // namespace poly
}  // namespace listrec
