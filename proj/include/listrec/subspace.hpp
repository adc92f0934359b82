#pragma once

#include <cstdint>
#include <vector>

#include "listrec/codes.hpp"
#include "listrec/linalg.hpp"
#include "listrec/poly.hpp"
#include "listrec/rational.hpp"

namespace listrec {

enum class OpMode : std::uint8_t { derivative, fold };

// Operator (A, B_0..B_{r-1}) cutting out an affine space of low-degree
// polynomials. Derivative mode: A(X) + sum_i B_i(X) f^(i)(X) = 0.
// Fold mode: A(X) + sum_i B_i(X) f(gamma^i X) = 0.
struct LinOperator {
    OpMode mode = OpMode::derivative;
    std::uint32_t r = 1;
    Poly A;
    std::vector<Poly> B;
    std::int64_t degree_cap = 0;  // D: deg A <= D, deg B_i <= D - d

    bool is_zero() const;
};

// v0 + V with deg <= d; empty == true means the defining system is
// inconsistent and the space contains no polynomial at all.
struct AffinePolySpace {
    bool empty = true;
    Poly v0;
    std::vector<Poly> basis;
    std::uint32_t d = 0;
    LinOperator op;

    std::size_t dim() const { return basis.size(); }
    bool contains(const PrimeField& f, const Poly& p) const;
};

enum class VanishMode : std::uint8_t { mult_order, fold };

namespace subspace {

// FindPolys interpolation step for multiplicity codes. In strict mode the
// variables-vs-constraints count is checked up front; in relaxed mode the
// solver runs regardless and fails only if the system has no nonzero
// solution.
LinOperator find_operator_mult(const ListWord& S, std::uint32_t r, const Rat& alpha,
                               const CodeParams& params, bool strict = true);

// Fold analogue: shift-agreement constraints A(g^l a) + sum_i B_i(g^l a)
// y_{l+i} = 0 over 0 <= l <= s-r, with candidate identity over f(gamma^i X).
LinOperator find_operator_frs(const ListWord& S, std::uint32_t r, const Rat& alpha,
                              const CodeParams& params, bool strict = true);

// Solves the operator identity for the d+1 coefficients of f.
AffinePolySpace solution_space(const PrimeField& f, const LinOperator& op, std::uint32_t d);

// Basis of the subspace of span(basis) vanishing at every point: with order
// s at each point (mult_order), or at the s fold-shifts gamma^j a (fold).
std::vector<Poly> vanish_subspace(const PrimeField& f, const std::vector<Poly>& basis,
                                  const std::vector<felem>& points, VanishMode mode,
                                  std::uint32_t s);

// Whether span(W) is closed under multiplication by X^q wherever degree
// permits. Tested on a degree-distinct echelon basis, which suffices.
bool is_xq_closed(const PrimeField& f, const std::vector<Poly>& W, std::uint32_t d);

struct QdimBasis {
    std::size_t qdim = 0;
    std::vector<Poly> gens;  // pairwise distinct degrees mod q; X^{cq} multiples span W
};

// Greedy lowest-degree-first generators of a (X^q, d)-closed subspace.
QdimBasis qdim_and_basis(const PrimeField& f, const std::vector<Poly>& W, std::uint32_t d);

// Echelon basis with pairwise distinct degrees, ascending.
std::vector<Poly> degree_distinct_basis(const PrimeField& f, const std::vector<Poly>& W,
                                        std::uint32_t d);

std::size_t space_dim(const PrimeField& f, const std::vector<Poly>& W, std::uint32_t d);

}  // namespace subspace
}  // namespace listrec
