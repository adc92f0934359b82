#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "listrec/field.hpp"
#include "listrec/poly.hpp"
#include "listrec/rational.hpp"

namespace listrec {

// A vector-valued list-recovery instance on the grid U^m. Lists hold
// t-vectors over the base prime field; grid points are indexed
// lexicographically over U^m with the first coordinate most significant.
struct GridInstance {
    PrimeField field{2, 1};
    std::vector<felem> U;
    std::uint32_t m = 1;
    std::uint32_t stilde = 1;
    std::uint32_t t = 1;
    std::uint32_t ell = 1;
    Rat alpha;
    std::uint64_t K = 4;
    std::vector<std::vector<std::vector<felem>>> lists;
    // Relaxed-mode overrides for the recursion's internal radii; defaults are
    // 1 - (m-1)/sqrt(K) for slices and 1 - 1/sqrt(K) for the combine step.
    std::optional<Rat> slice_radius;
    std::optional<Rat> combine_radius;
    // Enforce |U| >= 2 ell stilde K, K >= m^2, alpha <= 1 - m/sqrt(K).
    bool strict = false;

    std::size_t grid_size() const;
    std::size_t grid_index(const std::vector<std::uint32_t>& u_pos) const;
};

namespace rm_grid {

// Sudan list recovery for Reed-Solomon codes: every polynomial of degree
// <= stilde whose values land in the per-position lists on all but an alpha
// fraction of positions. Interpolation uses a (1, stilde)-weighted degree
// budget below the agreement count A, which must satisfy A^2 >= 4 n stilde
// (n = total point-list pairs).
std::vector<Poly> sudan_list_recover(const PrimeField& f,
                                     const std::vector<std::pair<felem, std::vector<felem>>>& pts,
                                     std::uint32_t stilde, const Rat& alpha);

// Same decoder over an extension field; returned polynomials have fvec
// coefficients, constant term first.
std::vector<std::vector<fvec>> sudan_list_recover_ext(
    const ExtField& K, const std::vector<std::pair<fvec, std::vector<fvec>>>& pts,
    std::uint32_t stilde, const Rat& alpha);

// Vector-valued Reed-Muller list recovery on U^m by slice/combine recursion
// through the big-field reduction; output tuples are distance-verified and
// capped at 2 K ell entries.
std::vector<std::vector<MultiPoly>> vector_rm_list_recover(const GridInstance& inst);

}  // namespace rm_grid
}  // namespace listrec
