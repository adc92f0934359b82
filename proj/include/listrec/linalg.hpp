#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "listrec/field.hpp"

namespace listrec {

// Dense row-major matrix over a prime field.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<felem> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    felem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    felem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

struct LinSolve {
    bool consistent = false;
    std::vector<felem> particular;           // one solution, when consistent
    std::vector<std::vector<felem>> kernel;  // basis of the homogeneous solutions
};

namespace linalg {

// In-place reduced row echelon form; pivot = first row with a nonzero entry
// in the current column. Returns the pivot column indices.
std::vector<std::size_t> rref(const PrimeField& f, Mat& m);

std::size_t rank(const PrimeField& f, Mat m);

// Solves A x = b exactly; kernel basis vectors have one free variable set to
// 1 and the rest 0, in column order.
LinSolve solve(const PrimeField& f, const Mat& m, const std::vector<felem>& b);

// Nullspace basis of A x = 0.
std::vector<std::vector<felem>> nullspace(const PrimeField& f, const Mat& m);

// Whether v lies in the span of the given vectors (all of equal length).
bool in_span(const PrimeField& f, const std::vector<std::vector<felem>>& basis,
             const std::vector<felem>& v);

// Row-reduces the vectors to an independent spanning subset (echelon basis).
std::vector<std::vector<felem>> row_basis(const PrimeField& f,
                                          std::vector<std::vector<felem>> vecs);

}  // namespace linalg
}  // namespace listrec
