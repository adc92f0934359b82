#include "listrec/linalg.hpp"

#include <algorithm>

namespace listrec::linalg {

std::vector<std::size_t> rref(const PrimeField& f, Mat& m) {
    const std::uint64_t q = f.q();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
        felem* prow = &m.a[row * m.cols];
        if (prow[col] != 1) {
            std::uint64_t scale = f.inv(prow[col]);
            for (std::size_t c = col; c < m.cols; ++c)
                prow[c] = felem((prow[c] * scale) % q);
        }
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            felem* rrow = &m.a[r * m.cols];
            std::uint64_t c0 = rrow[col];
            if (c0 == 0) continue;
            std::uint64_t neg = q - c0;
            for (std::size_t c = col; c < m.cols; ++c)
                rrow[c] = felem((rrow[c] + neg * prow[c]) % q);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const PrimeField& f, Mat m) { return rref(f, m).size(); }

LinSolve solve(const PrimeField& f, const Mat& m, const std::vector<felem>& b) {
    require(b.size() == m.rows, errc::dimension_mismatch, "solve: rhs length mismatch");
    Mat aug(m.rows, m.cols + 1);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    auto pivots = rref(f, aug);
    LinSolve out;
    if (!pivots.empty() && pivots.back() == m.cols) return out;  // 0 = 1 row
    out.consistent = true;
    out.particular.assign(m.cols, 0);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        is_pivot[pivots[r]] = true;
        out.particular[pivots[r]] = aug.at(r, m.cols);
    }
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<felem> k(m.cols, 0);
        k[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            k[pivots[r]] = f.neg(aug.at(r, c));
        out.kernel.push_back(std::move(k));
    }
    return out;
}

std::vector<std::vector<felem>> nullspace(const PrimeField& f, const Mat& m) {
    return solve(f, m, std::vector<felem>(m.rows, 0)).kernel;
}

bool in_span(const PrimeField& f, const std::vector<std::vector<felem>>& basis,
             const std::vector<felem>& v) {
    if (basis.empty()) return std::all_of(v.begin(), v.end(), [](felem c) { return c == 0; });
    Mat m(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        require(basis[j].size() == v.size(), errc::dimension_mismatch, "in_span length mismatch");
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = basis[j][i];
    }
    return solve(f, m, v).consistent;
}

std::vector<std::vector<felem>> row_basis(const PrimeField& f,
                                          std::vector<std::vector<felem>> vecs) {
    if (vecs.empty()) return {};
    std::size_t n = vecs[0].size();
    Mat m(vecs.size(), n);
    for (std::size_t r = 0; r < vecs.size(); ++r) {
        require(vecs[r].size() == n, errc::dimension_mismatch, "row_basis length mismatch");
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = vecs[r][c];
    }
    auto pivots = rref(f, m);
    std::vector<std::vector<felem>> out;
    for (std::size_t r = 0; r < pivots.size(); ++r)
        out.emplace_back(m.a.begin() + r * n, m.a.begin() + (r + 1) * n);
    return out;
}

}  // namespace listrec::linalg
