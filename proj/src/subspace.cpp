#include "listrec/subspace.hpp"

#include <algorithm>
#include <set>

namespace listrec {

bool LinOperator::is_zero() const {
    if (!A.is_zero()) return false;
    for (const auto& b : B)
        if (!b.is_zero()) return false;
    return true;
}

bool AffinePolySpace::contains(const PrimeField& f, const Poly& p) const {
    if (empty) return false;
    Poly delta = poly::sub(f, p, v0);
    std::vector<felem> target(d + 1, 0);
    for (std::size_t k = 0; k < delta.c.size(); ++k) {
        if (std::int64_t(k) > std::int64_t(d)) return false;
        target[k] = delta.c[k];
    }
    std::vector<std::vector<felem>> vecs;
    for (const auto& b : basis) {
        std::vector<felem> v(d + 1, 0);
        for (std::size_t k = 0; k < b.c.size(); ++k) v[k] = b.c[k];
        vecs.push_back(std::move(v));
    }
    return linalg::in_span(f, vecs, target);
}

namespace subspace {

namespace {

struct UnknownLayout {
    std::int64_t D;       // cap on deg A
    std::int64_t bd;      // cap on deg B_i = D - d
    std::uint32_t r;
    std::size_t a_count() const { return std::size_t(D + 1); }
    std::size_t b_count() const { return std::size_t(bd + 1); }
    std::size_t total() const { return a_count() + r * b_count(); }
    std::size_t a_col(std::int64_t k) const { return std::size_t(k); }
    std::size_t b_col(std::uint32_t i, std::int64_t k) const {
        return a_count() + i * b_count() + std::size_t(k);
    }
};

LinOperator extract_operator(const std::vector<felem>& sol, const UnknownLayout& lay,
                             OpMode mode) {
    LinOperator op;
    op.mode = mode;
    op.r = lay.r;
    op.degree_cap = lay.D;
    op.A.c.assign(sol.begin(), sol.begin() + lay.a_count());
    op.A.trim();
    op.B.resize(lay.r);
    for (std::uint32_t i = 0; i < lay.r; ++i) {
        op.B[i].c.assign(sol.begin() + lay.b_col(i, 0), sol.begin() + lay.b_col(i, 0) + lay.b_count());
        op.B[i].trim();
    }
    return op;
}

UnknownLayout make_layout(std::uint32_t s, std::uint32_t r, const Rat& alpha, std::size_t n_eval,
                          std::uint32_t d) {
    Rat cap = Rat(std::int64_t(s) - r + 1) * (Rat(1) - alpha) * Rat(std::int64_t(n_eval));
    UnknownLayout lay;
    lay.D = cap.ceil() - 1;
    lay.bd = lay.D - d;
    lay.r = r;
    return lay;
}

std::size_t row_count(const ListWord& S, std::uint32_t shifts) {
    std::size_t rows = 0;
    for (const auto& list : S.lists) rows += list.size() * shifts;
    return rows;
}

LinOperator solve_operator(const PrimeField& f, const Mat& m, const UnknownLayout& lay,
                           OpMode mode) {
    auto kernel = linalg::nullspace(f, m);
    require(!kernel.empty(), errc::under_determined,
            "operator system has no nonzero solution; alpha too large or r too small");
    return extract_operator(kernel.front(), lay, mode);
}

void check_counts(bool strict, const UnknownLayout& lay, std::size_t rows) {
    if (!strict) return;
    require(lay.bd >= 0 && lay.total() > rows, errc::under_determined,
            "fewer unknowns than constraints; alpha too large or r too small");
}

}  // namespace

LinOperator find_operator_mult(const ListWord& S, std::uint32_t r, const Rat& alpha,
                               const CodeParams& params, bool strict) {
    const PrimeField& f = params.field;
    require(params.family == Family::mult && params.m == 1, errc::invalid_argument,
            "find_operator_mult needs univariate multiplicity params");
    require(r >= 1 && r <= params.s, errc::invalid_argument, "need 1 <= r <= s");
    require(S.lists.size() == params.evalset.size(), errc::dimension_mismatch,
            "list word length mismatch");
    std::uint32_t shifts = params.s - r + 1;
    UnknownLayout lay = make_layout(params.s, r, alpha, params.evalset.size(), params.d);
    require(lay.bd >= 0, errc::under_determined, "interpolation degree cap below d");
    check_counts(strict, lay, row_count(S, shifts));

    Mat m(row_count(S, shifts), lay.total());
    std::size_t row = 0;
    for (std::size_t pos = 0; pos < S.lists.size(); ++pos) {
        felem x = params.evalset[pos];
        for (const auto& y : S.lists[pos]) {
            require(y.size() == params.s, errc::dimension_mismatch, "symbol arity mismatch");
            for (std::uint32_t lam = 0; lam < shifts; ++lam, ++row) {
                // A^(lam)(x) contribution
                for (std::int64_t k = lam; k <= lay.D; ++k)
                    m.at(row, lay.a_col(k)) =
                        f.mul(poly::binom_mod(f, k, lam), f.pow(x, k - lam));
                // sum_j C(i+j,i) y^{(i+j)} B_i^{(lam-j)}(x)
                for (std::uint32_t i = 0; i < r; ++i) {
                    for (std::uint32_t j = 0; j <= lam; ++j) {
                        felem w = f.mul(poly::binom_mod(f, i + j, i), y[i + j]);
                        if (w == 0) continue;
                        std::uint32_t ord = lam - j;
                        for (std::int64_t k = ord; k <= lay.bd; ++k) {
                            felem c = f.mul(w, f.mul(poly::binom_mod(f, k, ord),
                                                     f.pow(x, k - ord)));
                            m.at(row, lay.b_col(i, k)) = f.add(m.at(row, lay.b_col(i, k)), c);
                        }
                    }
                }
            }
        }
    }
    return solve_operator(f, m, lay, OpMode::derivative);
}

LinOperator find_operator_frs(const ListWord& S, std::uint32_t r, const Rat& alpha,
                              const CodeParams& params, bool strict) {
    const PrimeField& f = params.field;
    require(params.family == Family::frs, errc::invalid_argument,
            "find_operator_frs needs frs params");
    require(r >= 1 && r <= params.s, errc::invalid_argument, "need 1 <= r <= s");
    require(S.lists.size() == params.evalset.size(), errc::dimension_mismatch,
            "list word length mismatch");
    std::uint32_t shifts = params.s - r + 1;
    UnknownLayout lay = make_layout(params.s, r, alpha, params.evalset.size(), params.d);
    require(lay.bd >= 0, errc::under_determined, "interpolation degree cap below d");
    check_counts(strict, lay, row_count(S, shifts));

    Mat m(row_count(S, shifts), lay.total());
    std::size_t row = 0;
    for (std::size_t pos = 0; pos < S.lists.size(); ++pos) {
        felem a = params.evalset[pos];
        for (const auto& y : S.lists[pos]) {
            require(y.size() == params.s, errc::dimension_mismatch, "symbol arity mismatch");
            for (std::uint32_t lam = 0; lam < shifts; ++lam, ++row) {
                felem x = f.mul(a, f.pow(f.gamma(), lam));
                felem xp = 1;
                for (std::int64_t k = 0; k <= lay.D; ++k) {
                    m.at(row, lay.a_col(k)) = xp;
                    if (k <= lay.bd)
                        for (std::uint32_t i = 0; i < r; ++i)
                            m.at(row, lay.b_col(i, k)) = f.mul(xp, y[lam + i]);
                    xp = f.mul(xp, x);
                }
            }
        }
    }
    return solve_operator(f, m, lay, OpMode::fold);
}

AffinePolySpace solution_space(const PrimeField& f, const LinOperator& op, std::uint32_t d) {
    require(!op.is_zero(), errc::invalid_argument, "solution_space of the zero operator");
    std::int64_t tmax = op.A.degree();
    for (std::uint32_t i = 0; i < op.r; ++i)
        if (!op.B[i].is_zero()) tmax = std::max(tmax, op.B[i].degree() + std::int64_t(d));
    std::size_t rows = std::size_t(tmax + 1);
    Mat m(rows, d + 1);
    std::vector<felem> rhs(rows, 0);
    for (std::size_t t = 0; t < rows; ++t) rhs[t] = f.neg(op.A.coeff(t));
    if (op.mode == OpMode::derivative) {
        for (std::uint32_t k = 0; k <= d; ++k)
            for (std::uint32_t i = 0; i < op.r; ++i) {
                if (i > k) break;
                felem bin = poly::binom_mod(f, k, i);
                if (bin == 0) continue;
                // coefficient of X^t in C(k,i) X^{k-i} B_i(X)
                for (std::size_t bk = 0; bk < op.B[i].c.size(); ++bk) {
                    std::size_t t = bk + k - i;
                    if (t >= rows) break;
                    m.at(t, k) = f.add(m.at(t, k), f.mul(bin, op.B[i].c[bk]));
                }
            }
    } else {
        for (std::uint32_t k = 0; k <= d; ++k)
            for (std::uint32_t i = 0; i < op.r; ++i) {
                felem g = f.pow(f.gamma(), std::uint64_t(i) * k);
                for (std::size_t bk = 0; bk < op.B[i].c.size(); ++bk) {
                    std::size_t t = bk + k;
                    if (t >= rows) break;
                    m.at(t, k) = f.add(m.at(t, k), f.mul(g, op.B[i].c[bk]));
                }
            }
    }
    auto sol = linalg::solve(f, m, rhs);
    AffinePolySpace out;
    out.d = d;
    out.op = op;
    if (!sol.consistent) return out;
    out.empty = false;
    out.v0.c = sol.particular;
    out.v0.trim();
    for (auto& k : sol.kernel) {
        Poly b;
        b.c = std::move(k);
        b.trim();
        out.basis.push_back(std::move(b));
    }
    return out;
}

std::vector<Poly> vanish_subspace(const PrimeField& f, const std::vector<Poly>& basis,
                                  const std::vector<felem>& points, VanishMode mode,
                                  std::uint32_t s) {
    if (basis.empty()) return {};
    if (points.empty()) return basis;
    std::size_t rows = points.size() * s;
    Mat m(rows, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        std::size_t row = 0;
        for (felem b : points) {
            if (mode == VanishMode::mult_order) {
                auto ev = poly::eval_order(f, basis[j], b, s);
                for (std::uint32_t i = 0; i < s; ++i, ++row) m.at(row, j) = ev[i];
            } else {
                felem x = b;
                for (std::uint32_t i = 0; i < s; ++i, ++row) {
                    m.at(row, j) = poly::eval(f, basis[j], x);
                    x = f.mul(x, f.gamma());
                }
            }
        }
    }
    auto kernel = linalg::nullspace(f, m);
    std::vector<Poly> out;
    for (const auto& combo : kernel) {
        Poly p;
        for (std::size_t j = 0; j < basis.size(); ++j)
            p = poly::add(f, p, poly::scale(f, basis[j], combo[j]));
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Poly> degree_distinct_basis(const PrimeField& f, const std::vector<Poly>& W,
                                        std::uint32_t d) {
    if (W.empty()) return {};
    // Reverse coefficients so rref pivots on the highest power first.
    std::vector<std::vector<felem>> rows;
    for (const auto& p : W) {
        require(p.degree() <= std::int64_t(d), errc::invalid_argument,
                "basis degree exceeds bound");
        std::vector<felem> v(d + 1, 0);
        for (std::size_t k = 0; k < p.c.size(); ++k) v[d - k] = p.c[k];
        rows.push_back(std::move(v));
    }
    auto reduced = linalg::row_basis(f, std::move(rows));
    std::vector<Poly> out;
    for (const auto& v : reduced) {
        Poly p;
        p.c.assign(d + 1, 0);
        for (std::size_t k = 0; k <= d; ++k) p.c[k] = v[d - k];
        p.trim();
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
    return out;
}

std::size_t space_dim(const PrimeField& f, const std::vector<Poly>& W, std::uint32_t d) {
    return degree_distinct_basis(f, W, d).size();
}

bool is_xq_closed(const PrimeField& f, const std::vector<Poly>& W, std::uint32_t d) {
    auto basis = degree_distinct_basis(f, W, d);
    if (basis.empty()) return true;
    std::vector<std::vector<felem>> span_vecs;
    for (const auto& p : basis) {
        std::vector<felem> v(d + 1, 0);
        for (std::size_t k = 0; k < p.c.size(); ++k) v[k] = p.c[k];
        span_vecs.push_back(std::move(v));
    }
    for (const auto& p : basis) {
        if (p.degree() + f.q() > std::int64_t(d)) continue;
        std::vector<felem> shifted(d + 1, 0);
        for (std::size_t k = 0; k < p.c.size(); ++k) shifted[k + f.q()] = p.c[k];
        if (!linalg::in_span(f, span_vecs, shifted)) return false;
    }
    return true;
}

QdimBasis qdim_and_basis(const PrimeField& f, const std::vector<Poly>& W, std::uint32_t d) {
    require(is_xq_closed(f, W, d), errc::not_closed, "subspace is not (X^q, d)-closed");
    auto basis = degree_distinct_basis(f, W, d);
    QdimBasis out;
    std::set<std::int64_t> covered;  // degrees of X^{cq} f_i module elements
    for (const auto& g : basis) {
        if (covered.count(g.degree())) continue;
        // lowest-degree element outside the module found so far
        Poly gen = poly::scale(f, g, f.inv(g.c.back()));
        for (std::int64_t deg = gen.degree(); deg <= std::int64_t(d); deg += f.q())
            covered.insert(deg);
        out.gens.push_back(std::move(gen));
    }
    out.qdim = out.gens.size();
    return out;
}

}  // namespace subspace
}  // namespace listrec
