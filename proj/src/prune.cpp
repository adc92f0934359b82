#include "listrec/prune.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace listrec::prune {

namespace {

constexpr std::uint64_t kMaxChoices = 1u << 24;

// Constraint rows "space element agrees with symbol y at position pos" as a
// linear system in the basis coefficients.
struct ConstraintBuilder {
    const PrimeField& f;
    const CodeParams& params;
    const AffinePolySpace& space;

    // per position: evaluation of v0 and of each basis element (arity rows)
    std::vector<felem> v0_sym(std::size_t pos) const { return symbol_of(space.v0, pos); }

    std::vector<felem> symbol_of(const Poly& p, std::size_t pos) const {
        if (params.family == Family::frs) {
            felem a = params.evalset[pos];
            std::vector<felem> sym(params.s);
            felem x = a;
            for (std::uint32_t i = 0; i < params.s; ++i) {
                sym[i] = poly::eval(f, p, x);
                x = f.mul(x, f.gamma());
            }
            return sym;
        }
        return poly::eval_order(f, p, params.evalset[pos], params.s);
    }
};

std::vector<Poly> prune_common(const ListWord& S, const AffinePolySpace& space,
                               const CodeParams& params, std::uint32_t tau, rng::Stream& rng) {
    require(tau >= 1, errc::invalid_argument, "tau must be >= 1");
    std::vector<Poly> out;
    if (space.empty) return out;
    const PrimeField& f = params.field;
    std::size_t n = S.lists.size();
    require(n == params.block_length(), errc::dimension_mismatch, "list word length mismatch");

    std::vector<std::size_t> coords(tau);
    for (auto& b : coords) b = std::size_t(rng.below(n));

    std::uint64_t choice_count = 1;
    for (auto b : coords) {
        choice_count *= S.lists[b].size();
        require(choice_count <= kMaxChoices, errc::invalid_argument,
                "too many list choices (ell^tau)");
        if (choice_count == 0) return out;
    }

    ConstraintBuilder cb{f, params, space};
    std::size_t dim = space.dim();
    std::uint32_t arity = std::uint32_t(params.symbol_arity());

    // Precompute basis and v0 symbols at the sampled coordinates.
    std::vector<std::vector<felem>> v0_syms(tau);
    std::vector<std::vector<std::vector<felem>>> basis_syms(tau);
    for (std::uint32_t j = 0; j < tau; ++j) {
        v0_syms[j] = cb.v0_sym(coords[j]);
        basis_syms[j].reserve(dim);
        for (const auto& b : space.basis) basis_syms[j].push_back(cb.symbol_of(b, coords[j]));
    }

    Mat m(std::size_t(tau) * arity, dim);
    for (std::uint32_t j = 0; j < tau; ++j)
        for (std::uint32_t i = 0; i < arity; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                m.at(std::size_t(j) * arity + i, k) = basis_syms[j][k][i];

    std::set<Poly> seen;
    std::vector<std::size_t> pick(tau, 0);
    for (std::uint64_t it = 0; it < choice_count; ++it) {
        std::uint64_t v = it;
        for (std::uint32_t j = 0; j < tau; ++j) {
            pick[j] = std::size_t(v % S.lists[coords[j]].size());
            v /= S.lists[coords[j]].size();
        }
        std::vector<felem> rhs(std::size_t(tau) * arity);
        for (std::uint32_t j = 0; j < tau; ++j) {
            const auto& y = S.lists[coords[j]][pick[j]];
            for (std::uint32_t i = 0; i < arity; ++i)
                rhs[std::size_t(j) * arity + i] = f.sub(y[i], v0_syms[j][i]);
        }
        auto sol = linalg::solve(f, m, rhs);
        if (!sol.consistent || !sol.kernel.empty()) continue;  // zero or several matches
        Poly p = space.v0;
        for (std::size_t k = 0; k < dim; ++k)
            p = poly::add(f, p, poly::scale(f, space.basis[k], sol.particular[k]));
        if (seen.insert(p).second) out.push_back(std::move(p));
    }
    return out;
}

std::uint32_t ceil_of(double x) {
    return std::uint32_t(std::ceil(x - 1e-12));
}

std::uint32_t default_repetitions(double p0, double list_estimate,
                                  const std::optional<std::uint32_t>& override_reps) {
    if (override_reps) return *override_reps;
    require(p0 > 0.0, errc::config_invalid,
            "success bound is not positive; pass repetitions explicitly");
    return std::max(1u, ceil_of(std::log(100.0 * std::max(1.0, list_estimate)) / p0));
}

std::vector<Poly> finish(std::vector<Poly> found, const ListWord& S, const CodeParams& params,
                         const Rat& alpha) {
    std::vector<Poly> out;
    std::set<Poly> seen;
    for (auto& p : found) {
        if (!seen.insert(p).second) continue;
        Codeword c = codes::encode(params, p);
        if (codes::dist(c, S) <= alpha) out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Poly> prune_frs(const ListWord& S, const AffinePolySpace& space,
                            const CodeParams& params, std::uint32_t tau, rng::Stream& rng) {
    require(params.family == Family::frs, errc::invalid_argument, "prune_frs needs frs params");
    require(space.empty || space.op.mode == OpMode::fold, errc::invalid_argument,
            "prune_frs needs a fold-mode space");
    return prune_common(S, space, params, tau, rng);
}

std::vector<Poly> prune_mult(const ListWord& S, const AffinePolySpace& space,
                             const CodeParams& params, std::uint32_t tau, rng::Stream& rng) {
    require(params.family == Family::mult && params.m == 1, errc::invalid_argument,
            "prune_mult needs univariate multiplicity params");
    if (!space.empty) {
        require(space.op.mode == OpMode::derivative, errc::closure_violation,
                "prune_mult needs a derivative-mode space");
        if (!space.basis.empty()) {
            auto qb = subspace::qdim_and_basis(params.field, space.basis, space.d);
            require(space.d <= (params.s - qb.qdim) * std::uint64_t(params.field.q()),
                    errc::closure_violation, "degree bound exceeds (s - qdim) q");
        }
    }
    return prune_common(S, space, params, tau, rng);
}

std::vector<Poly> list_recover_frs(const ListWord& S, const CodeParams& params, const Rat& eps,
                                   std::uint32_t ell, rng::Stream& rng,
                                   const RecoverOptions& opts, PipelineTrace* trace) {
    require(params.family == Family::frs, errc::invalid_argument, "frs params required");
    require(eps > Rat(0), errc::invalid_argument, "eps must be positive");
    const std::uint32_t s = params.s;
    if (opts.strict)
        require(Rat(16 * std::int64_t(ell)) / (eps * eps) <= Rat(s), errc::regime_violation,
                "need s >= 16 ell / eps^2");
    Rat alpha = opts.alpha ? *opts.alpha
                           : Rat(1) - Rat(params.d, std::int64_t(s) * params.n) - eps;
    if (alpha < Rat(0)) alpha = Rat(0);
    std::uint32_t r = opts.r ? *opts.r : std::uint32_t((Rat(4 * std::int64_t(ell)) / eps).ceil());
    require(r >= 1 && r <= s, errc::invalid_argument, "r out of range");
    double epsd = eps.to_double();
    std::uint32_t tau =
        opts.tau ? *opts.tau : std::max(1u, ceil_of((2.0 / epsd) * std::log(4.0 * ell / epsd)));

    LinOperator op = subspace::find_operator_frs(S, r, alpha, params, opts.strict);
    AffinePolySpace space = subspace::solution_space(params.field, op, params.d);

    double one_minus_alpha = (Rat(1) - alpha).to_double();
    double p0 = std::pow(one_minus_alpha, tau);
    if (!space.empty && space.dim() > 0 && s > r)
        p0 -= double(r) * std::pow(double(params.d) / (double(s - r) * params.n), tau);
    double lest = 2.0 * std::pow(double(ell) / std::max(one_minus_alpha, 1e-9), tau);
    std::uint32_t reps = default_repetitions(p0, lest, opts.repetitions);

    if (trace) *trace = PipelineTrace{space, r, tau, reps, alpha};
    std::vector<Poly> found;
    for (std::uint32_t round = 0; round < reps; ++round) {
        auto round_rng = rng.derive(round);
        auto part = prune_frs(S, space, params, tau, round_rng);
        found.insert(found.end(), part.begin(), part.end());
    }
    return finish(std::move(found), S, params, alpha);
}

std::vector<Poly> list_recover_mult(const ListWord& S, const CodeParams& params,
                                    const Rat& delta_or_eps, std::uint32_t ell,
                                    rng::Stream& rng, MultMode mode,
                                    const RecoverOptions& opts, PipelineTrace* trace) {
    require(params.family == Family::mult && params.m == 1, errc::invalid_argument,
            "univariate multiplicity params required");
    require(delta_or_eps > Rat(0), errc::invalid_argument, "delta/eps must be positive");
    const std::uint32_t s = params.s;
    const std::uint32_t q = params.field.q();
    Rat alpha, p0_base;
    std::uint32_t r, tau;
    double p0, lest;
    if (mode == MultMode::small_d) {
        const Rat& eps = delta_or_eps;
        if (opts.strict) {
            require(params.d < q, errc::regime_violation, "small-d mode needs d < q");
            require(std::uint64_t(params.n) * s < q, errc::regime_violation,
                    "small-d mode needs n < q/s");
            require(Rat(16 * std::int64_t(ell)) / (eps * eps) <= Rat(s), errc::regime_violation,
                    "need s >= 16 ell / eps^2");
        }
        alpha = opts.alpha ? *opts.alpha
                           : Rat(1) - Rat(params.d, std::int64_t(s) * params.n) - eps;
        if (alpha < Rat(0)) alpha = Rat(0);
        r = opts.r ? *opts.r : std::uint32_t((Rat(4 * std::int64_t(ell)) / eps).ceil());
        double epsd = eps.to_double();
        tau = opts.tau ? *opts.tau
                       : std::max(1u, ceil_of((2.0 / epsd) * std::log(4.0 * ell / epsd)));
        double oma = (Rat(1) - alpha).to_double();
        p0 = std::pow(oma, tau);
        if (s > r) p0 -= double(r) * std::pow(double(params.d) / (double(s - r) * params.n), tau);
        lest = 2.0 * std::pow(double(ell) / std::max(oma, 1e-9), tau);
    } else {
        const Rat& delta = delta_or_eps;
        alpha = opts.alpha ? *opts.alpha : Rat(1, 4 * std::int64_t(s));
        r = opts.r ? *opts.r : std::uint32_t((Rat(4 * std::int64_t(ell)) / delta).ceil());
        if (opts.strict) {
            require(s < q, errc::regime_violation, "whole-field mode needs s < q");
            require(params.n == q, errc::regime_violation, "whole-field mode needs n = q");
            require(Rat(params.d) < (Rat(1) - delta) * Rat(std::int64_t(s) * q),
                    errc::regime_violation, "need d < (1-delta) s q");
            require(Rat(std::int64_t(ell)) < delta * delta * Rat(s) / Rat(16),
                    errc::regime_violation, "need ell < delta^2 s / 16");
            require(alpha < Rat(1, 2 * std::int64_t(s)), errc::regime_violation,
                    "need alpha < 1/(2s)");
        }
        tau = opts.tau ? *opts.tau
                       : std::max(1u, ceil_of(6.0 * s * std::log(2.0 * double(r) * s)));
        double oma = 1.0 - 1.0 / (2.0 * s);
        p0 = 0.5 * std::pow(oma, tau);
        lest = 2.0 * std::pow(double(ell) / oma, tau);
    }
    require(r >= 1 && r <= s, errc::invalid_argument, "r out of range");

    LinOperator op = subspace::find_operator_mult(S, r, alpha, params, opts.strict);
    AffinePolySpace space = subspace::solution_space(params.field, op, params.d);

    if (mode == MultMode::whole_field && opts.strict && !space.empty && !space.basis.empty()) {
        auto qb = subspace::qdim_and_basis(params.field, space.basis, params.d);
        require(qb.qdim <= r, errc::regime_violation, "qdim(V) exceeds r");
        require(params.d <= (s - r) * std::uint64_t(q), errc::regime_violation,
                "d exceeds (s - r) q");
    }

    std::uint32_t reps = default_repetitions(p0, lest, opts.repetitions);
    if (trace) *trace = PipelineTrace{space, r, tau, reps, alpha};
    std::vector<Poly> found;
    for (std::uint32_t round = 0; round < reps; ++round) {
        auto round_rng = rng.derive(round);
        auto part = prune_mult(S, space, params, tau, round_rng);
        found.insert(found.end(), part.begin(), part.end());
    }
    return finish(std::move(found), S, params, alpha);
}

}  // namespace listrec::prune
