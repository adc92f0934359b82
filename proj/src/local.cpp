#include "listrec/local.hpp"

#include <algorithm>
#include <set>

namespace listrec {

namespace {

// canonical representative of a direction: first nonzero coordinate is 1;
// returns (dir, scale) with b = scale * dir
std::pair<std::vector<felem>, felem> canonical_dir(const PrimeField& f,
                                                   const std::vector<felem>& b) {
    std::size_t pivot = 0;
    while (pivot < b.size() && b[pivot] == 0) ++pivot;
    require(pivot < b.size(), errc::invalid_argument, "zero direction");
    felem scale = b[pivot];
    felem inv = f.inv(scale);
    std::vector<felem> d(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) d[j] = f.mul(b[j], inv);
    return {d, scale};
}

std::size_t dir_pivot(const std::vector<felem>& d) {
    std::size_t pivot = 0;
    while (pivot < d.size() && d[pivot] == 0) ++pivot;
    return pivot;
}

// base point of the line through p with canonical direction d: the unique
// point on the line whose pivot coordinate is 0; p = base + p[pivot] * d
std::vector<felem> line_base(const PrimeField& f, const std::vector<felem>& p,
                             const std::vector<felem>& d) {
    std::size_t pivot = dir_pivot(d);
    felem t = p[pivot];
    std::vector<felem> base(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) base[j] = f.sub(p[j], f.mul(t, d[j]));
    return base;
}

std::uint64_t hash_points(const std::vector<felem>& a, const std::vector<felem>& b) {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (felem v : a) h = rng::Stream::mix(h ^ (v + 0x1234567));
    for (felem v : b) h = rng::Stream::mix(h ^ (v + 0x7654321));
    return h;
}

}  // namespace

Rat LocalCfg::delta() const {
    return Rat(1) - Rat(params.d, std::int64_t(params.s) * params.field.q());
}

Rat LocalCfg::effective_alpha_prime() const {
    return alpha_prime == Rat(0) ? Rat(2) * alpha : alpha_prime;
}

std::uint32_t LocalCfg::effective_u_size() const {
    if (U_size != 0) return U_size;
    std::uint64_t def = 100ULL * s_star * L_est * params.m * params.m;
    return std::uint32_t(std::min<std::uint64_t>(def, params.field.q()));
}

std::uint64_t LocalCfg::effective_k() const {
    return K_param != 0 ? K_param : 100ULL * params.m * params.m;
}

ListOracle::ListOracle(const ListWord& S, const CodeParams& params)
    : word_(S), params_(params) {
    require(S.lists.size() == params.block_length(), errc::dimension_mismatch,
            "list word length mismatch");
}

const std::vector<std::vector<felem>>& ListOracle::get(std::size_t pos) const {
    ++queries_;
    return word_.lists.at(pos);
}

std::size_t ListOracle::index_of(const std::vector<felem>& pt) const {
    std::size_t idx = 0;
    for (std::uint32_t j = 0; j < params_.m; ++j) idx = idx * params_.field.q() + pt[j];
    return idx;
}

const std::vector<std::vector<felem>>& ListOracle::get(const std::vector<felem>& pt) const {
    return get(index_of(pt));
}

namespace local {

namespace {

void check_regime(const LocalCfg& cfg) {
    const auto& p = cfg.params;
    require(p.family == Family::mult && p.m >= 2, errc::invalid_argument,
            "local recovery needs a multivariate multiplicity code");
    require(cfg.alpha < cfg.effective_alpha_prime(), errc::invalid_argument,
            "need alpha < alpha'");
    require(cfg.s_star >= p.s, errc::invalid_argument, "need s_star >= s");
    if (cfg.relaxed) return;
    Rat delta = cfg.delta();
    std::uint64_t q = p.field.q();
    Rat ap_gap = cfg.effective_alpha_prime() - cfg.alpha;
    require(Rat(std::int64_t(cfg.s_star)) >= Rat(160 * std::int64_t(cfg.L_est) * p.s) / delta,
            errc::regime_violation, "need s* >= 160 L s / delta");
    require(Rat(std::int64_t(q)) >= Rat(160 * std::int64_t(cfg.ell) * p.s) / delta &&
                Rat(std::int64_t(q)) >= Rat(640) / (ap_gap * delta) &&
                Rat(std::int64_t(q)) >=
                    Rat(std::int64_t(cfg.C_const * cfg.s_star * cfg.L_est * p.m * p.m)) &&
                Rat(std::int64_t(q)) >= Rat(20 * std::int64_t(cfg.C_const) * p.m) / ap_gap &&
                q >= 10ULL * p.m && Rat(std::int64_t(q)) >= Rat(p.d + 6 * p.s, p.s) &&
                q >= 12ULL * (p.s + 1),
            errc::regime_violation, "q below the required lower bounds");
    require(cfg.alpha <= delta / Rat(160), errc::regime_violation, "need alpha <= delta/160");
}

// Univariate list recovery of the restriction of S to the canonical line
// base + T dir, symbols restricted along dir. Deterministic per line.
std::vector<Poly> decode_line(ListOracle& S, const std::vector<felem>& base,
                              const std::vector<felem>& dir, const LocalCfg& cfg) {
    const auto& p = cfg.params;
    const PrimeField& f = p.field;
    auto uni = mult_params(f, p.s, 1, f.q(), p.d);
    ListWord restricted;
    restricted.lists.resize(f.q());
    std::vector<felem> pt(p.m);
    for (felem t = 0; t < f.q(); ++t) {
        for (std::uint32_t j = 0; j < p.m; ++j) pt[j] = f.add(base[j], f.mul(t, dir[j]));
        std::set<std::vector<felem>> dedup;
        for (const auto& z : S.get(pt))
            dedup.insert(poly::restrict_symbol(f, z, dir, p.m, p.s));
        restricted.lists[t].assign(dedup.begin(), dedup.end());
    }
    RecoverOptions opts = cfg.line_opts;
    opts.alpha = cfg.effective_alpha_prime();
    rng::Stream line_rng(hash_points(base, dir));
    return prune::list_recover_mult(restricted, uni, cfg.delta(), cfg.ell, line_rng,
                                    prune::MultMode::whole_field, opts);
}

}  // namespace

std::vector<std::vector<felem>> recover_candidates(ListOracle& S, const std::vector<felem>& a,
                                                   std::uint32_t stilde, const LocalCfg& cfg,
                                                   rng::Stream& rng) {
    check_regime(cfg);
    const auto& p = cfg.params;
    const PrimeField& f = p.field;
    std::uint32_t usz = cfg.effective_u_size();
    require(usz >= 1 && usz <= f.q(), errc::invalid_argument, "bad candidate grid size");
    if (!cfg.relaxed)
        require(std::uint64_t(f.q()) > 100ULL * stilde * cfg.L_est * p.m * p.m,
                errc::regime_violation, "q too small for the candidate grid");

    std::vector<felem> b(p.m);
    for (auto& v : b) v = felem(rng.below(f.q()));

    // decode the lines through a in directions b + u, one univariate
    // recovery per distinct geometric line
    std::map<std::pair<std::vector<felem>, std::vector<felem>>, std::vector<Poly>> line_cache;
    GridInstance inst;
    inst.field = f;
    inst.U.resize(usz);
    for (std::uint32_t i = 0; i < usz; ++i) inst.U[i] = i;
    inst.m = p.m;
    inst.stilde = stilde;
    inst.t = stilde;
    inst.ell = 1;
    inst.alpha = cfg.rm_alpha;
    inst.K = cfg.effective_k();
    inst.slice_radius = cfg.rm_slice_radius;
    inst.combine_radius = cfg.rm_combine_radius;
    inst.lists.resize(inst.grid_size());

    std::size_t max_list = 1;
    std::vector<std::uint32_t> upos(p.m, 0);
    for (std::size_t idx = 0; idx < inst.lists.size(); ++idx) {
        std::size_t v = idx;
        for (std::uint32_t j = p.m; j-- > 0;) {
            upos[j] = std::uint32_t(v % usz);
            v /= usz;
        }
        std::vector<felem> bu(p.m);
        bool zero = true;
        for (std::uint32_t j = 0; j < p.m; ++j) {
            bu[j] = f.add(b[j], inst.U[upos[j]]);
            zero &= (bu[j] == 0);
        }
        if (zero) continue;  // no line in the zero direction; leave the list empty
        auto [dir, scale] = canonical_dir(f, bu);
        auto base = line_base(f, a, dir);
        auto key = std::make_pair(base, dir);
        auto it = line_cache.find(key);
        if (it == line_cache.end())
            it = line_cache.emplace(key, decode_line(S, base, dir, cfg)).first;
        // a = base + t_a dir; (Q o lambda_u)(T) = (Q o mu)(t_a + scale T)
        felem t_a = a[dir_pivot(dir)];
        std::set<std::vector<felem>> dedup;
        for (const Poly& pc : it->second) {
            Poly pl = poly::compose_affine(f, pc, t_a, scale);
            dedup.insert(poly::eval_order(f, pl, 0, stilde));
        }
        inst.lists[idx].assign(dedup.begin(), dedup.end());
        max_list = std::max(max_list, inst.lists[idx].size());
    }
    inst.ell = std::uint32_t(max_list);

    auto tuples = rm_grid::vector_rm_list_recover(inst);

    // shift back by -b, keep only tuples whose j-th entry is homogeneous of
    // degree j, and assemble symbols
    std::vector<felem> neg_b(p.m);
    for (std::uint32_t j = 0; j < p.m; ++j) neg_b[j] = f.neg(b[j]);
    auto idxset = deriv_indices(p.m, stilde);
    std::map<std::vector<std::uint32_t>, std::size_t> idx_pos;
    for (std::size_t i = 0; i < idxset.size(); ++i) idx_pos[idxset[i]] = i;
    std::set<std::vector<felem>> seen;
    std::vector<std::vector<felem>> Z;
    std::size_t cap = 2 * std::size_t(cfg.effective_k()) * std::max<std::size_t>(cfg.L_est, 1);
    for (const auto& tuple : tuples) {
        std::vector<felem> z(idxset.size(), 0);
        bool ok = true;
        for (std::uint32_t j = 0; j < stilde && ok; ++j) {
            MultiPoly shifted = poly::mp_shift(f, tuple[j], neg_b);
            for (const auto& [e, c] : shifted.terms) {
                if (weight(e) != j) {
                    ok = false;  // not homogeneous of degree j
                    break;
                }
                z[idx_pos.at(e)] = c;
            }
        }
        if (!ok) continue;
        if (seen.insert(z).second && Z.size() < cap) Z.push_back(std::move(z));
    }
    return Z;
}

std::optional<std::vector<felem>> oracle_eval(ListOracle& S, const std::vector<felem>& a,
                                              const std::vector<felem>& z,
                                              const std::vector<felem>& x, const LocalCfg& cfg,
                                              LineCache* cache) {
    const auto& p = cfg.params;
    const PrimeField& f = p.field;
    if (x == a) return std::nullopt;
    std::vector<felem> bstar(p.m);
    for (std::uint32_t j = 0; j < p.m; ++j) bstar[j] = f.sub(a[j], x[j]);
    auto [dir, scale] = canonical_dir(f, bstar);
    auto base = line_base(f, x, dir);
    const std::vector<Poly>* cands_ptr = nullptr;
    std::vector<Poly> local_cands;
    if (cache) {
        auto key = std::make_pair(base, dir);
        auto it = cache->find(key);
        if (it == cache->end()) it = cache->emplace(key, decode_line(S, base, dir, cfg)).first;
        cands_ptr = &it->second;
    } else {
        local_cands = decode_line(S, base, dir, cfg);
        cands_ptr = &local_cands;
    }
    const std::vector<Poly>& cands = *cands_ptr;
    // lambda(T) = x + T bstar = mu(t_x + scale T)
    felem t_x = x[dir_pivot(dir)];
    auto z_restricted = poly::restrict_symbol(f, z, bstar, p.m, cfg.s_star);
    const Poly* match = nullptr;
    for (const auto& pc : cands) {
        Poly pl = poly::compose_affine(f, pc, t_x, scale);
        if (poly::eval_order(f, pl, 1, cfg.s_star) == z_restricted) {
            if (match) return std::nullopt;  // not unique
            match = &pc;
        }
    }
    if (!match) return std::nullopt;
    Poly pl = poly::compose_affine(f, *match, t_x, scale);
    auto head = poly::eval_order(f, pl, 0, p.s);
    const std::vector<felem>* hit = nullptr;
    for (const auto& y : S.get(x)) {
        if (poly::restrict_symbol(f, y, bstar, p.m, p.s) == head) {
            if (hit) return std::nullopt;  // two matching list entries
            hit = &y;
        }
    }
    if (!hit) return std::nullopt;
    return *hit;
}

SelfCorrector::SelfCorrector(SymbolOracle word, const LocalCfg& cfg)
    : word_(std::move(word)), cfg_(cfg) {}

const SelfCorrector::LineFit& SelfCorrector::fit_line(const std::vector<felem>& base,
                                                      const std::vector<felem>& dir) {
    auto key = std::make_pair(base, dir);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    const auto& p = cfg_.params;
    const PrimeField& f = p.field;
    std::vector<felem> evalset;
    ListWord restricted;
    std::vector<felem> pt(p.m);
    for (felem t = 0; t < f.q(); ++t) {
        for (std::uint32_t j = 0; j < p.m; ++j) pt[j] = f.add(base[j], f.mul(t, dir[j]));
        auto cached = word_cache_.find(pt);
        if (cached == word_cache_.end()) {
            ++word_queries_;
            cached = word_cache_.emplace(pt, word_(pt)).first;
        }
        const auto& sym = cached->second;
        if (!sym) continue;  // erasure
        evalset.push_back(t);
        restricted.lists.push_back({poly::restrict_symbol(f, *sym, dir, p.m, p.s)});
    }
    LineFit fit;
    if (evalset.size() >= 2) {
        auto uni = mult_params_univariate(f, p.s, p.d, evalset);
        RecoverOptions opts = cfg_.sc_line_opts;
        opts.strict = false;
        opts.alpha = cfg_.self_correct_radius;
        if (!opts.r) opts.r = 1;
        if (!opts.tau) opts.tau = 2;
        if (!opts.repetitions) opts.repetitions = 8;
        rng::Stream line_rng(hash_points(base, dir));
        try {
            auto cands = prune::list_recover_mult(restricted, uni, cfg_.delta(), 1, line_rng,
                                                  prune::MultMode::whole_field, opts);
            // nearest candidate wins
            std::size_t best_bad = SIZE_MAX;
            for (const auto& c : cands) {
                std::size_t bad = 0;
                for (std::size_t i = 0; i < evalset.size(); ++i)
                    bad += (poly::eval_order(f, c, evalset[i], p.s) != restricted.lists[i][0]);
                if (bad < best_bad) {
                    best_bad = bad;
                    fit.poly = c;
                    fit.ok = true;
                }
            }
        } catch (const error&) {
            // line undecodable at these parameters; skip it
        }
    }
    return cache_.emplace(key, std::move(fit)).first->second;
}

std::vector<felem> SelfCorrector::correct(const std::vector<felem>& x, rng::Stream& rng) {
    const auto& p = cfg_.params;
    const PrimeField& f = p.field;
    std::uint32_t w = std::uint32_t(deriv_index_count(p.m, p.s));
    auto idxset = deriv_indices(p.m, p.s);

    // sample directions, group by geometric line through x
    std::uint64_t dirs = cfg_.line_budget_factor;
    for (std::uint32_t j = 0; j < p.m; ++j) dirs *= 2 * p.s;
    std::set<std::vector<felem>> lines;
    for (std::uint64_t i = 0; i < dirs; ++i) {
        std::vector<felem> b(p.m);
        bool zero = true;
        for (auto& v : b) {
            v = felem(rng.below(f.q()));
            zero &= (v == 0);
        }
        if (zero) continue;
        lines.insert(canonical_dir(f, b).first);
    }
    last_line_count_ = lines.size();

    struct LineEq {
        std::vector<felem> dir;
        std::vector<felem> h;  // order-<s evaluations at x along dir
    };
    std::vector<LineEq> eqs;
    for (const auto& dir : lines) {
        auto base = line_base(f, x, dir);
        const LineFit& fit = fit_line(base, dir);
        if (!fit.ok) continue;
        felem t_x = x[dir_pivot(dir)];
        eqs.push_back({dir, poly::eval_order(f, fit.poly, t_x, p.s)});
    }

    auto rows_for = [&](const LineEq& e, Mat& m, std::vector<felem>& rhs, std::size_t at) {
        for (std::uint32_t j = 0; j < p.s; ++j) {
            for (std::size_t k = 0; k < idxset.size(); ++k) {
                if (weight(idxset[k]) != j) continue;
                felem c = 1;
                for (std::uint32_t v = 0; v < p.m; ++v)
                    c = f.mul(c, f.pow(e.dir[v], idxset[k][v]));
                m.at(at + j, k) = c;
            }
            rhs[at + j] = e.h[j];
        }
    };
    auto solve_subset = [&](const std::vector<const LineEq*>& subset)
        -> std::optional<std::vector<felem>> {
        Mat m(subset.size() * p.s, w);
        std::vector<felem> rhs(subset.size() * p.s, 0);
        for (std::size_t i = 0; i < subset.size(); ++i) rows_for(*subset[i], m, rhs, i * p.s);
        auto sol = linalg::solve(f, m, rhs);
        if (!sol.consistent || !sol.kernel.empty()) return std::nullopt;
        return sol.particular;
    };
    auto consistent_count = [&](const std::vector<felem>& v) {
        std::size_t votes = 0;
        for (const auto& e : eqs) {
            bool ok = true;
            for (std::uint32_t j = 0; j < p.s && ok; ++j) {
                felem acc = 0;
                for (std::size_t k = 0; k < idxset.size(); ++k) {
                    if (weight(idxset[k]) != j) continue;
                    felem c = v[k];
                    for (std::uint32_t vv = 0; vv < p.m; ++vv)
                        c = f.mul(c, f.pow(e.dir[vv], idxset[k][vv]));
                    acc = f.add(acc, c);
                }
                ok &= (acc == e.h[j]);
            }
            votes += ok;
        }
        return votes;
    };

    if (!eqs.empty()) {
        // fast path: all decoded lines agree on a unique symbol
        std::vector<const LineEq*> all;
        for (const auto& e : eqs) all.push_back(&e);
        if (auto v = solve_subset(all)) return *v;
        // otherwise vote over pairs of lines
        std::vector<felem> best;
        std::size_t best_votes = 0;
        for (std::size_t i = 0; i < eqs.size(); ++i)
            for (std::size_t j = i + 1; j < eqs.size(); ++j) {
                auto v = solve_subset({&eqs[i], &eqs[j]});
                if (!v) continue;
                std::size_t votes = consistent_count(*v);
                if (votes > best_votes) {
                    best_votes = votes;
                    best = std::move(*v);
                }
            }
        if (!best.empty()) return best;
    }
    // fallback: the word's own symbol, or zero
    auto cached = word_cache_.find(x);
    if (cached == word_cache_.end()) {
        ++word_queries_;
        cached = word_cache_.emplace(x, word_(x)).first;
    }
    if (cached->second) return *cached->second;
    return std::vector<felem>(w, 0);
}

std::vector<felem> self_correct(const SymbolOracle& word, const std::vector<felem>& x,
                                const LocalCfg& cfg, rng::Stream& rng) {
    SelfCorrector sc(word, cfg);
    return sc.correct(x, rng);
}

std::vector<LocalDecoder> local_list_recover(const ListWord& S, const LocalCfg& cfg,
                                             rng::Stream& rng) {
    check_regime(cfg);
    const auto& p = cfg.params;
    std::vector<felem> a(p.m);
    for (auto& v : a) v = felem(rng.below(p.field.q()));
    ListOracle oracle(S, p);
    auto outer_rng = rng.derive("recover-candidates");
    auto Z = recover_candidates(oracle, a, cfg.s_star, cfg, outer_rng);
    std::vector<LocalDecoder> out;
    out.reserve(Z.size());
    for (std::size_t i = 0; i < Z.size(); ++i)
        out.emplace_back(S, cfg, a, Z[i], rng.derive(i));
    return out;
}

}  // namespace local

LocalDecoder::LocalDecoder(const ListWord& S, const LocalCfg& cfg, std::vector<felem> a,
                           std::vector<felem> z, rng::Stream rng)
    : cfg_(cfg), oracle_(S, cfg.params), a_(std::move(a)), z_(std::move(z)), rng_(rng) {
    corrector_ = std::make_shared<local::SelfCorrector>(
        [this](const std::vector<felem>& x) { return virtual_word(x); }, cfg_);
}

std::optional<std::vector<felem>> LocalDecoder::virtual_word(const std::vector<felem>& x) {
    auto it = vw_cache_.find(x);
    if (it != vw_cache_.end()) return it->second;
    auto sym = local::oracle_eval(oracle_, a_, z_, x, cfg_, &line_cache_);
    vw_cache_.emplace(x, sym);
    return sym;
}

std::uint64_t LocalDecoder::query_budget() const {
    std::uint64_t lines = cfg_.line_budget_factor;
    for (std::uint32_t j = 0; j < cfg_.params.m; ++j) lines *= 2 * cfg_.params.s;
    return (lines + 1) * cfg_.params.field.q() * cfg_.params.field.q();
}

std::vector<felem> LocalDecoder::decode(const std::vector<felem>& x) {
    std::uint64_t before = oracle_.queries();
    auto out = corrector_->correct(x, rng_);
    last_queries_ = oracle_.queries() - before;
    return out;
}

}  // namespace listrec
