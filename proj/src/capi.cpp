#include "listrec/listrec.h"

#include <chrono>
#include <cstring>
#include <sstream>
#include <string>

#include "listrec/amplify.hpp"
#include "listrec/experiment.hpp"
#include "listrec/prune.hpp"
#include "listrec/verify.hpp"

using namespace listrec;

struct lr_code {
    CodeParams params;
};
struct lr_codeword {
    Codeword cw;
};
struct lr_listword {
    ListWord lw;
};
struct lr_polylist {
    std::vector<Poly> polys;
};
struct lr_graph {
    BipartiteGraph g;
};
struct lr_buffer {
    std::string text;
};

namespace {

thread_local std::string g_last_error;

lr_status map_errc(errc code) {
    switch (code) {
        case errc::invalid_argument: return LR_ERR_INVALID_ARGUMENT;
        case errc::division_by_zero: return LR_ERR_DIVISION_BY_ZERO;
        case errc::invalid_modulus: return LR_ERR_INVALID_MODULUS;
        case errc::irreducible_search_failed: return LR_ERR_IRREDUCIBLE_SEARCH_FAILED;
        case errc::dimension_mismatch: return LR_ERR_DIMENSION_MISMATCH;
        case errc::degree_too_high: return LR_ERR_DEGREE_TOO_HIGH;
        case errc::under_determined: return LR_ERR_UNDER_DETERMINED;
        case errc::not_closed: return LR_ERR_NOT_CLOSED;
        case errc::closure_violation: return LR_ERR_CLOSURE_VIOLATION;
        case errc::regime_violation: return LR_ERR_REGIME_VIOLATION;
        case errc::agreement_too_low: return LR_ERR_AGREEMENT_TOO_LOW;
        case errc::table_too_large: return LR_ERR_TABLE_TOO_LARGE;
        case errc::config_invalid: return LR_ERR_CONFIG_INVALID;
        case errc::io_error: return LR_ERR_IO;
    }
    return LR_ERR_UNKNOWN;
}

template <class Fn>
lr_status guarded(Fn&& fn) {
    try {
        fn();
        return LR_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return map_errc(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LR_ERR_UNKNOWN;
    }
}

lr_buffer* make_buffer(std::string text) { return new lr_buffer{std::move(text)}; }

Rat make_rat(int64_t num, int64_t den) { return Rat(num, den); }

}  // namespace

extern "C" {

const char* lr_last_error(void) { return g_last_error.c_str(); }
const char* lr_version(void) { return "listrec 1.0.0"; }

lr_status lr_code_create(int family, uint32_t q, uint32_t s, uint32_t m, uint32_t n,
                         uint32_t d, lr_code** out) {
    return guarded([&] {
        require(out != nullptr, errc::invalid_argument, "null output pointer");
        PrimeField f(q);
        CodeParams params = family == LR_FAMILY_FRS
                                ? frs_params(f, s, n, d)
                                : mult_params(f, s, m, m == 1 ? n : 0, d);
        *out = new lr_code{std::move(params)};
    });
}

void lr_code_free(lr_code* code) { delete code; }

lr_status lr_code_stats(const lr_code* code, int64_t* rate_num, int64_t* rate_den,
                        int64_t* dist_num, int64_t* dist_den, int* rate_is_bound) {
    return guarded([&] {
        require(code != nullptr, errc::invalid_argument, "null code");
        auto st = codes::code_stats(code->params);
        if (rate_num) *rate_num = st.rate.num;
        if (rate_den) *rate_den = st.rate.den;
        if (dist_num) *dist_num = st.distance.num;
        if (dist_den) *dist_den = st.distance.den;
        if (rate_is_bound) *rate_is_bound = st.rate_is_bound ? 1 : 0;
    });
}

lr_status lr_find_primitive(uint32_t q, uint32_t* out) {
    return guarded([&] {
        require(out != nullptr, errc::invalid_argument, "null output pointer");
        *out = find_primitive(q);
    });
}

lr_status lr_encode(const lr_code* code, const uint32_t* coeffs, size_t coeff_count,
                    lr_codeword** out) {
    return guarded([&] {
        require(code && out && (coeffs || coeff_count == 0), errc::invalid_argument,
                "null argument");
        Poly p;
        p.c.assign(coeffs, coeffs + coeff_count);
        p.trim();
        *out = new lr_codeword{codes::encode(code->params, p)};
    });
}

lr_status lr_random_message(const lr_code* code, uint64_t seed, lr_buffer** coeffs_csv) {
    return guarded([&] {
        require(code && coeffs_csv, errc::invalid_argument, "null argument");
        rng::Stream rng(seed);
        Poly p = codes::random_poly(code->params.field, code->params.d, rng);
        std::ostringstream os;
        for (std::uint32_t k = 0; k <= code->params.d; ++k) {
            if (k) os << ',';
            os << p.coeff(k);
        }
        *coeffs_csv = make_buffer(os.str());
    });
}

void lr_codeword_free(lr_codeword* cw) { delete cw; }

lr_status lr_corrupt(const lr_code* code, const lr_codeword* cw, int64_t alpha_num,
                     int64_t alpha_den, uint32_t ell, int adversarial, uint64_t seed,
                     lr_listword** out) {
    return guarded([&] {
        require(code && cw && out, errc::invalid_argument, "null argument");
        rng::Stream rng(seed);
        Rat alpha = make_rat(alpha_num, alpha_den);
        ListWord lw = adversarial
                          ? codes::plant_channel_adversarial(code->params, cw->cw, alpha, ell, rng)
                          : codes::plant_channel(code->params, cw->cw, alpha, ell, rng);
        *out = new lr_listword{std::move(lw)};
    });
}

void lr_listword_free(lr_listword* lw) { delete lw; }

lr_status lr_list_recover(const lr_code* code, const lr_listword* lists,
                          const lr_recover_options* opts, lr_polylist** out) {
    return guarded([&] {
        require(code && lists && opts && out, errc::invalid_argument, "null argument");
        RecoverOptions ro;
        ro.strict = opts->strict != 0;
        if (opts->r) ro.r = opts->r;
        if (opts->tau) ro.tau = opts->tau;
        if (opts->repetitions) ro.repetitions = opts->repetitions;
        if (opts->alpha_den != 0) ro.alpha = make_rat(opts->alpha_num, opts->alpha_den);
        Rat eps = make_rat(opts->eps_num, opts->eps_den);
        rng::Stream rng(opts->seed);
        std::vector<Poly> found;
        if (opts->mode == 0)
            found = prune::list_recover_frs(lists->lw, code->params, eps, opts->ell, rng, ro);
        else
            found = prune::list_recover_mult(lists->lw, code->params, eps, opts->ell, rng,
                                             opts->mode == 1 ? prune::MultMode::small_d
                                                             : prune::MultMode::whole_field,
                                             ro);
        *out = new lr_polylist{std::move(found)};
    });
}

size_t lr_polylist_count(const lr_polylist* pl) { return pl ? pl->polys.size() : 0; }

size_t lr_polylist_coeffs(const lr_polylist* pl, size_t index, uint32_t* buf, size_t buf_len) {
    if (!pl || index >= pl->polys.size()) return 0;
    const auto& c = pl->polys[index].c;
    size_t n = std::min(buf_len, c.size());
    if (buf) std::memcpy(buf, c.data(), n * sizeof(uint32_t));
    return c.size();
}

void lr_polylist_free(lr_polylist* pl) { delete pl; }

lr_status lr_codeword_serialize(const lr_code* code, const lr_codeword* cw, lr_buffer** out) {
    return guarded([&] {
        require(code && cw && out, errc::invalid_argument, "null argument");
        *out = make_buffer(codes::serialize(code->params, cw->cw));
    });
}

lr_status lr_listword_serialize(const lr_code* code, const lr_listword* lw, lr_buffer** out) {
    return guarded([&] {
        require(code && lw && out, errc::invalid_argument, "null argument");
        *out = make_buffer(codes::serialize(code->params, lw->lw));
    });
}

lr_status lr_codeword_parse(int family, const char* text, lr_code** code, lr_codeword** cw) {
    return guarded([&] {
        require(text && code && cw, errc::invalid_argument, "null argument");
        auto [params, word] = codes::parse_codeword(
            family == LR_FAMILY_FRS ? Family::frs : Family::mult, text);
        *code = new lr_code{std::move(params)};
        *cw = new lr_codeword{std::move(word)};
    });
}

lr_status lr_listword_parse(int family, const char* text, lr_code** code, lr_listword** lw) {
    return guarded([&] {
        require(text && code && lw, errc::invalid_argument, "null argument");
        auto [params, word] = codes::parse_listword(
            family == LR_FAMILY_FRS ? Family::frs : Family::mult, text);
        *code = new lr_code{std::move(params)};
        *lw = new lr_listword{std::move(word)};
    });
}

const char* lr_buffer_data(const lr_buffer* buf) { return buf ? buf->text.c_str() : ""; }
size_t lr_buffer_size(const lr_buffer* buf) { return buf ? buf->text.size() : 0; }
void lr_buffer_free(lr_buffer* buf) { delete buf; }

lr_status lr_graph_sample(uint32_t N, uint32_t D, uint64_t seed, lr_graph** out) {
    return guarded([&] {
        require(out != nullptr, errc::invalid_argument, "null output pointer");
        rng::Stream rng(seed);
        *out = new lr_graph{amplify::sample_expander(N, D, rng)};
    });
}

lr_status lr_graph_check(const lr_graph* g, int64_t R_num, int64_t R_den, int64_t eps_num,
                         int64_t eps_den, int64_t xi_num, int64_t xi_den, uint32_t trials,
                         uint64_t seed, int* pass, int64_t* max_bad_num, int64_t* max_bad_den) {
    return guarded([&] {
        require(g != nullptr, errc::invalid_argument, "null graph");
        rng::Stream rng(seed);
        auto report = amplify::check_sampler(g->g, make_rat(R_num, R_den),
                                             make_rat(eps_num, eps_den),
                                             make_rat(xi_num, xi_den), trials, rng);
        if (pass) *pass = report.pass ? 1 : 0;
        if (max_bad_num) *max_bad_num = report.max_bad_fraction.num;
        if (max_bad_den) *max_bad_den = report.max_bad_fraction.den;
    });
}

lr_status lr_graph_serialize(const lr_graph* g, lr_buffer** out) {
    return guarded([&] {
        require(g && out, errc::invalid_argument, "null argument");
        *out = make_buffer(amplify::serialize_graph(g->g));
    });
}

lr_status lr_graph_parse(const char* text, lr_graph** out) {
    return guarded([&] {
        require(text && out, errc::invalid_argument, "null argument");
        *out = new lr_graph{amplify::parse_graph(text)};
    });
}

void lr_graph_free(lr_graph* g) { delete g; }

lr_status lr_run_experiment(const char* config_text, lr_buffer** report) {
    return guarded([&] {
        require(config_text && report, errc::invalid_argument, "null argument");
        auto result = run_experiment(parse_experiment_config(config_text));
        *report = make_buffer(std::move(result.report));
    });
}

lr_status lr_verify(const int* ids, size_t id_count, lr_buffer** report, int* pass_count,
                    int* total) {
    return guarded([&] {
        require(report != nullptr, errc::invalid_argument, "null report pointer");
        std::vector<int> only(ids, ids + id_count);
        auto results = verify::run_acceptance(only);
        int passed = 0;
        for (const auto& r : results) passed += r.pass;
        if (pass_count) *pass_count = passed;
        if (total) *total = int(results.size());
        *report = make_buffer(verify::render(results));
    });
}

lr_status lr_bench(lr_buffer** report) {
    return guarded([&] {
        require(report != nullptr, errc::invalid_argument, "null report pointer");
        using Clock = std::chrono::steady_clock;
        std::ostringstream os;
        auto time_it = [&](const char* name, auto&& fn, int reps) {
            auto t0 = Clock::now();
            for (int i = 0; i < reps; ++i) fn();
            double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            char buf[128];
            std::snprintf(buf, sizeof buf, "%-28s %8.3f ms/op (%d ops)\n", name, ms / reps,
                          reps);
            os << buf;
        };
        PrimeField f(433);
        auto params = frs_params(f, 16, 27, 216);
        rng::Stream rng(1);
        Poly msg = codes::random_poly(f, 216, rng);
        time_it("frs_encode q=433 s=16 n=27", [&] { codes::encode(params, msg); }, 20);
        auto cw = codes::encode(params, msg);
        auto S = codes::plant_channel(params, cw, Rat(1, 4), 1, rng);
        time_it("find_operator_frs r=2",
                [&] { subspace::find_operator_frs(S, 2, Rat(1, 4), params); }, 3);
        auto op = subspace::find_operator_frs(S, 2, Rat(1, 4), params);
        time_it("solution_space d=216",
                [&] { subspace::solution_space(f, op, 216); }, 3);
        auto space = subspace::solution_space(f, op, 216);
        time_it("prune_frs tau=12",
                [&] { prune::prune_frs(S, space, params, 12, rng); }, 20);
        PrimeField f31(31);
        auto mp = mult_params(f31, 3, 1, 31, 62);
        Poly mmsg = codes::random_poly(f31, 62, rng);
        auto mcw = codes::encode(mp, mmsg);
        auto mS = codes::plant_channel(mp, mcw, Rat(1, 31), 1, rng);
        time_it("univariate line decode q=31", [&] {
            RecoverOptions o;
            o.strict = false;
            o.r = 1;
            o.tau = 2;
            o.repetitions = 8;
            o.alpha = Rat(3, 20);
            rng::Stream r2(7);
            prune::list_recover_mult(mS, mp, Rat(1, 3), 1, r2, prune::MultMode::whole_field, o);
        }, 10);
        *report = make_buffer(os.str());
    });
}

lr_status lr_ael_demo(uint32_t N, uint32_t D, uint64_t seed, lr_buffer** report) {
    return guarded([&] {
        require(report != nullptr, errc::invalid_argument, "null report pointer");
        rng::Stream rng(seed);
        auto g = amplify::sample_expander(N, D, rng);
        auto check = amplify::check_sampler(g, Rat(1, 2), Rat(1, 20), Rat(1, 10), 50, rng);
        // round-trip a random block word
        std::vector<BlockWord> blocks(N, BlockWord(D));
        for (auto& blk : blocks)
            for (auto& sym : blk) sym = felem(rng.below(7));
        auto folded = amplify::ael_transform(blocks, g, amplify::FoldDirection::fold);
        auto back = amplify::ael_transform(folded, g, amplify::FoldDirection::unfold);
        std::ostringstream os;
        os << "graph N=" << N << " D=" << D << " sampler_pass=" << (check.pass ? 1 : 0)
           << " max_bad_fraction=" << check.max_bad_fraction.str()
           << " roundtrip=" << (back == blocks ? "ok" : "BROKEN") << '\n';
        *report = make_buffer(os.str());
    });
}

}  // extern "C"
