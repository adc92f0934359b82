#include "listrec/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace listrec {

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line, section;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        require(eq != std::string::npos, errc::config_invalid, "expected key=value: " + line);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(val);
        if (!section.empty()) key = section + "." + key;
        kv[key] = val;
    }
    return kv;
}

std::uint64_t to_u64(const std::string& v) { return std::strtoull(v.c_str(), nullptr, 10); }

}  // namespace

std::uint64_t fnv1a(const std::vector<felem>& values) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (felem v : values) {
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    }
    return h;
}

CodeParams ExperimentConfig::code_params() const {
    PrimeField f(q);
    if (family == Family::frs) return frs_params(f, s, n, d);
    return mult_params(f, s, m, m == 1 ? n : 0, d);
}

LocalCfg ExperimentConfig::local_cfg() const {
    LocalCfg cfg;
    cfg.params = code_params();
    cfg.ell = ell;
    cfg.alpha = alpha;
    cfg.alpha_prime = alpha_prime;
    cfg.s_star = s_star == 0 ? s : s_star;
    cfg.U_size = u_size;
    cfg.L_est = l_est;
    cfg.K_param = k_param;
    cfg.relaxed = !opts.strict;
    cfg.line_opts = opts;
    cfg.line_opts.alpha.reset();
    if (!cfg.line_opts.r) cfg.line_opts.r = 1;
    if (!cfg.line_opts.tau) cfg.line_opts.tau = 2;
    if (!cfg.line_opts.repetitions) cfg.line_opts.repetitions = 8;
    cfg.rm_slice_radius = rm_slice_radius;
    cfg.rm_combine_radius = rm_combine_radius;
    cfg.self_correct_radius = self_correct_radius;
    return cfg;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
    auto kv = parse_kv(text);
    ExperimentConfig cfg;
    for (const auto& [key, val] : kv) {
        if (key == "code.family") {
            require(val == "frs" || val == "mult", errc::config_invalid,
                    "code.family must be frs or mult");
            cfg.family = val == "frs" ? Family::frs : Family::mult;
        } else if (key == "code.q") cfg.q = std::uint32_t(to_u64(val));
        else if (key == "code.s") cfg.s = std::uint32_t(to_u64(val));
        else if (key == "code.m") cfg.m = std::uint32_t(to_u64(val));
        else if (key == "code.n") cfg.n = std::uint32_t(to_u64(val));
        else if (key == "code.d") cfg.d = std::uint32_t(to_u64(val));
        else if (key == "channel.alpha") cfg.alpha = parse_rational(val);
        else if (key == "channel.ell") cfg.ell = std::uint32_t(to_u64(val));
        else if (key == "channel.adversarial") cfg.adversarial = to_u64(val) != 0;
        else if (key == "decoder.kind") cfg.decoder = val;
        else if (key == "decoder.eps" || key == "decoder.delta")
            cfg.eps_or_delta = parse_rational(val);
        else if (key == "decoder.strict") cfg.opts.strict = to_u64(val) != 0;
        else if (key == "decoder.r") cfg.opts.r = std::uint32_t(to_u64(val));
        else if (key == "decoder.tau") cfg.opts.tau = std::uint32_t(to_u64(val));
        else if (key == "decoder.repetitions") cfg.opts.repetitions = std::uint32_t(to_u64(val));
        else if (key == "decoder.alpha") cfg.opts.alpha = parse_rational(val);
        else if (key == "local.alpha_prime") cfg.alpha_prime = parse_rational(val);
        else if (key == "local.s_star") cfg.s_star = std::uint32_t(to_u64(val));
        else if (key == "local.u_size") cfg.u_size = std::uint32_t(to_u64(val));
        else if (key == "local.l_est") cfg.l_est = std::uint32_t(to_u64(val));
        else if (key == "local.k_param") cfg.k_param = to_u64(val);
        else if (key == "local.slice_radius") cfg.rm_slice_radius = parse_rational(val);
        else if (key == "local.combine_radius") cfg.rm_combine_radius = parse_rational(val);
        else if (key == "local.self_correct_radius")
            cfg.self_correct_radius = parse_rational(val);
        else if (key == "local.check_points") cfg.check_points = std::uint32_t(to_u64(val));
        else if (key == "local.inner_trials") cfg.inner_trials = std::uint32_t(to_u64(val));
        else if (key == "run.trials") cfg.trials = std::uint32_t(to_u64(val));
        else if (key == "run.seed") cfg.seed = to_u64(val);
        else if (key == "run.timings") cfg.timings = to_u64(val) != 0;
        else
            fail(errc::config_invalid, "unknown config key: " + key);
    }
    return cfg;
}

namespace {

void validate(const ExperimentConfig& cfg) {
    require(cfg.alpha >= Rat(0) && cfg.alpha <= Rat(1), errc::config_invalid,
            "channel.alpha outside [0,1]");
    require(cfg.ell >= 1, errc::config_invalid, "channel.ell must be >= 1");
    require(cfg.decoder == "frs" || cfg.decoder == "mult-small-d" ||
                cfg.decoder == "mult-whole" || cfg.decoder == "local",
            errc::config_invalid, "decoder.kind must be frs|mult-small-d|mult-whole|local");
    if (cfg.decoder == "frs")
        require(cfg.family == Family::frs, errc::config_invalid,
                "frs decoder needs code.family=frs");
    if (cfg.decoder == "mult-small-d" || cfg.decoder == "mult-whole")
        require(cfg.family == Family::mult && cfg.m == 1, errc::config_invalid,
                "univariate multiplicity decoder needs code.family=mult, code.m=1");
    if (cfg.decoder == "local")
        require(cfg.family == Family::mult && cfg.m >= 2, errc::config_invalid,
                "local decoder needs code.family=mult, code.m>=2");
    try {
        cfg.code_params();
    } catch (const error& e) {
        fail(errc::config_invalid, std::string("invalid code parameters: ") + e.what());
    }
}

struct Summary {
    std::uint32_t trials = 0, successes = 0;
    double list_sum = 0;

    std::string render() const {
        char buf[256];
        if (trials == 0) return "summary trials=0 rate=undefined mean_list_size=undefined\n";
        double p = double(successes) / trials;
        // Wilson 95% interval
        double z = 1.959963985;
        double z2 = z * z, n = trials;
        double center = (p + z2 / (2 * n)) / (1 + z2 / n);
        double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
        std::snprintf(buf, sizeof buf,
                      "summary trials=%u successes=%u rate=%.6f ci95=[%.6f,%.6f] "
                      "mean_list_size=%.6f\n",
                      trials, successes, p, std::max(0.0, center - half),
                      std::min(1.0, center + half), list_sum / trials);
        return buf;
    }
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    ExperimentResult out;
    std::ostringstream report;
    Summary summary;
    rng::Stream master(cfg.seed);
    CodeParams params = cfg.code_params();

    for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
        auto trial_rng = master.derive(trial);
        TrialRecord rec;
        rec.index = trial;
        double t0 = now_ms();

        if (cfg.decoder == "local") {
            LocalCfg lcfg = cfg.local_cfg();
            MultiPoly planted =
                codes::random_multipoly(params.field, params.m, params.d, trial_rng);
            std::vector<felem> flat;
            for (const auto& [e, c] : planted.terms) {
                for (auto v : e) flat.push_back(v);
                flat.push_back(c);
            }
            rec.planted_id = fnv1a(flat);
            Codeword cw = codes::mult_encode(params, planted);
            double t1 = now_ms();
            auto chan_rng = trial_rng.derive("channel");
            ListWord S = cfg.adversarial
                             ? codes::plant_channel_adversarial(params, cw, cfg.alpha, cfg.ell,
                                                                chan_rng)
                             : codes::plant_channel(params, cw, cfg.alpha, cfg.ell, chan_rng);
            double t2 = now_ms();
            auto dec_rng = trial_rng.derive("decode");
            auto decoders = local::local_list_recover(S, lcfg, dec_rng);
            rec.list_size = decoders.size();
            bool any_good = false;
            auto pt_rng = trial_rng.derive("points");
            std::vector<std::vector<felem>> points;
            for (std::uint32_t k = 0; k < cfg.check_points; ++k) {
                std::vector<felem> x(params.m);
                for (auto& v : x) v = felem(pt_rng.below(params.field.q()));
                points.push_back(std::move(x));
            }
            for (auto& dec : decoders) {
                std::uint32_t good_points = 0;
                for (const auto& x : points) {
                    std::uint32_t hits = 0;
                    for (std::uint32_t it = 0; it < cfg.inner_trials; ++it) {
                        std::size_t idx = 0;
                        for (std::uint32_t j = 0; j < params.m; ++j)
                            idx = idx * params.field.q() + x[j];
                        hits += (dec.decode(x) == cw.symbols[idx]);
                    }
                    good_points += (3 * hits >= 2 * cfg.inner_trials);
                }
                rec.queries += dec.total_queries();
                any_good |= (good_points * 10 >= cfg.check_points * 7);
            }
            rec.success = any_good;
            rec.decode_ms = now_ms() - t2;
            rec.corrupt_ms = t2 - t1;
            rec.encode_ms = t1 - t0;
        } else {
            Poly planted = codes::random_poly(params.field, params.d, trial_rng);
            std::vector<felem> flat(params.d + 1, 0);
            for (std::size_t k = 0; k < planted.c.size(); ++k) flat[k] = planted.c[k];
            rec.planted_id = fnv1a(flat);
            Codeword cw = codes::encode(params, planted);
            double t1 = now_ms();
            auto chan_rng = trial_rng.derive("channel");
            ListWord S = cfg.adversarial
                             ? codes::plant_channel_adversarial(params, cw, cfg.alpha, cfg.ell,
                                                                chan_rng)
                             : codes::plant_channel(params, cw, cfg.alpha, cfg.ell, chan_rng);
            double t2 = now_ms();
            auto dec_rng = trial_rng.derive("decode");
            std::vector<Poly> found;
            if (cfg.decoder == "frs")
                found = prune::list_recover_frs(S, params, cfg.eps_or_delta, cfg.ell, dec_rng,
                                                cfg.opts);
            else
                found = prune::list_recover_mult(S, params, cfg.eps_or_delta, cfg.ell, dec_rng,
                                                 cfg.decoder == "mult-small-d"
                                                     ? prune::MultMode::small_d
                                                     : prune::MultMode::whole_field,
                                                 cfg.opts);
            rec.list_size = found.size();
            for (const auto& p : found) rec.success |= (p == planted);
            rec.decode_ms = now_ms() - t2;
            rec.corrupt_ms = t2 - t1;
            rec.encode_ms = t1 - t0;
        }

        report << "trial=" << rec.index << " planted=" << rec.planted_id
               << " success=" << (rec.success ? 1 : 0) << " list_size=" << rec.list_size;
        if (cfg.decoder == "local") report << " queries=" << rec.queries;
        if (cfg.timings) {
            char buf[128];
            std::snprintf(buf, sizeof buf, " encode_ms=%.3f corrupt_ms=%.3f decode_ms=%.3f",
                          rec.encode_ms, rec.corrupt_ms, rec.decode_ms);
            report << buf;
        }
        report << '\n';
        summary.trials++;
        summary.successes += rec.success;
        summary.list_sum += double(rec.list_size);
        out.records.push_back(rec);
    }
    report << summary.render();
    out.report = report.str();
    return out;
}

}  // namespace listrec
