// Experiment CLI for the list-recovery library. All functionality goes
// through the C API in listrec/listrec.h; this file only parses arguments
// and moves bytes between files and the library.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "listrec/listrec.h"

namespace {

int die(lr_status st, const std::string& context) {
    std::cerr << "error: " << context << ": " << lr_last_error() << " (status " << int(st)
              << ")\n";
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const char* data, size_t size) {
    if (path.empty() || path == "-") {
        std::cout.write(data, std::streamsize(size));
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out.write(data, std::streamsize(size));
}

struct RatArg {
    int64_t num = 0;
    int64_t den = 1;
};

// accepts "a/b", integers, and short decimals
bool parse_rat(const std::string& text, RatArg& out) {
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            out.num = std::stoll(text.substr(0, slash));
            out.den = std::stoll(text.substr(slash + 1));
            return out.den != 0;
        }
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            size_t frac = text.size() - dot - 1;
            if (frac > 15) return false;
            out.num = std::stoll(digits);
            out.den = 1;
            for (size_t i = 0; i < frac; ++i) out.den *= 10;
            return true;
        }
        out.num = std::stoll(text);
        out.den = 1;
        return true;
    } catch (...) {
        return false;
    }
}

struct CodeArgs {
    std::string family = "frs";
    uint32_t q = 5, s = 2, m = 1, n = 2, d = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "code family: frs or mult")
            ->check(CLI::IsMember({"frs", "mult"}));
        cmd->add_option("--q", q, "field size (prime)")->required();
        cmd->add_option("--s", s, "folding / multiplicity parameter");
        cmd->add_option("--m", m, "number of variables (mult only)");
        cmd->add_option("--n", n, "block length (q^m for multivariate)");
        cmd->add_option("--d", d, "degree bound");
    }
    lr_status make(lr_code** out) const {
        return lr_code_create(family == "frs" ? LR_FAMILY_FRS : LR_FAMILY_MULT, q, s, m, n, d,
                              out);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field list-recovery experiments"};
    app.require_subcommand(1);

    // ---- encode ----
    auto* enc = app.add_subcommand("encode", "encode a message polynomial");
    CodeArgs enc_code;
    enc_code.attach(enc);
    std::string enc_coeffs, enc_out;
    uint64_t enc_seed = 0;
    bool enc_random = false;
    enc->add_option("--poly", enc_coeffs, "comma-separated coefficients, constant first");
    enc->add_flag("--random", enc_random, "encode a random message (requires --seed)");
    enc->add_option("--seed", enc_seed, "seed for --random");
    enc->add_option("--out", enc_out, "output file (default stdout)");

    // ---- corrupt ----
    auto* cor = app.add_subcommand("corrupt", "turn a codeword into a noisy list word");
    std::string cor_family = "frs", cor_in, cor_out, cor_alpha = "0";
    uint32_t cor_ell = 1;
    bool cor_adversarial = false;
    uint64_t cor_seed = 0;
    cor->add_option("--family", cor_family)->check(CLI::IsMember({"frs", "mult"}));
    cor->add_option("--in", cor_in, "codeword file")->required();
    cor->add_option("--alpha", cor_alpha, "error fraction (rational like 1/4)");
    cor->add_option("--ell", cor_ell, "list size");
    cor->add_flag("--adversarial", cor_adversarial, "decoys from random codewords");
    cor->add_option("--seed", cor_seed, "rng seed")->required();
    cor->add_option("--out", cor_out, "output file (default stdout)");

    // ---- list-recover ----
    auto* rec = app.add_subcommand("list-recover", "run the list-recovery pipeline");
    std::string rec_family = "frs", rec_in, rec_mode = "frs", rec_eps = "1/4", rec_alpha;
    uint32_t rec_ell = 1, rec_r = 0, rec_tau = 0, rec_reps = 0;
    bool rec_strict = false;
    uint64_t rec_seed = 0;
    rec->add_option("--family", rec_family)->check(CLI::IsMember({"frs", "mult"}));
    rec->add_option("--in", rec_in, "list word file")->required();
    rec->add_option("--mode", rec_mode, "frs | mult-small-d | mult-whole")
        ->check(CLI::IsMember({"frs", "mult-small-d", "mult-whole"}));
    rec->add_option("--eps", rec_eps, "capacity gap eps (or delta for mult-whole)");
    rec->add_option("--alpha", rec_alpha, "decoding radius override");
    rec->add_option("--ell", rec_ell, "input list size");
    rec->add_option("--r", rec_r, "operator order override");
    rec->add_option("--tau", rec_tau, "pruning sample count override");
    rec->add_option("--repetitions", rec_reps, "pruning round override");
    rec->add_flag("--strict", rec_strict, "enforce the theorem parameter regime");
    rec->add_option("--seed", rec_seed, "rng seed")->required();

    // ---- local-recover ----
    auto* loc = app.add_subcommand("local-recover",
                                   "plant, corrupt and locally list-recover (experiment)");
    std::string loc_config;
    loc->add_option("--config", loc_config, "experiment config file with decoder.kind=local")
        ->required();

    // ---- ael ----
    auto* ael = app.add_subcommand("ael", "expander-fold utilities");
    uint32_t ael_n = 256, ael_d = 64;
    uint64_t ael_seed = 0;
    std::string ael_out;
    bool ael_demo = false;
    ael->add_option("--N", ael_n, "vertices per side");
    ael->add_option("--D", ael_d, "degree");
    ael->add_option("--seed", ael_seed, "rng seed")->required();
    ael->add_option("--out", ael_out, "write the sampled graph here");
    ael->add_flag("--demo", ael_demo, "run the certification + round-trip demo");

    // ---- experiment / verify / bench ----
    auto* exp = app.add_subcommand("run", "run a config-driven experiment");
    std::string exp_config, exp_out;
    exp->add_option("--config", exp_config, "experiment config file")->required();
    exp->add_option("--out", exp_out, "output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    std::vector<int> ver_only;
    ver->add_option("--only", ver_only, "criterion ids to run (default all)");

    auto* ben = app.add_subcommand("bench", "micro-benchmarks of the core operations");

    CLI11_PARSE(app, argc, argv);

    if (enc->parsed()) {
        lr_code* code = nullptr;
        if (auto st = enc_code.make(&code); st != LR_OK) return die(st, "code parameters");
        std::vector<uint32_t> coeffs;
        if (enc_random) {
            lr_buffer* buf = nullptr;
            if (auto st = lr_random_message(code, enc_seed, &buf); st != LR_OK)
                return die(st, "random message");
            std::istringstream is(lr_buffer_data(buf));
            std::string tok;
            while (std::getline(is, tok, ',')) coeffs.push_back(uint32_t(std::stoul(tok)));
            lr_buffer_free(buf);
        } else {
            std::istringstream is(enc_coeffs);
            std::string tok;
            while (std::getline(is, tok, ',')) coeffs.push_back(uint32_t(std::stoul(tok)));
        }
        lr_codeword* cw = nullptr;
        if (auto st = lr_encode(code, coeffs.data(), coeffs.size(), &cw); st != LR_OK)
            return die(st, "encode");
        lr_buffer* out = nullptr;
        if (auto st = lr_codeword_serialize(code, cw, &out); st != LR_OK)
            return die(st, "serialize");
        write_output(enc_out, lr_buffer_data(out), lr_buffer_size(out));
        lr_buffer_free(out);
        lr_codeword_free(cw);
        lr_code_free(code);
        return 0;
    }

    if (cor->parsed()) {
        RatArg alpha;
        if (!parse_rat(cor_alpha, alpha)) return die(LR_ERR_CONFIG_INVALID, "--alpha");
        lr_code* code = nullptr;
        lr_codeword* cw = nullptr;
        auto st = lr_codeword_parse(cor_family == "frs" ? LR_FAMILY_FRS : LR_FAMILY_MULT,
                                    read_file(cor_in).c_str(), &code, &cw);
        if (st != LR_OK) return die(st, "parse codeword");
        lr_listword* lw = nullptr;
        st = lr_corrupt(code, cw, alpha.num, alpha.den, cor_ell, cor_adversarial ? 1 : 0,
                        cor_seed, &lw);
        if (st != LR_OK) return die(st, "corrupt");
        lr_buffer* out = nullptr;
        if ((st = lr_listword_serialize(code, lw, &out)) != LR_OK) return die(st, "serialize");
        write_output(cor_out, lr_buffer_data(out), lr_buffer_size(out));
        lr_buffer_free(out);
        lr_listword_free(lw);
        lr_codeword_free(cw);
        lr_code_free(code);
        return 0;
    }

    if (rec->parsed()) {
        lr_code* code = nullptr;
        lr_listword* lw = nullptr;
        auto st = lr_listword_parse(rec_family == "frs" ? LR_FAMILY_FRS : LR_FAMILY_MULT,
                                    read_file(rec_in).c_str(), &code, &lw);
        if (st != LR_OK) return die(st, "parse list word");
        RatArg eps, alpha;
        if (!parse_rat(rec_eps, eps)) return die(LR_ERR_CONFIG_INVALID, "--eps");
        lr_recover_options opts{};
        opts.strict = rec_strict ? 1 : 0;
        opts.mode = rec_mode == "frs" ? 0 : (rec_mode == "mult-small-d" ? 1 : 2);
        opts.eps_num = eps.num;
        opts.eps_den = eps.den;
        opts.ell = rec_ell;
        opts.r = rec_r;
        opts.tau = rec_tau;
        opts.repetitions = rec_reps;
        if (!rec_alpha.empty()) {
            if (!parse_rat(rec_alpha, alpha)) return die(LR_ERR_CONFIG_INVALID, "--alpha");
            opts.alpha_num = alpha.num;
            opts.alpha_den = alpha.den;
        }
        opts.seed = rec_seed;
        lr_polylist* pl = nullptr;
        if ((st = lr_list_recover(code, lw, &opts, &pl)) != LR_OK)
            return die(st, "list-recover");
        size_t count = lr_polylist_count(pl);
        std::cout << "recovered " << count << " polynomial(s)\n";
        std::vector<uint32_t> buf;
        for (size_t i = 0; i < count; ++i) {
            size_t len = lr_polylist_coeffs(pl, i, nullptr, 0);
            buf.assign(len ? len : 1, 0);
            lr_polylist_coeffs(pl, i, buf.data(), buf.size());
            for (size_t k = 0; k < len; ++k) std::cout << (k ? "," : "") << buf[k];
            if (len == 0) std::cout << 0;
            std::cout << '\n';
        }
        lr_polylist_free(pl);
        lr_listword_free(lw);
        lr_code_free(code);
        return 0;
    }

    if (loc->parsed() || exp->parsed()) {
        std::string config = read_file(loc->parsed() ? loc_config : exp_config);
        lr_buffer* report = nullptr;
        if (auto st = lr_run_experiment(config.c_str(), &report); st != LR_OK)
            return die(st, "experiment");
        write_output(exp->parsed() ? exp_out : "", lr_buffer_data(report),
                     lr_buffer_size(report));
        lr_buffer_free(report);
        return 0;
    }

    if (ael->parsed()) {
        if (ael_demo) {
            lr_buffer* report = nullptr;
            if (auto st = lr_ael_demo(ael_n, ael_d, ael_seed, &report); st != LR_OK)
                return die(st, "ael demo");
            std::cout << lr_buffer_data(report);
            lr_buffer_free(report);
            return 0;
        }
        lr_graph* g = nullptr;
        if (auto st = lr_graph_sample(ael_n, ael_d, ael_seed, &g); st != LR_OK)
            return die(st, "graph sample");
        lr_buffer* out = nullptr;
        if (auto st = lr_graph_serialize(g, &out); st != LR_OK) return die(st, "serialize");
        write_output(ael_out, lr_buffer_data(out), lr_buffer_size(out));
        lr_buffer_free(out);
        lr_graph_free(g);
        return 0;
    }

    if (ver->parsed()) {
        lr_buffer* report = nullptr;
        int passed = 0, total = 0;
        auto st = lr_verify(ver_only.empty() ? nullptr : ver_only.data(), ver_only.size(),
                            &report, &passed, &total);
        if (st != LR_OK) return die(st, "verify");
        std::cout << lr_buffer_data(report);
        std::cout << "acceptance: " << passed << "/" << total << " criteria passed\n";
        bool ok = passed == total && total > 0;
        lr_buffer_free(report);
        return ok ? 0 : 2;
    }

    if (ben->parsed()) {
        lr_buffer* report = nullptr;
        if (auto st = lr_bench(&report); st != LR_OK) return die(st, "bench");
        std::cout << lr_buffer_data(report);
        lr_buffer_free(report);
        return 0;
    }

    return 0;
}
