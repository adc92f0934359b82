#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "listrec/local.hpp"
#include "listrec/prune.hpp"

namespace listrec {

// Parsed experiment description. The text format is flat key=value lines
// with optional [section] headers that prefix the keys (code.q, channel.ell,
// ...); see parse_experiment_config.
struct ExperimentConfig {
    // code
    Family family = Family::frs;
    std::uint32_t q = 5, s = 2, m = 1, n = 2, d = 1;
    // channel
    Rat alpha;
    std::uint32_t ell = 1;
    bool adversarial = false;
    // decoder: frs | mult-small-d | mult-whole | local
    std::string decoder = "frs";
    Rat eps_or_delta = Rat(1, 4);
    RecoverOptions opts;
    // local decoder knobs
    Rat alpha_prime = Rat(3, 20);
    std::uint32_t s_star = 0;  // 0 = s
    std::uint32_t u_size = 0;
    std::uint32_t l_est = 2;
    std::uint64_t k_param = 9;
    Rat rm_slice_radius = Rat(1, 5);
    Rat rm_combine_radius = Rat(1, 5);
    Rat self_correct_radius = Rat(3, 20);
    std::uint32_t check_points = 5;
    std::uint32_t inner_trials = 3;
    // run
    std::uint32_t trials = 1;
    std::uint64_t seed = 0;
    bool timings = false;

    CodeParams code_params() const;
    LocalCfg local_cfg() const;
};

struct TrialRecord {
    std::uint32_t index = 0;
    std::uint64_t planted_id = 0;  // stable hash of the planted message
    bool success = false;
    std::size_t list_size = 0;
    std::uint64_t queries = 0;  // local decoders only
    double encode_ms = 0, corrupt_ms = 0, decode_ms = 0;
};

struct ExperimentResult {
    std::vector<TrialRecord> records;
    std::string report;  // deterministic unless timings were requested
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::uint64_t fnv1a(const std::vector<felem>& values);

}  // namespace listrec
