#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "listrec/codes.hpp"
#include "listrec/prune.hpp"
#include "listrec/rm_grid.hpp"

namespace listrec {

// Configuration for local list-recovery of multivariate multiplicity codes.
// The asymptotic lower bounds on q are enforced unless `relaxed` is set; the
// relaxed knobs exist so the algorithmic chain can run at desk sizes.
struct LocalCfg {
    CodeParams params;  // mult family, m >= 2
    std::uint32_t ell = 1;
    Rat alpha;        // error tolerance of the input lists
    Rat alpha_prime;  // univariate line-recovery radius; 0 = default 2*alpha
    std::uint32_t s_star = 1;  // advice derivative order (>= s)
    std::uint32_t U_size = 0;  // grid side for candidate recovery; 0 = default
    std::uint32_t L_est = 1;   // univariate list-size estimate L
    std::uint64_t K_param = 0;  // Johnson parameter; 0 = default 100 m^2
    std::uint64_t C_const = 576;
    bool relaxed = false;

    // univariate line decoding (whole-field pipeline) knobs
    RecoverOptions line_opts;
    // candidate aggregation
    Rat rm_alpha = Rat(1, 3);
    std::optional<Rat> rm_slice_radius;
    std::optional<Rat> rm_combine_radius;
    // self-correction
    std::uint32_t line_budget_factor = 4;  // samples 4 (2s)^m directions
    Rat self_correct_radius = Rat(1, 10);  // per-line unique-decode radius
    RecoverOptions sc_line_opts;

    Rat delta() const;  // 1 - d/(sq)
    Rat effective_alpha_prime() const;
    std::uint32_t effective_u_size() const;
    std::uint64_t effective_k() const;
};

// Read-only view of a list word with a query counter.
class ListOracle {
  public:
    ListOracle(const ListWord& S, const CodeParams& params);
    const std::vector<std::vector<felem>>& get(std::size_t pos) const;
    const std::vector<std::vector<felem>>& get(const std::vector<felem>& pt) const;
    std::size_t index_of(const std::vector<felem>& pt) const;
    std::uint64_t queries() const { return queries_; }
    void reset_queries() { queries_ = 0; }
    const CodeParams& params() const { return params_; }

  private:
    const ListWord& word_;
    CodeParams params_;
    mutable std::uint64_t queries_ = 0;
};

// A point symbol or an erasure.
using SymbolOracle =
    std::function<std::optional<std::vector<felem>>(const std::vector<felem>&)>;

namespace local {

// Candidate order-<stilde evaluations of nearby codewords at the point a,
// aggregated from univariate recoveries along lines through a.
std::vector<std::vector<felem>> recover_candidates(ListOracle& S, const std::vector<felem>& a,
                                                   std::uint32_t stilde, const LocalCfg& cfg,
                                                   rng::Stream& rng);

// Memo of univariate recoveries keyed by canonical line (base, direction).
using LineCache = std::map<std::pair<std::vector<felem>, std::vector<felem>>,
                           std::vector<Poly>>;

// Advice-driven oracle machine: decodes the line through x and the advice
// point, disambiguates by the order-<s* evaluation at the advice point, and
// returns the unique matching list entry at x (or nothing). A caller-owned
// cache shares line recoveries across invocations with the same advice.
std::optional<std::vector<felem>> oracle_eval(ListOracle& S, const std::vector<felem>& a,
                                              const std::vector<felem>& z,
                                              const std::vector<felem>& x, const LocalCfg& cfg,
                                              LineCache* cache = nullptr);

// Local self-correction with per-position line caching; `word` may return
// erasures, which are dropped from the per-line decode.
class SelfCorrector {
  public:
    SelfCorrector(SymbolOracle word, const LocalCfg& cfg);
    std::vector<felem> correct(const std::vector<felem>& x, rng::Stream& rng);
    std::uint64_t word_queries() const { return word_queries_; }
    std::uint64_t last_line_count() const { return last_line_count_; }

  private:
    struct LineFit {
        bool ok = false;
        Poly poly;  // canonical parametrization
    };
    const LineFit& fit_line(const std::vector<felem>& base, const std::vector<felem>& dir);

    SymbolOracle word_;
    LocalCfg cfg_;
    std::map<std::pair<std::vector<felem>, std::vector<felem>>, LineFit> cache_;
    std::map<std::vector<felem>, std::optional<std::vector<felem>>> word_cache_;
    std::uint64_t word_queries_ = 0;
    std::uint64_t last_line_count_ = 0;
};

std::vector<felem> self_correct(const SymbolOracle& word, const std::vector<felem>& x,
                                const LocalCfg& cfg, rng::Stream& rng);

}  // namespace local

// One entry of the output list: a randomized local algorithm computing
// codeword symbols from the advice (a, z).
class LocalDecoder {
  public:
    LocalDecoder(const ListWord& S, const LocalCfg& cfg, std::vector<felem> a,
                 std::vector<felem> z, rng::Stream rng);

    std::vector<felem> decode(const std::vector<felem>& x);

    const std::vector<felem>& advice_point() const { return a_; }
    const std::vector<felem>& advice() const { return z_; }
    // S-queries consumed by the most recent decode() call
    std::uint64_t last_queries() const { return last_queries_; }
    std::uint64_t total_queries() const { return oracle_.queries(); }
    std::uint64_t query_budget() const;

  private:
    std::optional<std::vector<felem>> virtual_word(const std::vector<felem>& x);

    LocalCfg cfg_;
    ListOracle oracle_;
    std::vector<felem> a_, z_;
    rng::Stream rng_;
    std::shared_ptr<local::SelfCorrector> corrector_;
    local::LineCache line_cache_;
    std::map<std::vector<felem>, std::optional<std::vector<felem>>> vw_cache_;
    std::uint64_t last_queries_ = 0;
};

namespace local {

// Top-level algorithm: random advice point, candidate advice list, one
// decoder per advice entry.
std::vector<LocalDecoder> local_list_recover(const ListWord& S, const LocalCfg& cfg,
                                             rng::Stream& rng);

}  // namespace local
}  // namespace listrec
