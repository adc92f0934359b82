#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "listrec/codes.hpp"
#include "listrec/rng.hpp"
#include "listrec/subspace.hpp"

namespace listrec {

// Knobs for the randomized pruning pipelines. Fields left unset fall back
// to defaults computed from the decoding-radius analysis; strict mode
// additionally enforces the parameter regime each pipeline needs.
struct RecoverOptions {
    bool strict = true;
    std::optional<std::uint32_t> r;
    std::optional<std::uint32_t> tau;
    std::optional<std::uint32_t> repetitions;
    std::optional<Rat> alpha;  // decoding radius override
};

// Diagnostics from one pipeline run.
struct PipelineTrace {
    AffinePolySpace space;
    std::uint32_t r = 0;
    std::uint32_t tau = 0;
    std::uint32_t repetitions = 0;
    Rat alpha;
};

namespace prune {

// One round of randomized pruning: sample tau coordinates, and for every
// choice of one list entry per coordinate add the unique space element
// matching all of them (nothing is added when zero or several match).
std::vector<Poly> prune_frs(const ListWord& S, const AffinePolySpace& space,
                            const CodeParams& params, std::uint32_t tau, rng::Stream& rng);

std::vector<Poly> prune_mult(const ListWord& S, const AffinePolySpace& space,
                             const CodeParams& params, std::uint32_t tau, rng::Stream& rng);

// Full pipeline: operator interpolation, solution space, `repetitions`
// independent pruning rounds, then a distance filter at radius alpha
// (so no out-of-radius polynomial is ever returned).
std::vector<Poly> list_recover_frs(const ListWord& S, const CodeParams& params, const Rat& eps,
                                   std::uint32_t ell, rng::Stream& rng,
                                   const RecoverOptions& opts = {},
                                   PipelineTrace* trace = nullptr);

enum class MultMode : std::uint8_t { small_d, whole_field };

// small_d: delta_or_eps is the capacity gap eps, alpha = 1 - d/(sn) - eps.
// whole_field: delta_or_eps is delta with d < (1-delta)sq; alpha defaults to
// 1/(4s) and must stay below 1/(2s) in strict mode.
std::vector<Poly> list_recover_mult(const ListWord& S, const CodeParams& params,
                                    const Rat& delta_or_eps, std::uint32_t ell,
                                    rng::Stream& rng, MultMode mode,
                                    const RecoverOptions& opts = {},
                                    PipelineTrace* trace = nullptr);

}  // namespace prune
}  // namespace listrec
