#pragma once

#include "moswacp/instance.hpp"
#include "moswacp/operators.hpp"
#include "moswacp/rng.hpp"
#include "moswacp/solve_result.hpp"

#include <optional>
#include <vector>

namespace moswacp {

/// ERSA parameters. Defaults are the tuned values: N=60, beta=0.5, E0=1500,
/// CV=50, M=3600, r=0.2, 60 s wall budget.
struct ErsaParams {
    int population = 60;       // N, streamer pool capacity
    double beta = 0.5;         // exploration probability per radar candidate
    long electrons = 1500;     // E0_n, per-streamer candidate budget
    int critical_value = 50;   // CV, stagnation threshold
    double radius = 0.2;       // r, fraction of genes mutated per exploitation candidate
    int radar_points = 3600;   // M, candidates sampled per radar step
    Budget budget{0, 60.0};
    std::uint64_t seed = 1;
    ImprovementMask improvement_mask = kAllImprovements;
};

struct Streamer {
    Chromosome current;
    Chromosome best;
    double current_obj = 0;
    double best_obj = 0;
    long electrons_left = 0;
    int stagnation = 0;
};

enum class StreamerEvent { Moved, Forked, Eliminated };

/// Sample one random feasible solution: modes uniform, availability above the
/// demand maxima (tiered down to the per-mode minimum when space is tight),
/// starts from the serial decoder, windows synchronized. attempts_used (when
/// given) counts decode attempts. Returns nullopt when every attempt fails.
std::optional<Chromosome> random_feasible_solution(const Instance& inst, Rng& rng,
                                                   int max_attempts = 60,
                                                   long* attempts_used = nullptr);

/// N feasible streamers with full electron budgets; nullopt when the instance
/// cannot be initialized within the attempt cap (error describes why).
std::optional<std::vector<Streamer>> init_population(const Instance& inst, const ErsaParams& params,
                                                     Rng& rng, std::string* error = nullptr,
                                                     long* evals = nullptr);

/// Best of up to max_candidates sampled neighbors (mutation of
/// ceil(r * dim) genes, or crossover with a fresh random solution with
/// probability beta), each passed through the masked improvement rules.
/// Returns sol when no candidate improves (objective, makespan).
Chromosome radar_search(const Instance& inst, const Chromosome& sol, const ErsaParams& params,
                        Rng& rng, long max_candidates, long* used = nullptr);

/// One streamer step: eliminate on stagnation >= CV or exhausted electrons;
/// otherwise radar-move; fork a fresh random streamer on strict best
/// improvement while the pool has headroom.
StreamerEvent step_streamer(const Instance& inst, Streamer& s, const ErsaParams& params, Rng& rng,
                            std::vector<Streamer>& pool, long* evals = nullptr);

SolveResult run_ersa(const Instance& inst, const ErsaParams& params);

/// ERSA ablation variants: 0 = no improvement rules, 1 = all but IR3,
/// 2 = all but IR2, 3 = all but IR1, 4 = all rules.
ImprovementMask ersa_variant_mask(int variant);

} // namespace moswacp
