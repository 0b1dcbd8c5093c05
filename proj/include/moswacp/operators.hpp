#pragma once

#include "moswacp/instance.hpp"
#include "moswacp/rng.hpp"
#include "moswacp/schedule.hpp"

#include <iosfwd>
#include <optional>
#include <utility>

namespace moswacp {

enum ImprovementRule : unsigned {
    IR1 = 1u << 0, // switch execution modes
    IR2 = 1u << 1, // reschedule within float
    IR3 = 1u << 2, // regularize availability to peak occupancy
};
using ImprovementMask = unsigned;
constexpr ImprovementMask kAllImprovements = IR1 | IR2 | IR3;

struct OperatorConfig {
    int crossover_point = 1;              // C_p, flat gene index in [1, dim)
    int mutation_count = 1;               // r_m, genes resampled per mutation
    ImprovementMask improvement_mask = kAllImprovements;
};

/// Optional JSON-lines trace of operator applications (flag-gated debugging aid).
struct OpLog {
    std::ostream* out = nullptr;
    void event(const char* op, const char* what);
};

/// Pure single-point splice at gene index cp, no repair. Offspring a keeps
/// p1's prefix, offspring b keeps p2's.
std::pair<Chromosome, Chromosome> crossover_raw(const Chromosome& p1, const Chromosome& p2, int cp);

/// Single-point crossover with repair; an offspring whose repair fails is
/// replaced by its nearer parent (gene Hamming distance).
std::pair<Chromosome, Chromosome> crossover(const Instance& inst, const Chromosome& p1,
                                            const Chromosome& p2, int cp, OpLog* log = nullptr);

/// Resample r_m distinct genes within their domains, then repair. Returns the
/// input unchanged when repair reports horizon exhaustion.
Chromosome mutate(const Instance& inst, const Chromosome& sol, int r_m, Rng& rng, OpLog* log = nullptr);

/// Feasible inputs are fixed points. Otherwise availabilities are clamped into
/// [per-mode max demand, Q], starts re-decoded serially, and windows
/// resynchronized; nullopt on horizon exhaustion.
std::optional<Chromosome> repair(const Instance& inst, const Chromosome& sol);

/// IR1: greedily switch execution modes (ascending activity, ascending mode),
/// keeping a switch only when the repaired result does not worsen
/// (objective, makespan) lexicographically.
Chromosome ir1_switch_mode(const Instance& inst, const Chromosome& sol);

/// IR2: double justification. Right-justify activities within precedence and
/// capacity float, then rebuild left-justified in right-start order; keeps the
/// result only when neither objective nor makespan worsens.
Chromosome ir2_reschedule_float(const Instance& inst, const Chromosome& sol);

/// IR3: lower every availability level to its workshop's peak occupancy.
Chromosome ir3_regularize_avail(const Instance& inst, const Chromosome& sol);

/// Apply the masked improvement rules in order IR1, IR2, IR3.
Chromosome apply_improvements(const Instance& inst, const Chromosome& sol, ImprovementMask mask);

/// Minimum viable availability for workshop k under the given mode choice.
int min_avail_for_modes(const Instance& inst, const std::vector<int>& mode, int k);

/// Resample one flat gene within its domain: starts and window times in
/// [0, T], modes uniformly among the activity's other modes, availability in
/// [per-mode max demand, max(Q, that)].
void resample_gene(const Instance& inst, Chromosome& c, int pos, Rng& rng);

/// Build the chromosome for a decoded schedule: starts, Eq-18 windows, the
/// given modes and availabilities.
Chromosome assemble_chromosome(const Instance& inst, std::vector<int> starts, std::vector<int> mode,
                               std::vector<int> avail);

} // namespace moswacp
