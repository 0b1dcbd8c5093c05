#pragma once

#include "moswacp/instance.hpp"
#include "moswacp/schedule.hpp"

#include <string>

namespace moswacp {

struct ExactLimits {
    int max_activities = 8;
    int max_modes_total = 24;
    int max_horizon = 64;
    long node_budget = 50'000'000;
};

bool within_limits(const Instance& inst, const ExactLimits& limits);

struct ExactResult {
    bool found = false;   // an incumbent exists
    bool proven = false;  // search completed within the node budget
    Chromosome best;
    double objective = 0.0;
    long nodes = 0;
};

/// Depth-first search over (mode vector, start vector) in topological order
/// with precedence, deadline, site-capacity, lifetime and cost-bound pruning.
/// Availability is fixed to per-workshop peak occupancy, which is optimal
/// because the objective is monotone in R_k and reducing avail to the peak
/// never breaks feasibility. found && proven means a certified optimum;
/// !found && proven means certified infeasible.
ExactResult enumerate_optimal(const Instance& inst, const ExactLimits& limits);

enum class MilpSemantics { PaperLiteral, TimeIndexed };

struct MilpExportConfig {
    double alpha = 0.75;       // linearization constant, must lie in [0.5, 1)
    double big_m = -1;         // <= 0 means use Q
    MilpSemantics semantics = MilpSemantics::TimeIndexed;
};

struct MilpStats {
    long n_x = 0, n_z = 0, n_y = 0, n_yp = 0, n_w = 0, n_r = 0, n_rp = 0;
    long n_rows = 0;
    long variables() const { return n_x + n_z + n_y + n_yp + n_w + n_r + n_rp; }
};

/// Emit the linearized MILP in CPLEX-LP text. PaperLiteral keeps the printed
/// row forms (horizon-aggregated installation, mode-aggregated occupancy);
/// TimeIndexed links occupancy and installation to start periods and forces
/// each workshop's installed periods to form one interval.
/// Variable naming: x_i_t, z_i_j, y_k_t, yp_i_j_k_t, R_k, Rp_k_t, w_k_t.
std::string export_lp(const Instance& inst, const MilpExportConfig& cfg, MilpStats* stats = nullptr);

} // namespace moswacp
