#pragma once

#include "moswacp/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moswacp {

/// The (2n+3K)-dimensional solution vector: start times, workshop
/// install/dismantle times, execution modes, availability levels.
/// start/mode are indexed by non-dummy activity minus one (activity i is
/// start[i-1]); workshop arrays are indexed by workshop.
///
/// Time is zero-based and half-open: activity i runs over periods
/// [start, start + d). Reports print one-based days (start day = start + 1,
/// finish day = start + d).
struct Chromosome {
    std::vector<int> start;         // S_i, size n
    std::vector<int> osw_install;   // SW_k, size K
    std::vector<int> osw_dismantle; // FW_k, size K
    std::vector<int> mode;          // M_i, size n
    std::vector<int> avail;         // R_k, size K

    int dim() const {
        return static_cast<int>(2 * start.size() + 3 * avail.size());
    }
    // flat gene layout: [S | SW | FW | M | R]
    int gene(int idx) const;
    void set_gene(int idx, int value);

    bool operator==(const Chromosome&) const = default;
};

/// Installation window of one workshop, half-open [sw, fw).
/// Workshops demanded by no activity keep sw = fw = 0 and are never installed.
struct Window {
    int sw = 0;
    int fw = 0;
    bool empty() const { return fw <= sw; }
    /// Billed availability duration in days: dismantle day minus install day.
    int days() const { return empty() ? 0 : fw - sw - 1; }
    bool operator==(const Window&) const = default;
};

enum class ConstraintTag { Precedence, OswCapacity, SiteCapacity, OswWindow, Deadline, Mode, Lifetime };

const char* constraint_tag_name(ConstraintTag tag);

struct Diagnostic {
    ConstraintTag tag;
    int activity = -1;
    int other = -1;    // second activity for precedence
    int workshop = -1;
    int period = -1;
    std::string message() const;
};

struct DecodedSchedule {
    std::vector<std::vector<int>> occupancy; // [K][T+1]
    int makespan = 0;
    std::vector<Window> window;              // the chromosome's windows
    bool feasible = false;
    std::vector<Diagnostic> violations;
};

/// Serial schedule generation: scan activities in topological order (ascending
/// index within levels), start each at its earliest period such that
/// per-workshop occupancy stays within avail, concurrently-installed
/// availability stays within Q, lifetimes hold, and the activity finishes by
/// T_max. Returns nullopt on horizon exhaustion.
std::optional<std::vector<int>> decode_serial(const Instance& inst, const std::vector<int>& mode,
                                              const std::vector<int>& avail);

/// decode_serial with an explicit placement order. The order must list every
/// non-dummy activity exactly once and be precedence-consistent.
std::optional<std::vector<int>> decode_with_order(const Instance& inst, const std::vector<int>& mode,
                                                  const std::vector<int>& avail,
                                                  const std::vector<int>& order);

/// Workshop installation windows from the schedule: sw = earliest start and
/// fw = latest finish over the activities whose chosen mode demands the
/// workshop.
std::vector<Window> osw_windows(const Instance& inst, const std::vector<int>& start,
                                const std::vector<int>& mode);

/// sum_k C_k * R_k
double objective_level(const Instance& inst, const std::vector<int>& avail);

/// sum_k cost_per_day_k * window_k.days(). Throws when a non-empty window's
/// workshop has no per-day cost.
double objective_duration(const Instance& inst, const std::vector<Window>& windows);

/// The instance's configured objective for a chromosome.
double objective_value(const Instance& inst, const Chromosome& sol);

int makespan_of(const Instance& inst, const std::vector<int>& start, const std::vector<int>& mode);

/// Full feasibility verdict: precedence, per-workshop occupancy vs avail,
/// site capacity over installed windows, window coverage of every demanding
/// activity, deadline, and lifetime caps.
DecodedSchedule check_feasible(const Instance& inst, const Chromosome& sol);

/// Per-activity start/finish table and per-workshop window table, one-based days.
std::string schedule_report(const Instance& inst, const Chromosome& sol);

/// CSV with one row per activity then one per workshop, for plotting.
std::string schedule_csv(const Instance& inst, const Chromosome& sol);

} // namespace moswacp
