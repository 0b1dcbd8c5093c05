#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace moswacp {

/// One execution mode of an activity: a duration and the area it occupies in
/// each on-site workshop while running.
struct ModeSpec {
    int duration = 0;
    std::vector<int> space_demand; // indexed by workshop, size K

    bool operator==(const ModeSpec&) const = default;
};

struct Workshop {
    double unit_cost = 0.0;                          // C_k, cost per area unit of availability
    std::optional<int> max_lifetime;                 // cap on availability duration, days
    std::optional<double> cost_per_day;              // set for duration-cost instances
    std::optional<std::pair<int, int>> lead_times;   // install/dismantle lead days; metadata only,
                                                     // excluded from cost accounting

    bool operator==(const Workshop&) const = default;
};

/// Which objective the instance is scored with: sum C_k * R_k (Level) or
/// sum cost_per_day_k * availability_days_k (Duration).
enum class CostMode { Level, Duration };

/// An immutable MOSWACP problem instance. Activities are indexed 0..N+1 where
/// 0 and N+1 are the dummy source/sink; non-dummies are 1..N.
struct Instance {
    int n_activities = 0;                          // N, non-dummy count
    std::vector<std::vector<ModeSpec>> modes;      // per activity 0..N+1; dummies hold one zero mode
    std::vector<std::vector<int>> predecessors;    // per activity, sorted ascending
    std::vector<Workshop> workshops;               // size K
    int site_capacity = 0;                         // Q, area units
    int deadline = 0;                              // T_max, periods
    int horizon = 0;                               // T, periods
    CostMode cost_mode = CostMode::Level;

    int total_activities() const { return n_activities + 2; }
    int sink() const { return n_activities + 1; }
    int num_workshops() const { return static_cast<int>(workshops.size()); }
    int num_modes(int activity) const { return static_cast<int>(modes[activity].size()); }
    int duration(int activity, int mode) const { return modes[activity][mode].duration; }
    int demand(int activity, int mode, int workshop) const {
        return modes[activity][mode].space_demand[workshop];
    }

    /// Successor lists derived from predecessors.
    std::vector<std::vector<int>> successors() const;

    /// Non-dummy activities in topological order, smallest index first within
    /// each ready set. Empty when the precedence graph has a cycle.
    std::vector<int> topological_order() const;

    /// Canonicalize predecessor sets: sort, dedupe, drop dummy 0 when other
    /// predecessors exist, default empty sets to {0}.
    void normalize_predecessors();

    /// Longest path of minimum-duration activities from source to sink.
    int critical_path_min_duration() const;

    bool operator==(const Instance&) const = default;
};

struct ParseError : std::runtime_error {
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

/// Configuration for turning a PSPLIB multi-mode file into a MOSWACP instance.
struct AugmentConfig {
    std::vector<double> cost_choices{10, 20, 30, 50, 100};
    int space_lo = 0;
    int space_hi = 13;
    std::uint64_t seed = 1;
    double q_factor = 2.0;    // Q = q_factor * max single-activity total demand
    double tmax_factor = 1.5; // T_max = tmax_factor * min-duration critical path
};

/// Parse the canonical line-oriented instance format. Throws ParseError with a
/// line number on syntax errors and on semantic errors (cycle, missing mode,
/// non-positive Q, ...).
Instance parse_instance(const std::string& text);

/// Serialize to the canonical format; parse_instance(serialize_instance(x)) == x
/// for every valid instance.
std::string serialize_instance(const Instance& inst);

/// One diagnostic string per violated instance invariant; empty iff valid.
std::vector<std::string> validate_instance(const Instance& inst);

/// Import a PSPLIB multi-mode (.mm) document. Durations, precedence and mode
/// counts come from the file; renewable resources become workshops;
/// unit costs and space demands are drawn from cfg with one seeded stream
/// (costs for k = 0..K-1 first, then demands in (activity, mode, workshop)
/// ascending order). Non-renewable resources are ignored.
Instance import_psplib_mm(const std::string& text, const AugmentConfig& cfg);

} // namespace moswacp
