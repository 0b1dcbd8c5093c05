#pragma once

#include "moswacp/instance.hpp"
#include "moswacp/schedule.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace moswacp {

struct TracePoint {
    long iter = 0;
    double elapsed_s = 0;
    double best = 0;
};

/// Evaluation/time budget. Zero means "no limit" for that dimension.
struct Budget {
    long max_evals = 0;
    double max_seconds = 0;
    bool deterministic() const { return max_evals > 0 && max_seconds <= 0; }
};

struct SolveResult {
    bool ok = false;
    std::string error;
    std::string algo;
    std::uint64_t seed = 0;
    Chromosome best;
    double objective = 0;
    int makespan = 0;
    bool proven = false; // exact solver only
    long evaluations = 0;
    double wall_time_s = 0;
    bool deterministic_trace = false; // elapsed written as 0 in traces
    std::vector<TracePoint> trace;

    /// schema "solve-result v1"
    std::string to_json(const Instance& inst) const;

    /// header iter,elapsed_s,best
    std::string trace_csv() const;
};

/// Read the chromosome back out of a solve-result v1 document.
Chromosome chromosome_from_json(const std::string& json_text);

} // namespace moswacp
