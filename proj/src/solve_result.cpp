#include "moswacp/solve_result.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>

namespace moswacp {

std::string SolveResult::to_json(const Instance& inst) const {
    nlohmann::json j;
    j["schema"] = "solve-result v1";
    j["algo"] = algo;
    j["seed"] = seed;
    j["ok"] = ok;
    if (!ok) {
        j["error"] = error;
        return j.dump(2) + "\n";
    }
    j["objective"] = objective;
    j["makespan"] = makespan;
    j["cost_mode"] = inst.cost_mode == CostMode::Level ? "level" : "duration";
    j["proven"] = proven;
    j["evaluations"] = evaluations;
    j["wall_time_s"] = wall_time_s;
    j["chromosome"] = {{"start", best.start},
                       {"osw_install", best.osw_install},
                       {"osw_dismantle", best.osw_dismantle},
                       {"mode", best.mode},
                       {"avail", best.avail}};
    auto windows = nlohmann::json::array();
    for (std::size_t k = 0; k < best.avail.size(); ++k)
        windows.push_back({best.osw_install[k], best.osw_dismantle[k]});
    j["windows"] = windows;
    return j.dump(2) + "\n";
}

std::string SolveResult::trace_csv() const {
    std::ostringstream out;
    out << "iter,elapsed_s,best\n";
    char buf[64];
    for (const auto& p : trace) {
        double elapsed = deterministic_trace ? 0.0 : p.elapsed_s;
        std::snprintf(buf, sizeof buf, "%ld,%.3f,%.6f\n", p.iter, elapsed, p.best);
        out << buf;
    }
    return out.str();
}

Chromosome chromosome_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    if (!j.contains("schema") || j["schema"] != "solve-result v1")
        throw std::runtime_error("not a solve-result v1 document");
    const auto& c = j.at("chromosome");
    Chromosome out;
    out.start = c.at("start").get<std::vector<int>>();
    out.osw_install = c.at("osw_install").get<std::vector<int>>();
    out.osw_dismantle = c.at("osw_dismantle").get<std::vector<int>>();
    out.mode = c.at("mode").get<std::vector<int>>();
    out.avail = c.at("avail").get<std::vector<int>>();
    return out;
}

} // namespace moswacp
