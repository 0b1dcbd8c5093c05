#include "moswacp/schedule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace moswacp {

int Chromosome::gene(int idx) const {
    const int n = static_cast<int>(start.size());
    const int k = static_cast<int>(avail.size());
    if (idx < n) return start[idx];
    idx -= n;
    if (idx < k) return osw_install[idx];
    idx -= k;
    if (idx < k) return osw_dismantle[idx];
    idx -= k;
    if (idx < n) return mode[idx];
    idx -= n;
    return avail[idx];
}

void Chromosome::set_gene(int idx, int value) {
    const int n = static_cast<int>(start.size());
    const int k = static_cast<int>(avail.size());
    if (idx < n) {
        start[idx] = value;
        return;
    }
    idx -= n;
    if (idx < k) {
        osw_install[idx] = value;
        return;
    }
    idx -= k;
    if (idx < k) {
        osw_dismantle[idx] = value;
        return;
    }
    idx -= k;
    if (idx < n) {
        mode[idx] = value;
        return;
    }
    idx -= n;
    avail[idx] = value;
}

const char* constraint_tag_name(ConstraintTag tag) {
    switch (tag) {
    case ConstraintTag::Precedence: return "PRECEDENCE";
    case ConstraintTag::OswCapacity: return "OSW_CAPACITY";
    case ConstraintTag::SiteCapacity: return "SITE_CAPACITY";
    case ConstraintTag::OswWindow: return "OSW_WINDOW";
    case ConstraintTag::Deadline: return "DEADLINE";
    case ConstraintTag::Mode: return "MODE";
    case ConstraintTag::Lifetime: return "LIFETIME";
    }
    return "?";
}

std::string Diagnostic::message() const {
    std::ostringstream out;
    out << constraint_tag_name(tag);
    if (activity >= 0) out << " activity=" << activity;
    if (other >= 0) out << " other=" << other;
    if (workshop >= 0) out << " workshop=" << (workshop + 1);
    if (period >= 0) out << " period=" << period;
    return out.str();
}

std::optional<std::vector<int>> decode_serial(const Instance& inst, const std::vector<int>& mode,
                                              const std::vector<int>& avail) {
    auto order = inst.topological_order();
    if (static_cast<int>(order.size()) != inst.n_activities) return std::nullopt;
    return decode_with_order(inst, mode, avail, order);
}

std::optional<std::vector<int>> decode_with_order(const Instance& inst, const std::vector<int>& mode,
                                                  const std::vector<int>& avail,
                                                  const std::vector<int>& order) {
    const int n = inst.n_activities;
    const int K = inst.num_workshops();
    const int T = inst.horizon;

    if (static_cast<int>(order.size()) != n) return std::nullopt;

    std::vector<int> starts(n + 2, 0);
    std::vector<std::vector<int>> occ(K, std::vector<int>(T + 1, 0));
    std::vector<Window> win(K);
    std::vector<bool> used(K, false);
    std::vector<int> site_load(T + 1, 0); // sum of avail over workshops installed at t

    for (int i : order) {
        const int mi = mode[i - 1];
        if (mi < 0 || mi >= inst.num_modes(i)) return std::nullopt;
        const ModeSpec& ms = inst.modes[i][mi];
        const int d = ms.duration;

        int est = 0;
        for (int p : inst.predecessors[i]) {
            int dp = (p >= 1 && p <= n) ? inst.modes[p][mode[p - 1]].duration : 0;
            est = std::max(est, starts[p] + dp);
        }

        // any workshop whose cap is below the demand can never host this activity
        for (int k = 0; k < K; ++k)
            if (ms.space_demand[k] > 0 && avail[k] < ms.space_demand[k]) return std::nullopt;

        int chosen = -1;
        const int latest_finish = std::min(inst.deadline, inst.horizon);
        for (int s = est; s + d <= latest_finish; ++s) {
            bool ok = true;
            for (int k = 0; k < K && ok; ++k) {
                const int r = ms.space_demand[k];
                if (r == 0) continue;
                for (int t = s; t < s + d; ++t)
                    if (occ[k][t] + r > avail[k]) {
                        ok = false;
                        break;
                    }
            }
            if (!ok) continue;

            // window extensions: newly covered periods add avail[k] to the site load
            for (int k = 0; k < K && ok; ++k) {
                const int r = ms.space_demand[k];
                if (r == 0) continue;
                Window w = used[k] ? win[k] : Window{s, s + d};
                Window nw{std::min(w.sw, s), std::max(w.fw, s + d)};
                if (inst.workshops[k].max_lifetime && nw.days() > *inst.workshops[k].max_lifetime) {
                    ok = false;
                    break;
                }
                auto covers_new = [&](int t) {
                    if (!used[k]) return t >= nw.sw && t < nw.fw;
                    return (t >= nw.sw && t < win[k].sw) || (t >= win[k].fw && t < nw.fw);
                };
                for (int t = nw.sw; t < nw.fw && ok; ++t) {
                    if (!covers_new(t)) continue;
                    int load = site_load[t] + avail[k];
                    // another workshop extending over the same period in this placement
                    for (int k2 = 0; k2 < K; ++k2) {
                        if (k2 == k || ms.space_demand[k2] == 0) continue;
                        Window w2 = used[k2] ? win[k2] : Window{s, s + d};
                        Window nw2{std::min(w2.sw, s), std::max(w2.fw, s + d)};
                        bool newly2 = used[k2] ? ((t >= nw2.sw && t < w2.sw) || (t >= w2.fw && t < nw2.fw))
                                               : (t >= nw2.sw && t < nw2.fw);
                        if (newly2) load += avail[k2];
                    }
                    if (load > inst.site_capacity) ok = false;
                }
            }
            if (!ok) continue;
            chosen = s;
            break;
        }
        if (chosen < 0) return std::nullopt;

        starts[i] = chosen;
        for (int k = 0; k < K; ++k) {
            const int r = ms.space_demand[k];
            if (r == 0) continue;
            Window w = used[k] ? win[k] : Window{chosen, chosen + d};
            Window nw{std::min(w.sw, chosen), std::max(w.fw, chosen + d)};
            for (int t = nw.sw; t < nw.fw; ++t) {
                bool newly = used[k] ? ((t >= nw.sw && t < w.sw) || (t >= w.fw && t < nw.fw)) : true;
                if (newly) site_load[t] += avail[k];
            }
            win[k] = nw;
            used[k] = true;
            for (int t = chosen; t < chosen + d; ++t) occ[k][t] += r;
        }
    }

    std::vector<int> result(n);
    for (int i = 1; i <= n; ++i) result[i - 1] = starts[i];
    return result;
}

std::vector<Window> osw_windows(const Instance& inst, const std::vector<int>& start,
                                const std::vector<int>& mode) {
    const int K = inst.num_workshops();
    std::vector<Window> win(K);
    std::vector<bool> used(K, false);
    for (int i = 1; i <= inst.n_activities; ++i) {
        const ModeSpec& ms = inst.modes[i][mode[i - 1]];
        for (int k = 0; k < K; ++k) {
            if (ms.space_demand[k] == 0) continue;
            int s = start[i - 1];
            int f = s + ms.duration;
            if (!used[k]) {
                win[k] = {s, f};
                used[k] = true;
            } else {
                win[k].sw = std::min(win[k].sw, s);
                win[k].fw = std::max(win[k].fw, f);
            }
        }
    }
    return win;
}

double objective_level(const Instance& inst, const std::vector<int>& avail) {
    double total = 0;
    for (int k = 0; k < inst.num_workshops(); ++k)
        total += inst.workshops[k].unit_cost * avail[k];
    return total;
}

double objective_duration(const Instance& inst, const std::vector<Window>& windows) {
    double total = 0;
    for (int k = 0; k < inst.num_workshops(); ++k) {
        if (windows[k].empty()) continue;
        if (!inst.workshops[k].cost_per_day)
            throw std::runtime_error("workshop " + std::to_string(k + 1) + " missing cost_per_day");
        total += *inst.workshops[k].cost_per_day * windows[k].days();
    }
    return total;
}

double objective_value(const Instance& inst, const Chromosome& sol) {
    if (inst.cost_mode == CostMode::Level) return objective_level(inst, sol.avail);
    std::vector<Window> win(inst.num_workshops());
    for (int k = 0; k < inst.num_workshops(); ++k)
        win[k] = {sol.osw_install[k], sol.osw_dismantle[k]};
    return objective_duration(inst, win);
}

int makespan_of(const Instance& inst, const std::vector<int>& start, const std::vector<int>& mode) {
    int m = 0;
    for (int i = 1; i <= inst.n_activities; ++i)
        m = std::max(m, start[i - 1] + inst.modes[i][mode[i - 1]].duration);
    return m;
}

DecodedSchedule check_feasible(const Instance& inst, const Chromosome& sol) {
    const int n = inst.n_activities;
    const int K = inst.num_workshops();
    const int T = inst.horizon;

    DecodedSchedule out;
    out.occupancy.assign(K, std::vector<int>(T + 1, 0));
    out.window.resize(K);
    for (int k = 0; k < K; ++k) out.window[k] = {sol.osw_install[k], sol.osw_dismantle[k]};

    auto flag = [&](Diagnostic d) { out.violations.push_back(d); };

    if (static_cast<int>(sol.start.size()) != n || static_cast<int>(sol.mode.size()) != n ||
        static_cast<int>(sol.avail.size()) != K || static_cast<int>(sol.osw_install.size()) != K ||
        static_cast<int>(sol.osw_dismantle.size()) != K) {
        flag({ConstraintTag::Mode, -1, -1, -1, -1});
        return out;
    }
    bool structure_ok = true;
    for (int i = 1; i <= n; ++i) {
        if (sol.mode[i - 1] < 0 || sol.mode[i - 1] >= inst.num_modes(i)) {
            flag({ConstraintTag::Mode, i, -1, -1, -1});
            structure_ok = false;
        }
    }
    for (int i = 1; i <= n && structure_ok; ++i) {
        if (sol.start[i - 1] < 0 || sol.start[i - 1] > T)
            flag({ConstraintTag::Deadline, i, -1, -1, sol.start[i - 1]});
    }
    for (int k = 0; k < K; ++k) {
        if (sol.avail[k] < 0) flag({ConstraintTag::OswCapacity, -1, -1, k, -1});
        if (sol.osw_dismantle[k] < sol.osw_install[k]) flag({ConstraintTag::OswWindow, -1, -1, k, -1});
    }
    if (!out.violations.empty() && !structure_ok) return out;

    // (2) finish-to-start precedence
    for (int i = 1; i <= n; ++i)
        for (int p : inst.predecessors[i]) {
            if (p < 1 || p > n) continue;
            int fp = sol.start[p - 1] + inst.modes[p][sol.mode[p - 1]].duration;
            if (sol.start[i - 1] < fp) flag({ConstraintTag::Precedence, i, p, -1, -1});
        }

    // occupancy from starts and modes
    for (int i = 1; i <= n; ++i) {
        const ModeSpec& ms = inst.modes[i][sol.mode[i - 1]];
        for (int k = 0; k < K; ++k) {
            if (ms.space_demand[k] == 0) continue;
            for (int t = std::max(0, sol.start[i - 1]); t < sol.start[i - 1] + ms.duration && t <= T; ++t)
                out.occupancy[k][t] += ms.space_demand[k];
        }
    }

    // (3) occupancy within availability, one diagnostic per workshop
    for (int k = 0; k < K; ++k)
        for (int t = 0; t <= T; ++t)
            if (out.occupancy[k][t] > sol.avail[k]) {
                flag({ConstraintTag::OswCapacity, -1, -1, k, t});
                break;
            }

    // (4) concurrently installed availability within Q
    for (int t = 0; t <= T; ++t) {
        long load = 0;
        for (int k = 0; k < K; ++k)
            if (t >= out.window[k].sw && t < out.window[k].fw) load += sol.avail[k];
        if (load > inst.site_capacity) {
            flag({ConstraintTag::SiteCapacity, -1, -1, -1, t});
            break;
        }
    }

    // (5) each demanding activity fully covered by its workshop's window
    for (int i = 1; i <= n; ++i) {
        const ModeSpec& ms = inst.modes[i][sol.mode[i - 1]];
        if (ms.duration == 0) continue;
        for (int k = 0; k < K; ++k) {
            if (ms.space_demand[k] == 0) continue;
            if (sol.start[i - 1] < out.window[k].sw ||
                sol.start[i - 1] + ms.duration > out.window[k].fw)
                flag({ConstraintTag::OswWindow, i, -1, k, -1});
        }
    }

    // (6) deadline
    out.makespan = makespan_of(inst, sol.start, sol.mode);
    if (out.makespan > inst.deadline) flag({ConstraintTag::Deadline, -1, -1, -1, out.makespan});

    // lifetime caps on availability duration
    for (int k = 0; k < K; ++k)
        if (inst.workshops[k].max_lifetime && out.window[k].days() > *inst.workshops[k].max_lifetime)
            flag({ConstraintTag::Lifetime, -1, -1, k, -1});

    out.feasible = out.violations.empty();
    return out;
}

std::string schedule_report(const Instance& inst, const Chromosome& sol) {
    std::ostringstream out;
    out << "Activity  Mode  Duration  Start(day)  Finish(day)\n";
    for (int i = 1; i <= inst.n_activities; ++i) {
        const ModeSpec& ms = inst.modes[i][sol.mode[i - 1]];
        out << "A" << i << "  " << (sol.mode[i - 1] + 1) << "  " << ms.duration << "  "
            << (sol.start[i - 1] + 1) << "  " << (sol.start[i - 1] + ms.duration) << "\n";
    }
    out << "\nOSW  Install(day)  Dismantle(day)  Duration(days)  Availability\n";
    for (int k = 0; k < inst.num_workshops(); ++k) {
        Window w{sol.osw_install[k], sol.osw_dismantle[k]};
        if (w.empty()) {
            out << "W" << (k + 1) << "  -  -  0  " << sol.avail[k] << "\n";
        } else {
            out << "W" << (k + 1) << "  " << (w.sw + 1) << "  " << w.fw << "  " << w.days() << "  "
                << sol.avail[k] << "\n";
        }
    }
    return out.str();
}

std::string schedule_csv(const Instance& inst, const Chromosome& sol) {
    std::ostringstream out;
    out << "kind,index,mode,start_day,finish_day,duration_days,avail\n";
    for (int i = 1; i <= inst.n_activities; ++i) {
        const ModeSpec& ms = inst.modes[i][sol.mode[i - 1]];
        out << "activity," << i << "," << (sol.mode[i - 1] + 1) << "," << (sol.start[i - 1] + 1) << ","
            << (sol.start[i - 1] + ms.duration) << "," << ms.duration << ",\n";
    }
    for (int k = 0; k < inst.num_workshops(); ++k) {
        Window w{sol.osw_install[k], sol.osw_dismantle[k]};
        out << "workshop," << (k + 1) << ",,";
        if (w.empty())
            out << ",,0," << sol.avail[k] << "\n";
        else
            out << (w.sw + 1) << "," << w.fw << "," << w.days() << "," << sol.avail[k] << "\n";
    }
    return out.str();
}

} // namespace moswacp
