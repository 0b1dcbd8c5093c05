#include "moswacp/exact.hpp"
#include "moswacp/operators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace moswacp {

bool within_limits(const Instance& inst, const ExactLimits& limits) {
    if (inst.n_activities > limits.max_activities) return false;
    if (inst.horizon > limits.max_horizon) return false;
    long modes_total = 0;
    for (int i = 1; i <= inst.n_activities; ++i) modes_total += inst.num_modes(i);
    return modes_total <= limits.max_modes_total;
}

namespace {

constexpr double kEps = 1e-9;

struct Search {
    const Instance& inst;
    const ExactLimits& limits;
    int n, K, T, latest;
    std::vector<int> order;
    std::vector<int> starts;          // indexed by activity id
    std::vector<int> mode_of;         // indexed by activity id
    std::vector<std::vector<int>> occ;
    std::vector<int> peak;
    std::vector<Window> win;
    std::vector<bool> used;
    std::vector<int> tail_after;             // min-duration path length below each activity
    std::vector<std::vector<int>> suffix_min; // [pos][k] -> max over remaining of min-mode demand
    long nodes = 0;
    bool aborted = false;
    double best_obj = std::numeric_limits<double>::infinity();
    bool have_best = false;
    Chromosome best;

    explicit Search(const Instance& inst_, const ExactLimits& limits_)
        : inst(inst_), limits(limits_), n(inst_.n_activities), K(inst_.num_workshops()),
          T(inst_.horizon), latest(std::min(inst_.deadline, inst_.horizon)),
          order(inst_.topological_order()), starts(n + 2, 0), mode_of(n + 2, 0),
          occ(K, std::vector<int>(T + 1, 0)), peak(K, 0), win(K), used(K, false) {
        tail_after.assign(n + 2, 0);
        std::vector<int> mind(n + 2, 0);
        for (int i = 1; i <= n; ++i) {
            mind[i] = inst.modes[i][0].duration;
            for (const auto& m : inst.modes[i]) mind[i] = std::min(mind[i], m.duration);
        }
        auto succ = inst.successors();
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int i = *it;
            int t = 0;
            for (int s : succ[i])
                if (s >= 1 && s <= n) t = std::max(t, mind[s] + tail_after[s]);
            tail_after[i] = t;
        }
        suffix_min.assign(n + 1, std::vector<int>(K, 0));
        for (int p = n - 1; p >= 0; --p) {
            suffix_min[p] = suffix_min[p + 1];
            int i = order[p];
            for (int k = 0; k < K; ++k) {
                int mn = inst.modes[i][0].space_demand[k];
                for (const auto& m : inst.modes[i]) mn = std::min(mn, m.space_demand[k]);
                suffix_min[p][k] = std::max(suffix_min[p][k], mn);
            }
        }
    }

    double partial_cost(int next_pos) const {
        double c = 0;
        if (inst.cost_mode == CostMode::Level) {
            for (int k = 0; k < K; ++k)
                c += inst.workshops[k].unit_cost * std::max(peak[k], suffix_min[next_pos][k]);
        } else {
            for (int k = 0; k < K; ++k)
                if (used[k] && inst.workshops[k].cost_per_day)
                    c += *inst.workshops[k].cost_per_day * win[k].days();
        }
        return c;
    }

    bool site_ok() const {
        for (int t = 0; t <= T; ++t) {
            long load = 0;
            for (int k = 0; k < K; ++k)
                if (used[k] && t >= win[k].sw && t < win[k].fw) load += peak[k];
            if (load > inst.site_capacity) return false;
        }
        return true;
    }

    void dfs(int pos) {
        if (aborted) return;
        if (++nodes > limits.node_budget) {
            aborted = true;
            return;
        }
        if (pos == n) {
            double obj = partial_cost(pos);
            if (obj < best_obj - kEps) {
                best_obj = obj;
                std::vector<int> s(n), m(n);
                for (int i = 1; i <= n; ++i) {
                    s[i - 1] = starts[i];
                    m[i - 1] = mode_of[i];
                }
                best = assemble_chromosome(inst, std::move(s), std::move(m), peak);
                have_best = true;
            }
            return;
        }
        const int i = order[pos];
        for (int mi = 0; mi < inst.num_modes(i) && !aborted; ++mi) {
            const ModeSpec& ms = inst.modes[i][mi];
            const int d = ms.duration;
            int est = 0;
            for (int p : inst.predecessors[i]) {
                int dp = (p >= 1 && p <= n) ? inst.modes[p][mode_of[p]].duration : 0;
                est = std::max(est, starts[p] + dp);
            }
            const int lst = latest - d - tail_after[i];
            for (int s = est; s <= lst && !aborted; ++s) {
                // place
                auto saved_peak = peak;
                auto saved_win = win;
                auto saved_used = used;
                for (int k = 0; k < K; ++k) {
                    const int r = ms.space_demand[k];
                    if (r == 0) continue;
                    for (int t = s; t < s + d; ++t) {
                        occ[k][t] += r;
                        peak[k] = std::max(peak[k], occ[k][t]);
                    }
                    if (!used[k]) {
                        win[k] = {s, s + d};
                        used[k] = true;
                    } else {
                        win[k].sw = std::min(win[k].sw, s);
                        win[k].fw = std::max(win[k].fw, s + d);
                    }
                }
                bool ok = true;
                for (int k = 0; k < K && ok; ++k)
                    if (used[k] && inst.workshops[k].max_lifetime &&
                        win[k].days() > *inst.workshops[k].max_lifetime)
                        ok = false;
                if (ok) ok = site_ok();
                if (ok && partial_cost(pos + 1) >= best_obj - kEps) ok = false;
                if (ok) {
                    starts[i] = s;
                    mode_of[i] = mi;
                    dfs(pos + 1);
                }
                // undo
                for (int k = 0; k < K; ++k) {
                    const int r = ms.space_demand[k];
                    if (r == 0) continue;
                    for (int t = s; t < s + d; ++t) occ[k][t] -= r;
                }
                peak = std::move(saved_peak);
                win = std::move(saved_win);
                used = std::move(saved_used);
            }
        }
    }
};

} // namespace

ExactResult enumerate_optimal(const Instance& inst, const ExactLimits& limits) {
    ExactResult res;
    if (!within_limits(inst, limits)) return res;
    if (static_cast<int>(inst.topological_order().size()) != inst.n_activities) return res;

    Search search(inst, limits);

    // warm start: first-mode earliest schedule, availability regularized
    {
        std::vector<int> mode(inst.n_activities, 0), avail(inst.num_workshops(), 0);
        for (int k = 0; k < inst.num_workshops(); ++k) avail[k] = min_avail_for_modes(inst, mode, k);
        if (auto starts = decode_serial(inst, mode, avail)) {
            Chromosome c = assemble_chromosome(inst, *starts, mode, avail);
            c = ir3_regularize_avail(inst, c);
            if (check_feasible(inst, c).feasible) {
                search.best = c;
                search.best_obj = objective_value(inst, c);
                search.have_best = true;
            }
        }
    }

    search.dfs(0);

    res.nodes = search.nodes;
    res.proven = !search.aborted;
    res.found = search.have_best;
    if (search.have_best) {
        res.best = search.best;
        res.objective = search.best_obj;
    }
    return res;
}

namespace {

std::string num(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(v));
        (void)ec;
        return std::string(buf, p);
    }
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

/// One linear row; terms print as "+ c v" / "- c v".
struct Row {
    std::string name;
    std::vector<std::pair<double, std::string>> terms;
    const char* op;
    double rhs;
};

void emit_row(std::ostringstream& out, const Row& row) {
    out << " " << row.name << ":";
    for (const auto& [c, v] : row.terms) {
        if (c >= 0)
            out << " + " << num(c) << " " << v;
        else
            out << " - " << num(-c) << " " << v;
    }
    out << " " << row.op << " " << num(row.rhs) << "\n";
}

std::string vx(int i, int t) { return "x_" + std::to_string(i) + "_" + std::to_string(t); }
std::string vz(int i, int j) { return "z_" + std::to_string(i) + "_" + std::to_string(j); }
std::string vy(int k, int t) { return "y_" + std::to_string(k) + "_" + std::to_string(t); }
std::string vyp(int i, int j, int k, int t) {
    return "yp_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k) + "_" +
           std::to_string(t);
}
std::string vw(int k, int t) { return "w_" + std::to_string(k) + "_" + std::to_string(t); }
std::string vR(int k) { return "R_" + std::to_string(k); }
std::string vRp(int k, int t) { return "Rp_" + std::to_string(k) + "_" + std::to_string(t); }

} // namespace

std::string export_lp(const Instance& inst, const MilpExportConfig& cfg, MilpStats* stats) {
    if (!(cfg.alpha >= 0.5 && cfg.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0.5, 1)");
    const double big_m = cfg.big_m > 0 ? cfg.big_m : static_cast<double>(inst.site_capacity);
    const int n = inst.n_activities;
    const int K = inst.num_workshops();
    const int T = inst.horizon;
    const bool literal = cfg.semantics == MilpSemantics::PaperLiteral;

    MilpStats st;
    std::vector<Row> rows;
    std::vector<std::string> binaries;

    auto add = [&](Row r) { rows.push_back(std::move(r)); };

    // objective
    Row obj{"obj", {}, "", 0};
    for (int k = 0; k < K; ++k) obj.terms.push_back({inst.workshops[k].unit_cost, vR(k)});

    // every activity (dummies included) starts exactly once; source pinned at 0
    for (int i = 0; i <= n + 1; ++i) {
        Row r{"onestart_" + std::to_string(i), {}, "=", 1};
        for (int t = 0; t <= T; ++t) r.terms.push_back({1, vx(i, t)});
        add(std::move(r));
    }
    add(Row{"srcstart", {{1, vx(0, 0)}}, "=", 1});

    // precedence: sum t x_i - sum t x_j - sum d z_j >= 0
    for (int i = 1; i <= n + 1; ++i) {
        for (int j : inst.predecessors[i]) {
            Row r{"prec_" + std::to_string(i) + "_" + std::to_string(j), {}, ">=", 0};
            for (int t = 1; t <= T; ++t) r.terms.push_back({t, vx(i, t)});
            for (int t = 1; t <= T; ++t) r.terms.push_back({-t, vx(j, t)});
            if (j >= 1 && j <= n)
                for (int u = 0; u < inst.num_modes(j); ++u)
                    r.terms.push_back({-static_cast<double>(inst.duration(j, u)), vz(j, u)});
            add(std::move(r));
        }
    }

    // single mode per activity
    for (int i = 1; i <= n; ++i) {
        Row r{"mode_" + std::to_string(i), {}, "=", 1};
        for (int j = 0; j < inst.num_modes(i); ++j) r.terms.push_back({1, vz(i, j)});
        add(std::move(r));
    }

    // deadline on the terminal dummy
    {
        Row r{"deadline", {}, "<=", static_cast<double>(inst.deadline)};
        for (int t = 1; t <= T; ++t) r.terms.push_back({t, vx(n + 1, t)});
        add(std::move(r));
    }

    if (literal) {
        // installation: t x_it + sum_j d_ij z_ij - sum_l y_kl <= 1
        for (int i = 1; i <= n; ++i)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t <= T; ++t) {
                    Row r{"install_" + std::to_string(i) + "_" + std::to_string(k) + "_" + std::to_string(t),
                          {},
                          "<=",
                          1};
                    if (t > 0) r.terms.push_back({static_cast<double>(t), vx(i, t)});
                    for (int j = 0; j < inst.num_modes(i); ++j)
                        r.terms.push_back({static_cast<double>(inst.duration(i, j)), vz(i, j)});
                    for (int l = 0; l <= T; ++l) r.terms.push_back({-1, vy(k, l)});
                    add(std::move(r));
                }
        // linking yp = z AND y
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j < inst.num_modes(i); ++j)
                for (int k = 0; k < K; ++k)
                    for (int t = 0; t <= T; ++t) {
                        std::string tag = std::to_string(i) + "_" + std::to_string(j) + "_" +
                                          std::to_string(k) + "_" + std::to_string(t);
                        add(Row{"link_lo_" + tag,
                                {{1, vyp(i, j, k, t)}, {-1, vz(i, j)}, {-1, vy(k, t)}},
                                ">=",
                                -1});
                        add(Row{"link_hi_" + tag,
                                {{1, vyp(i, j, k, t)}, {-cfg.alpha, vz(i, j)}, {-cfg.alpha, vy(k, t)}},
                                "<=",
                                0});
                    }
        // occupancy within availability
        for (int k = 0; k < K; ++k)
            for (int t = 0; t <= T; ++t) {
                Row r{"peak_" + std::to_string(k) + "_" + std::to_string(t), {}, "<=", 0};
                for (int i = 1; i <= n; ++i)
                    for (int j = 0; j < inst.num_modes(i); ++j)
                        if (inst.demand(i, j, k) > 0)
                            r.terms.push_back({static_cast<double>(inst.demand(i, j, k)), vyp(i, j, k, t)});
                r.terms.push_back({-1, vR(k)});
                add(std::move(r));
            }
    } else {
        // occupancy and coverage linked to the start-period variables
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j < inst.num_modes(i); ++j) {
                const int d = inst.duration(i, j);
                if (d == 0) continue;
                for (int k = 0; k < K; ++k) {
                    if (inst.demand(i, j, k) == 0) continue;
                    for (int t = 0; t <= T; ++t) {
                        std::string tag = std::to_string(i) + "_" + std::to_string(j) + "_" +
                                          std::to_string(k) + "_" + std::to_string(t);
                        Row r{"occupy_" + tag, {{1, vyp(i, j, k, t)}, {-1, vz(i, j)}}, ">=", -1};
                        for (int s = std::max(0, t - d + 1); s <= t && s <= T; ++s)
                            r.terms.push_back({-1, vx(i, s)});
                        add(std::move(r));
                        Row c{"cover_" + tag, {{1, vy(k, t)}, {-1, vz(i, j)}}, ">=", -1};
                        for (int s = std::max(0, t - d + 1); s <= t && s <= T; ++s)
                            c.terms.push_back({-1, vx(i, s)});
                        add(std::move(c));
                    }
                }
            }
        // peak availability
        for (int k = 0; k < K; ++k)
            for (int t = 0; t <= T; ++t) {
                Row r{"peak_" + std::to_string(k) + "_" + std::to_string(t), {}, "<=", 0};
                for (int i = 1; i <= n; ++i)
                    for (int j = 0; j < inst.num_modes(i); ++j)
                        if (inst.demand(i, j, k) > 0 && inst.duration(i, j) > 0)
                            r.terms.push_back({static_cast<double>(inst.demand(i, j, k)), vyp(i, j, k, t)});
                r.terms.push_back({-1, vR(k)});
                add(std::move(r));
            }
        // each workshop's installed periods form one interval
        for (int k = 0; k < K; ++k) {
            add(Row{"switch_" + std::to_string(k) + "_0", {{1, vy(k, 0)}, {-1, vw(k, 0)}}, "<=", 0});
            for (int t = 1; t <= T; ++t)
                add(Row{"switch_" + std::to_string(k) + "_" + std::to_string(t),
                        {{1, vy(k, t)}, {-1, vy(k, t - 1)}, {-1, vw(k, t)}},
                        "<=",
                        0});
            Row once{"once_" + std::to_string(k), {}, "<=", 1};
            for (int t = 0; t <= T; ++t) once.terms.push_back({1, vw(k, t)});
            add(std::move(once));
        }
        // lifetime caps (installed-period count = availability days + 1)
        for (int k = 0; k < K; ++k)
            if (inst.workshops[k].max_lifetime) {
                Row r{"life_" + std::to_string(k), {}, "<=",
                      static_cast<double>(*inst.workshops[k].max_lifetime + 1)};
                for (int t = 0; t <= T; ++t) r.terms.push_back({1, vy(k, t)});
                add(std::move(r));
            }
    }

    // site capacity via the linearized availability-if-installed variables
    for (int t = 0; t <= T; ++t) {
        Row r{"site_" + std::to_string(t), {}, "<=", static_cast<double>(inst.site_capacity)};
        for (int k = 0; k < K; ++k) r.terms.push_back({1, vRp(k, t)});
        add(std::move(r));
    }
    for (int k = 0; k < K; ++k)
        for (int t = 0; t <= T; ++t) {
            std::string tag = std::to_string(k) + "_" + std::to_string(t);
            add(Row{"rpcap_" + tag, {{1, vRp(k, t)}, {-1, vR(k)}}, "<=", 0});
            add(Row{"rpon_" + tag, {{1, vRp(k, t)}, {-big_m, vy(k, t)}}, "<=", 0});
            add(Row{"rpforce_" + tag, {{1, vRp(k, t)}, {-1, vR(k)}, {-big_m, vy(k, t)}}, ">=", -big_m});
        }

    // variable inventory
    for (int i = 0; i <= n + 1; ++i)
        for (int t = 0; t <= T; ++t) binaries.push_back(vx(i, t));
    st.n_x = static_cast<long>(binaries.size());
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j < inst.num_modes(i); ++j) {
            binaries.push_back(vz(i, j));
            ++st.n_z;
        }
    for (int k = 0; k < K; ++k)
        for (int t = 0; t <= T; ++t) {
            binaries.push_back(vy(k, t));
            ++st.n_y;
        }
    if (literal) {
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j < inst.num_modes(i); ++j)
                for (int k = 0; k < K; ++k)
                    for (int t = 0; t <= T; ++t) {
                        binaries.push_back(vyp(i, j, k, t));
                        ++st.n_yp;
                    }
    } else {
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j < inst.num_modes(i); ++j) {
                if (inst.duration(i, j) == 0) continue;
                for (int k = 0; k < K; ++k) {
                    if (inst.demand(i, j, k) == 0) continue;
                    for (int t = 0; t <= T; ++t) {
                        binaries.push_back(vyp(i, j, k, t));
                        ++st.n_yp;
                    }
                }
            }
        for (int k = 0; k < K; ++k)
            for (int t = 0; t <= T; ++t) {
                binaries.push_back(vw(k, t));
                ++st.n_w;
            }
    }
    st.n_r = K;
    st.n_rp = static_cast<long>(K) * (T + 1);
    st.n_rows = static_cast<long>(rows.size());

    std::ostringstream out;
    out << "\\ MOSWACP MILP export v1\n";
    out << "\\ semantics=" << (literal ? "literal" : "time-indexed") << " alpha=" << num(cfg.alpha)
        << " bigM=" << num(big_m) << "\n";
    out << "\\ vars: x=" << st.n_x << " z=" << st.n_z << " y=" << st.n_y << " yp=" << st.n_yp
        << " w=" << st.n_w << " R=" << st.n_r << " Rp=" << st.n_rp << " rows=" << st.n_rows << "\n";
    out << "Minimize\n";
    out << " " << obj.name << ":";
    for (const auto& [c, v] : obj.terms) {
        if (c >= 0)
            out << " + " << num(c) << " " << v;
        else
            out << " - " << num(-c) << " " << v;
    }
    out << "\n";
    out << "Subject To\n";
    for (const auto& r : rows) emit_row(out, r);
    out << "Bounds\n";
    for (int k = 0; k < K; ++k) out << " 0 <= " << vR(k) << " <= " << num(big_m) << "\n";
    out << "Binaries\n";
    for (std::size_t i = 0; i < binaries.size(); ++i)
        out << " " << binaries[i] << (i % 8 == 7 ? "\n" : "");
    if (binaries.size() % 8 != 0) out << "\n";
    out << "End\n";

    if (stats) *stats = st;
    return out.str();
}

} // namespace moswacp
