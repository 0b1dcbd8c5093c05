#include "moswacp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace moswacp {

namespace {
constexpr double kEps = 1e-6;

int hamming(const Chromosome& a, const Chromosome& b) {
    int d = 0;
    for (int g = 0; g < a.dim(); ++g)
        if (a.gene(g) != b.gene(g)) ++d;
    return d;
}

int makespan_of_sol(const Instance& inst, const Chromosome& sol) {
    return makespan_of(inst, sol.start, sol.mode);
}

// lexicographic (objective, makespan) strict improvement
bool lex_better(double obj_a, int mks_a, double obj_b, int mks_b) {
    if (obj_a < obj_b - kEps) return true;
    if (obj_a > obj_b + kEps) return false;
    return mks_a < mks_b;
}

} // namespace

void OpLog::event(const char* op, const char* what) {
    if (out) *out << "{\"op\":\"" << op << "\",\"event\":\"" << what << "\"}\n";
}

int min_avail_for_modes(const Instance& inst, const std::vector<int>& mode, int k) {
    int need = 0;
    for (int i = 1; i <= inst.n_activities; ++i)
        need = std::max(need, inst.modes[i][mode[i - 1]].space_demand[k]);
    return need;
}

Chromosome assemble_chromosome(const Instance& inst, std::vector<int> starts, std::vector<int> mode,
                               std::vector<int> avail) {
    Chromosome c;
    auto windows = osw_windows(inst, starts, mode);
    c.start = std::move(starts);
    c.mode = std::move(mode);
    c.avail = std::move(avail);
    c.osw_install.resize(windows.size());
    c.osw_dismantle.resize(windows.size());
    for (std::size_t k = 0; k < windows.size(); ++k) {
        c.osw_install[k] = windows[k].sw;
        c.osw_dismantle[k] = windows[k].fw;
    }
    return c;
}

std::pair<Chromosome, Chromosome> crossover_raw(const Chromosome& p1, const Chromosome& p2, int cp) {
    Chromosome a = p1, b = p2;
    for (int g = cp; g < p1.dim(); ++g) {
        a.set_gene(g, p2.gene(g));
        b.set_gene(g, p1.gene(g));
    }
    return {a, b};
}

std::optional<Chromosome> repair(const Instance& inst, const Chromosome& sol) {
    if (check_feasible(inst, sol).feasible) return sol;

    const int K = inst.num_workshops();
    for (int i = 1; i <= inst.n_activities; ++i)
        if (sol.mode[i - 1] < 0 || sol.mode[i - 1] >= inst.num_modes(i)) return std::nullopt;

    std::vector<int> avail = sol.avail;
    for (int k = 0; k < K; ++k) {
        int need = min_avail_for_modes(inst, sol.mode, k);
        if (avail[k] < need) avail[k] = need;
        if (need > 0 && need <= inst.site_capacity && avail[k] > inst.site_capacity)
            avail[k] = inst.site_capacity;
    }
    auto starts = decode_serial(inst, sol.mode, avail);
    if (!starts) return std::nullopt;
    return assemble_chromosome(inst, std::move(*starts), sol.mode, std::move(avail));
}

std::pair<Chromosome, Chromosome> crossover(const Instance& inst, const Chromosome& p1,
                                            const Chromosome& p2, int cp, OpLog* log) {
    auto [raw_a, raw_b] = crossover_raw(p1, p2, cp);
    auto finish = [&](const Chromosome& off, const Chromosome& tie_parent) {
        if (auto rep = repair(inst, off)) return *rep;
        if (log) log->event("crossover", "repair failed, offspring replaced by nearer parent");
        int d1 = hamming(off, p1), d2 = hamming(off, p2);
        if (d1 < d2) return p1;
        if (d2 < d1) return p2;
        return tie_parent;
    };
    return {finish(raw_a, p1), finish(raw_b, p2)};
}

void resample_gene(const Instance& inst, Chromosome& c, int pos, Rng& rng) {
    const int n = static_cast<int>(c.start.size());
    const int K = static_cast<int>(c.avail.size());
    if (pos < n) {
        c.start[pos] = rng.uniform_int(0, inst.horizon);
    } else if (pos < n + K) {
        c.osw_install[pos - n] = rng.uniform_int(0, inst.horizon);
    } else if (pos < n + 2 * K) {
        c.osw_dismantle[pos - n - K] = rng.uniform_int(0, inst.horizon);
    } else if (pos < 2 * n + 2 * K) {
        const int i = pos - (n + 2 * K) + 1;
        const int cnt = inst.num_modes(i);
        if (cnt > 1) {
            int alt = static_cast<int>(rng.pick(cnt - 1));
            if (alt >= c.mode[i - 1]) ++alt;
            c.mode[i - 1] = alt;
        }
    } else {
        const int k = pos - (2 * n + 2 * K);
        const int need = min_avail_for_modes(inst, c.mode, k);
        c.avail[k] = rng.uniform_int(need, std::max(need, inst.site_capacity));
    }
}

Chromosome mutate(const Instance& inst, const Chromosome& sol, int r_m, Rng& rng, OpLog* log) {
    const int dim = sol.dim();
    if (r_m <= 0 || dim == 0) return sol;
    r_m = std::min(r_m, dim);

    std::vector<int> idx(dim);
    std::iota(idx.begin(), idx.end(), 0);
    for (int j = 0; j < r_m; ++j)
        std::swap(idx[j], idx[j + static_cast<int>(rng.pick(dim - j))]);
    std::vector<int> picked(idx.begin(), idx.begin() + r_m);
    std::sort(picked.begin(), picked.end());

    Chromosome m = sol;
    for (int pos : picked) resample_gene(inst, m, pos, rng);
    if (auto rep = repair(inst, m)) return *rep;
    if (log) log->event("mutate", "repair failed, returning input");
    return sol;
}

Chromosome ir1_switch_mode(const Instance& inst, const Chromosome& sol) {
    Chromosome cur = sol;
    double obj = objective_value(inst, cur);
    int mks = makespan_of_sol(inst, cur);

    for (int i = 1; i <= inst.n_activities; ++i) {
        const int cnt = inst.num_modes(i);
        if (cnt < 2) continue;
        for (int mj = 0; mj < cnt; ++mj) {
            if (mj == cur.mode[i - 1]) continue;
            Chromosome cand = cur;
            cand.mode[i - 1] = mj;
            auto rep = repair(inst, cand);
            if (!rep) continue;
            double o2 = objective_value(inst, *rep);
            int m2 = makespan_of_sol(inst, *rep);
            if (lex_better(o2, m2, obj, mks)) {
                cur = std::move(*rep);
                obj = o2;
                mks = m2;
                break; // first improvement for this activity
            }
        }
    }
    return cur;
}

Chromosome ir2_reschedule_float(const Instance& inst, const Chromosome& sol) {
    const int n = inst.n_activities;
    if (n == 0) return sol;
    const double obj0 = objective_value(inst, sol);
    const int mks0 = makespan_of_sol(inst, sol);

    std::vector<int> starts = sol.start;
    const std::vector<int>& mode = sol.mode;
    const std::vector<int>& avail = sol.avail;
    auto succ = inst.successors();

    auto feasible_at = [&](const std::vector<int>& s) {
        Chromosome c = assemble_chromosome(inst, s, mode, avail);
        return check_feasible(inst, c).feasible;
    };

    // right pass: latest feasible start, scanning activities by decreasing finish
    std::vector<int> order_r(n);
    std::iota(order_r.begin(), order_r.end(), 1);
    std::sort(order_r.begin(), order_r.end(), [&](int a, int b) {
        int fa = starts[a - 1] + inst.modes[a][mode[a - 1]].duration;
        int fb = starts[b - 1] + inst.modes[b][mode[b - 1]].duration;
        if (fa != fb) return fa > fb;
        return a > b;
    });
    for (int i : order_r) {
        const int d = inst.modes[i][mode[i - 1]].duration;
        int upper = mks0 - d;
        for (int s2 : succ[i])
            if (s2 >= 1 && s2 <= n) upper = std::min(upper, starts[s2 - 1] - d);
        for (int s = upper; s > starts[i - 1]; --s) {
            std::vector<int> trial = starts;
            trial[i - 1] = s;
            if (feasible_at(trial)) {
                starts = std::move(trial);
                break;
            }
        }
    }
    Chromosome right_cand = assemble_chromosome(inst, starts, mode, avail);

    // left pass: rebuild earliest-first in right-start order
    std::vector<int> rank(n + 2, 0);
    {
        auto topo = inst.topological_order();
        for (std::size_t r = 0; r < topo.size(); ++r) rank[topo[r]] = static_cast<int>(r);
    }
    std::vector<int> order_l(n);
    std::iota(order_l.begin(), order_l.end(), 1);
    std::sort(order_l.begin(), order_l.end(), [&](int a, int b) {
        if (starts[a - 1] != starts[b - 1]) return starts[a - 1] < starts[b - 1];
        return rank[a] < rank[b];
    });

    Chromosome best = sol;
    double best_obj = obj0;
    int best_mks = mks0;
    auto consider = [&](const Chromosome& cand) {
        double o = objective_value(inst, cand);
        int m = makespan_of_sol(inst, cand);
        if (o <= obj0 + kEps && m <= mks0 && lex_better(o, m, best_obj, best_mks)) {
            best = cand;
            best_obj = o;
            best_mks = m;
        }
    };
    if (check_feasible(inst, right_cand).feasible) consider(right_cand);
    if (auto rebuilt = decode_with_order(inst, mode, avail, order_l)) {
        Chromosome left_cand = assemble_chromosome(inst, std::move(*rebuilt), mode, avail);
        consider(left_cand);
    }
    return best;
}

Chromosome ir3_regularize_avail(const Instance& inst, const Chromosome& sol) {
    const int K = inst.num_workshops();
    const int T = inst.horizon;
    std::vector<int> peak(K, 0);
    std::vector<std::vector<int>> occ(K, std::vector<int>(T + 1, 0));
    for (int i = 1; i <= inst.n_activities; ++i) {
        const ModeSpec& ms = inst.modes[i][sol.mode[i - 1]];
        for (int k = 0; k < K; ++k) {
            if (ms.space_demand[k] == 0) continue;
            for (int t = std::max(0, sol.start[i - 1]); t < sol.start[i - 1] + ms.duration && t <= T; ++t) {
                occ[k][t] += ms.space_demand[k];
                peak[k] = std::max(peak[k], occ[k][t]);
            }
        }
    }
    Chromosome out = sol;
    out.avail = std::move(peak);
    return out;
}

Chromosome apply_improvements(const Instance& inst, const Chromosome& sol, ImprovementMask mask) {
    Chromosome cur = sol;
    if (mask & IR1) cur = ir1_switch_mode(inst, cur);
    if (mask & IR2) cur = ir2_reschedule_float(inst, cur);
    if (mask & IR3) cur = ir3_regularize_avail(inst, cur);
    return cur;
}

} // namespace moswacp
