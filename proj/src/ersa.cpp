#include "moswacp/ersa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace moswacp {

namespace {

constexpr double kEps = 1e-6;

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool lex_better(double obj_a, int mks_a, double obj_b, int mks_b) {
    if (obj_a < obj_b - kEps) return true;
    if (obj_a > obj_b + kEps) return false;
    return mks_a < mks_b;
}

int global_max_demand(const Instance& inst, int k) {
    int mx = 0;
    for (int i = 1; i <= inst.n_activities; ++i)
        for (const auto& m : inst.modes[i]) mx = std::max(mx, m.space_demand[k]);
    return mx;
}

} // namespace

ImprovementMask ersa_variant_mask(int variant) {
    switch (variant) {
    case 0: return 0;
    case 1: return IR1 | IR2;
    case 2: return IR1 | IR3;
    case 3: return IR2 | IR3;
    default: return kAllImprovements;
    }
}

std::optional<Chromosome> random_feasible_solution(const Instance& inst, Rng& rng, int max_attempts,
                                                   long* attempts_used) {
    const int n = inst.n_activities;
    const int K = inst.num_workshops();
    const int tier_span = std::max(1, max_attempts / 3);

    std::vector<int> gmax(K);
    for (int k = 0; k < K; ++k) gmax[k] = global_max_demand(inst, k);

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        if (attempts_used) ++*attempts_used;
        std::vector<int> mode(n);
        for (int i = 1; i <= n; ++i) mode[i - 1] = static_cast<int>(rng.pick(inst.num_modes(i)));

        const int tier = attempt / tier_span;
        std::vector<int> avail(K);
        for (int k = 0; k < K; ++k) {
            const int need = min_avail_for_modes(inst, mode, k);
            if (tier == 0) {
                int lo = std::max(gmax[k] + 1, need);
                avail[k] = rng.uniform_int(lo, std::max(lo, inst.site_capacity));
            } else if (tier == 1) {
                avail[k] = rng.uniform_int(need, std::max(need, inst.site_capacity));
            } else {
                avail[k] = need;
            }
        }
        if (auto starts = decode_serial(inst, mode, avail))
            return assemble_chromosome(inst, std::move(*starts), std::move(mode), std::move(avail));
    }
    return std::nullopt;
}

std::optional<std::vector<Streamer>> init_population(const Instance& inst, const ErsaParams& params,
                                                     Rng& rng, std::string* error, long* evals) {
    std::vector<Streamer> pool;
    pool.reserve(params.population);
    for (int s = 0; s < params.population; ++s) {
        auto c = random_feasible_solution(inst, rng, 60, evals);
        if (!c) {
            if (error)
                *error = "initialization failed: no feasible solution found within the attempt cap "
                         "(instance may be unschedulable within T_max/Q)";
            return std::nullopt;
        }
        Streamer st;
        st.current = *c;
        st.best = std::move(*c);
        st.current_obj = objective_value(inst, st.current);
        st.best_obj = st.current_obj;
        st.electrons_left = params.electrons;
        st.stagnation = 0;
        pool.push_back(std::move(st));
    }
    return pool;
}

Chromosome radar_search(const Instance& inst, const Chromosome& sol, const ErsaParams& params,
                        Rng& rng, long max_candidates, long* used) {
    const int dim = sol.dim();
    const int r_m = std::clamp(static_cast<int>(std::ceil(params.radius * dim)), 1, dim);

    Chromosome best = sol;
    double best_obj = objective_value(inst, sol);
    int best_mks = makespan_of(inst, sol.start, sol.mode);
    bool improved = false;

    for (long c = 0; c < max_candidates; ++c) {
        if (used) ++*used;
        Chromosome cand;
        if (rng.uniform01() < params.beta) {
            // exploration: recombine with a fresh random solution
            auto fresh = random_feasible_solution(inst, rng, 12);
            if (fresh) {
                int cp = dim > 1 ? rng.uniform_int(1, dim - 1) : 1;
                cand = crossover(inst, sol, *fresh, cp).first;
            } else {
                cand = mutate(inst, sol, r_m, rng);
            }
        } else {
            cand = mutate(inst, sol, r_m, rng);
        }
        cand = apply_improvements(inst, cand, params.improvement_mask);
        double obj = objective_value(inst, cand);
        int mks = makespan_of(inst, cand.start, cand.mode);
        if (lex_better(obj, mks, best_obj, best_mks)) {
            best = std::move(cand);
            best_obj = obj;
            best_mks = mks;
            improved = true;
        }
    }
    return improved ? best : sol;
}

StreamerEvent step_streamer(const Instance& inst, Streamer& s, const ErsaParams& params, Rng& rng,
                            std::vector<Streamer>& pool, long* evals) {
    if (s.stagnation >= params.critical_value || s.electrons_left <= 0) return StreamerEvent::Eliminated;

    long m = std::min<long>(params.radar_points, s.electrons_left);
    if (params.budget.max_evals > 0 && evals)
        m = std::min(m, std::max<long>(0, params.budget.max_evals - *evals));
    if (m <= 0) return StreamerEvent::Eliminated;

    long used = 0;
    Chromosome cand = radar_search(inst, s.current, params, rng, m, &used);
    if (evals) *evals += used;
    s.electrons_left -= used;

    double cand_obj = objective_value(inst, cand);
    int cand_mks = makespan_of(inst, cand.start, cand.mode);
    if (lex_better(cand_obj, cand_mks, s.current_obj,
                   makespan_of(inst, s.current.start, s.current.mode))) {
        s.current = cand;
        s.current_obj = cand_obj;
    }

    const bool improved_best = cand_obj < s.best_obj - kEps;
    if (!improved_best) {
        ++s.stagnation;
        return StreamerEvent::Moved;
    }
    s.best = cand;
    s.best_obj = cand_obj;
    s.stagnation = 0;

    if (static_cast<int>(pool.size()) >= params.population) return StreamerEvent::Moved;
    auto fresh = random_feasible_solution(inst, rng, 60, evals);
    if (!fresh) return StreamerEvent::Moved;
    Streamer child;
    child.current = *fresh;
    child.best = std::move(*fresh);
    child.current_obj = objective_value(inst, child.current);
    child.best_obj = child.current_obj;
    child.electrons_left = params.electrons;
    child.stagnation = 0;
    pool.push_back(std::move(child)); // invalidates s; nothing touched afterwards
    return StreamerEvent::Forked;
}

SolveResult run_ersa(const Instance& inst, const ErsaParams& params) {
    SolveResult res;
    res.algo = "ersa";
    res.seed = params.seed;
    res.deterministic_trace = params.budget.deterministic();

    const auto t0 = Clock::now();
    Rng rng(params.seed);
    long evals = 0;

    std::string err;
    auto pool_opt = init_population(inst, params, rng, &err, &evals);
    if (!pool_opt) {
        res.error = err;
        res.evaluations = evals;
        res.wall_time_s = elapsed_s(t0);
        return res;
    }
    auto pool = std::move(*pool_opt);

    Chromosome gbest;
    double gbest_obj = std::numeric_limits<double>::infinity();
    for (const auto& s : pool)
        if (s.best_obj < gbest_obj) {
            gbest_obj = s.best_obj;
            gbest = s.best;
        }

    long iter = 0;
    res.trace.push_back({iter, elapsed_s(t0), gbest_obj});

    auto exhausted = [&] {
        if (params.budget.max_evals > 0 && evals >= params.budget.max_evals) return true;
        if (params.budget.max_seconds > 0 && elapsed_s(t0) >= params.budget.max_seconds) return true;
        return false;
    };

    while (!pool.empty() && !exhausted()) {
        const std::size_t sweep_count = pool.size();
        std::size_t processed = 0, i = 0;
        while (processed < sweep_count && !exhausted()) {
            StreamerEvent ev = step_streamer(inst, pool[i], params, rng, pool, &evals);
            ++processed;
            ++iter;
            if (ev == StreamerEvent::Eliminated) {
                pool.erase(pool.begin() + static_cast<long>(i));
            } else {
                if (pool[i].best_obj < gbest_obj - kEps) {
                    gbest_obj = pool[i].best_obj;
                    gbest = pool[i].best;
                    res.trace.push_back({iter, elapsed_s(t0), gbest_obj});
                }
                ++i;
            }
        }
    }

    res.ok = true;
    res.best = gbest;
    res.objective = gbest_obj;
    res.makespan = makespan_of(inst, gbest.start, gbest.mode);
    res.evaluations = evals;
    res.wall_time_s = elapsed_s(t0);
    res.trace.push_back({iter, res.wall_time_s, gbest_obj});
    return res;
}

} // namespace moswacp
