#include "moswacp/instance.hpp"
#include "moswacp/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace moswacp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& tok, int line) {
    const std::string t = trim(tok);
    int v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size())
        throw ParseError(line, "expected integer, got '" + t + "'");
    return v;
}

double parse_double(const std::string& tok, int line) {
    const std::string t = trim(tok);
    try {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected number, got '" + t + "'");
    }
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

// "key = value" pieces of an ACT/OSW line, split on ';'.
std::pair<std::string, std::string> key_value(const std::string& piece, int line) {
    auto eq = piece.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value' in '" + trim(piece) + "'");
    return {trim(piece.substr(0, eq)), trim(piece.substr(eq + 1))};
}

} // namespace

std::vector<std::vector<int>> Instance::successors() const {
    std::vector<std::vector<int>> succ(total_activities());
    for (int i = 0; i < total_activities(); ++i)
        for (int p : predecessors[i])
            succ[p].push_back(i);
    for (auto& s : succ) std::sort(s.begin(), s.end());
    return succ;
}

std::vector<int> Instance::topological_order() const {
    const int n = n_activities;
    std::vector<int> indeg(n + 2, 0);
    std::vector<std::vector<int>> succ(n + 2);
    for (int i = 1; i <= n; ++i) {
        for (int p : predecessors[i]) {
            if (p >= 1 && p <= n) {
                ++indeg[i];
                succ[p].push_back(i);
            }
        }
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int i = 1; i <= n; ++i)
        if (indeg[i] == 0) ready.push(i);
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int i = ready.top();
        ready.pop();
        order.push_back(i);
        for (int s : succ[i])
            if (--indeg[s] == 0) ready.push(s);
    }
    if (static_cast<int>(order.size()) != n) return {};
    return order;
}

void Instance::normalize_predecessors() {
    const int n = n_activities;
    for (int i = 1; i <= n; ++i) {
        auto& p = predecessors[i];
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        if (p.size() > 1) p.erase(std::remove(p.begin(), p.end(), 0), p.end());
        if (p.empty()) p.push_back(0);
    }
    predecessors[0].clear();
    // sink depends on every activity without a non-dummy successor
    std::vector<bool> has_succ(n + 2, false);
    for (int i = 1; i <= n; ++i)
        for (int p : predecessors[i])
            if (p >= 1) has_succ[p] = true;
    auto& sink_preds = predecessors[sink()];
    sink_preds.clear();
    for (int i = 1; i <= n; ++i)
        if (!has_succ[i]) sink_preds.push_back(i);
    if (sink_preds.empty()) sink_preds.push_back(0);
}

int Instance::critical_path_min_duration() const {
    auto order = topological_order();
    if (static_cast<int>(order.size()) != n_activities) return 0;
    std::vector<int> mind(total_activities(), 0);
    for (int i = 1; i <= n_activities; ++i) {
        int d = modes[i].empty() ? 0 : modes[i][0].duration;
        for (const auto& m : modes[i]) d = std::min(d, m.duration);
        mind[i] = d;
    }
    std::vector<int> est(total_activities(), 0);
    int cp = 0;
    for (int i : order) {
        int s = 0;
        for (int p : predecessors[i])
            s = std::max(s, est[p] + mind[p]);
        est[i] = s;
        cp = std::max(cp, s + mind[i]);
    }
    return cp;
}

Instance parse_instance(const std::string& text) {
    Instance inst;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool saw_header = false;
    int n = -1, k = -1;
    bool saw_q = false, saw_tmax = false, saw_t = false, saw_costmode = false;
    std::vector<bool> act_seen, osw_seen;

    auto require_counts = [&](int line) {
        if (n < 0 || k < 0) throw ParseError(line, "N and K must precede ACT/OSW lines");
    };

    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (!saw_header) {
            if (line != "MOSWACP v1") throw ParseError(lineno, "expected header 'MOSWACP v1'");
            saw_header = true;
            continue;
        }

        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "N") {
            std::string v;
            ls >> v;
            n = parse_int(v, lineno);
            if (n < 0) throw ParseError(lineno, "N must be >= 0");
            inst.n_activities = n;
            inst.modes.assign(n + 2, {});
            inst.predecessors.assign(n + 2, {});
            act_seen.assign(n + 2, false);
        } else if (word == "K") {
            std::string v;
            ls >> v;
            k = parse_int(v, lineno);
            if (k < 0) throw ParseError(lineno, "K must be >= 0");
            inst.workshops.assign(k, Workshop{});
            osw_seen.assign(k, false);
        } else if (word == "Q") {
            std::string v;
            ls >> v;
            inst.site_capacity = parse_int(v, lineno);
            if (inst.site_capacity <= 0) throw ParseError(lineno, "Q must be positive");
            saw_q = true;
        } else if (word == "TMAX") {
            std::string v;
            ls >> v;
            inst.deadline = parse_int(v, lineno);
            saw_tmax = true;
        } else if (word == "T") {
            std::string v;
            ls >> v;
            inst.horizon = parse_int(v, lineno);
            saw_t = true;
        } else if (word == "costmode") {
            auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, "expected 'costmode = level|duration'");
            std::string v = trim(line.substr(eq + 1));
            if (v == "level")
                inst.cost_mode = CostMode::Level;
            else if (v == "duration")
                inst.cost_mode = CostMode::Duration;
            else
                throw ParseError(lineno, "costmode must be 'level' or 'duration'");
            saw_costmode = true;
        } else if (word == "ACT") {
            require_counts(lineno);
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError(lineno, "expected ':' in ACT line");
            int j = parse_int(line.substr(3, colon - 3), lineno);
            if (j < 1 || j > n) throw ParseError(lineno, "activity index out of range 1..N");
            if (act_seen[j]) throw ParseError(lineno, "duplicate ACT " + std::to_string(j));
            act_seen[j] = true;
            std::string preds_part, modes_part;
            // pred = ... ; modes = ...   (modes value may contain ';', so find the keys directly)
            auto pred_pos = line.find("pred", colon);
            auto modes_pos = line.find("modes", colon);
            if (pred_pos == std::string::npos || modes_pos == std::string::npos)
                throw ParseError(lineno, "ACT line needs 'pred = ...' and 'modes = ...'");
            {
                auto semi = line.find(';', pred_pos);
                if (semi == std::string::npos || semi > modes_pos)
                    throw ParseError(lineno, "expected ';' between pred and modes");
                auto [key, val] = key_value(line.substr(pred_pos, semi - pred_pos), lineno);
                if (key != "pred") throw ParseError(lineno, "expected 'pred'");
                preds_part = val;
            }
            {
                auto [key, val] = key_value(line.substr(modes_pos), lineno);
                if (key != "modes") throw ParseError(lineno, "expected 'modes'");
                modes_part = val;
            }
            if (!preds_part.empty() && preds_part != "-") {
                for (const auto& tok : split(preds_part, ',')) {
                    int p = parse_int(tok, lineno);
                    if (p < 0 || p > n + 1) throw ParseError(lineno, "predecessor index out of range");
                    inst.predecessors[j].push_back(p);
                }
            }
            // modes: (d; r1,...,rK)(d; r1,...,rK)...
            std::size_t pos = 0;
            while (pos < modes_part.size()) {
                while (pos < modes_part.size() && std::isspace(static_cast<unsigned char>(modes_part[pos]))) ++pos;
                if (pos >= modes_part.size()) break;
                if (modes_part[pos] != '(') throw ParseError(lineno, "expected '(' in modes");
                auto close = modes_part.find(')', pos);
                if (close == std::string::npos) throw ParseError(lineno, "unterminated mode group");
                std::string group = modes_part.substr(pos + 1, close - pos - 1);
                pos = close + 1;
                auto semi = group.find(';');
                if (semi == std::string::npos) throw ParseError(lineno, "mode group needs 'duration; demands'");
                ModeSpec m;
                m.duration = parse_int(group.substr(0, semi), lineno);
                std::string demands = trim(group.substr(semi + 1));
                if (!demands.empty()) {
                    for (const auto& tok : split(demands, ','))
                        m.space_demand.push_back(parse_int(tok, lineno));
                }
                if (static_cast<int>(m.space_demand.size()) != k)
                    throw ParseError(lineno, "mode demand list must have K entries");
                inst.modes[j].push_back(std::move(m));
            }
            if (inst.modes[j].empty()) throw ParseError(lineno, "missing mode for activity " + std::to_string(j));
        } else if (word == "OSW") {
            require_counts(lineno);
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError(lineno, "expected ':' in OSW line");
            int w = parse_int(line.substr(3, colon - 3), lineno);
            if (w < 1 || w > k) throw ParseError(lineno, "workshop index out of range 1..K");
            if (osw_seen[w - 1]) throw ParseError(lineno, "duplicate OSW " + std::to_string(w));
            osw_seen[w - 1] = true;
            Workshop& ws = inst.workshops[w - 1];
            bool saw_cost = false;
            for (const auto& piece : split(line.substr(colon + 1), ';')) {
                if (trim(piece).empty()) continue;
                auto [key, val] = key_value(piece, lineno);
                if (key == "cost") {
                    ws.unit_cost = parse_double(val, lineno);
                    saw_cost = true;
                } else if (key == "lifetime") {
                    if (val != "-") ws.max_lifetime = parse_int(val, lineno);
                } else if (key == "costday") {
                    ws.cost_per_day = parse_double(val, lineno);
                } else if (key == "lead") {
                    auto parts = split(val, ',');
                    if (parts.size() != 2) throw ParseError(lineno, "lead expects 'install,dismantle'");
                    ws.lead_times = {parse_int(parts[0], lineno), parse_int(parts[1], lineno)};
                } else {
                    throw ParseError(lineno, "unknown OSW key '" + key + "'");
                }
            }
            if (!saw_cost) throw ParseError(lineno, "OSW line needs 'cost = ...'");
        } else {
            throw ParseError(lineno, "unrecognized line '" + line + "'");
        }
    }

    if (!saw_header) throw ParseError(1, "empty document");
    if (n < 0) throw ParseError(lineno, "missing N");
    if (k < 0) throw ParseError(lineno, "missing K");
    if (!saw_q) throw ParseError(lineno, "missing Q");
    if (!saw_tmax) throw ParseError(lineno, "missing TMAX");
    if (!saw_t) throw ParseError(lineno, "missing T");
    (void)saw_costmode; // defaults to level
    for (int j = 1; j <= n; ++j)
        if (!act_seen[j]) throw ParseError(lineno, "missing ACT " + std::to_string(j));
    for (int w = 0; w < k; ++w)
        if (!osw_seen[w]) throw ParseError(lineno, "missing OSW " + std::to_string(w + 1));

    inst.modes[0] = {ModeSpec{0, std::vector<int>(k, 0)}};
    inst.modes[inst.sink()] = {ModeSpec{0, std::vector<int>(k, 0)}};
    inst.normalize_predecessors();

    // duration-cost instances bill 'cost' per day unless costday overrides
    if (inst.cost_mode == CostMode::Duration)
        for (auto& ws : inst.workshops)
            if (!ws.cost_per_day) ws.cost_per_day = ws.unit_cost;

    auto diags = validate_instance(inst);
    if (!diags.empty()) throw ParseError(lineno, "semantic error: " + diags.front());
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "MOSWACP v1\n";
    out << "N " << inst.n_activities << "\n";
    out << "K " << inst.num_workshops() << "\n";
    out << "Q " << inst.site_capacity << "\n";
    out << "TMAX " << inst.deadline << "\n";
    out << "T " << inst.horizon << "\n";
    out << "costmode = " << (inst.cost_mode == CostMode::Level ? "level" : "duration") << "\n";
    for (int j = 1; j <= inst.n_activities; ++j) {
        out << "ACT " << j << " : pred = ";
        const auto& preds = inst.predecessors[j];
        if (preds.empty() || (preds.size() == 1 && preds[0] == 0)) {
            out << "-";
        } else {
            bool first = true;
            for (int p : preds) {
                if (!first) out << ",";
                out << p;
                first = false;
            }
        }
        out << " ; modes = ";
        for (const auto& m : inst.modes[j]) {
            out << "(" << m.duration << "; ";
            for (int kk = 0; kk < inst.num_workshops(); ++kk) {
                if (kk) out << ",";
                out << m.space_demand[kk];
            }
            out << ")";
        }
        out << "\n";
    }
    for (int w = 0; w < inst.num_workshops(); ++w) {
        const Workshop& ws = inst.workshops[w];
        out << "OSW " << (w + 1) << " : cost = " << format_double(ws.unit_cost) << " ; lifetime = ";
        if (ws.max_lifetime)
            out << *ws.max_lifetime;
        else
            out << "-";
        if (ws.cost_per_day &&
            (inst.cost_mode == CostMode::Level || *ws.cost_per_day != ws.unit_cost))
            out << " ; costday = " << format_double(*ws.cost_per_day);
        if (ws.lead_times)
            out << " ; lead = " << ws.lead_times->first << "," << ws.lead_times->second;
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> diags;
    const int n = inst.n_activities;
    const int k = inst.num_workshops();

    if (static_cast<int>(inst.modes.size()) != n + 2 ||
        static_cast<int>(inst.predecessors.size()) != n + 2) {
        diags.push_back("structure: modes/predecessors must be sized N+2");
        return diags;
    }
    if (inst.site_capacity <= 0) diags.push_back("capacity: Q must be positive");
    if (inst.deadline <= 0) diags.push_back("deadline: T_max must be positive");
    if (inst.deadline > inst.horizon)
        diags.push_back("deadline: T_max exceeds horizon T");

    if (!inst.predecessors[0].empty())
        diags.push_back("dummy: activity 0 must have no predecessors");
    for (int i = 0; i < n + 2; ++i) {
        for (int p : inst.predecessors[i]) {
            if (p < 0 || p > n + 1 || p == i)
                diags.push_back("precedence: activity " + std::to_string(i) + " has bad predecessor " +
                                std::to_string(p));
        }
    }
    for (int j = 1; j <= n; ++j) {
        if (inst.modes[j].empty()) {
            diags.push_back("modes: activity " + std::to_string(j) + " has no execution mode");
            continue;
        }
        int min_total = -1;
        for (const auto& m : inst.modes[j]) {
            if (m.duration < 0)
                diags.push_back("modes: activity " + std::to_string(j) + " has negative duration");
            if (static_cast<int>(m.space_demand.size()) != k) {
                diags.push_back("modes: activity " + std::to_string(j) + " demand list size != K");
                continue;
            }
            int total = 0;
            for (int r : m.space_demand) {
                if (r < 0)
                    diags.push_back("modes: activity " + std::to_string(j) + " has negative demand");
                total += std::max(0, r);
            }
            if (min_total < 0 || total < min_total) min_total = total;
        }
        if (min_total > inst.site_capacity)
            diags.push_back("unschedulable activity " + std::to_string(j) +
                            ": minimum total space demand " + std::to_string(min_total) +
                            " exceeds Q=" + std::to_string(inst.site_capacity));
    }
    for (const auto& m : inst.modes[0])
        if (m.duration != 0) diags.push_back("dummy: activity 0 must have zero duration");
    for (const auto& m : inst.modes[inst.sink()])
        if (m.duration != 0) diags.push_back("dummy: sink must have zero duration");

    for (int w = 0; w < k; ++w) {
        const Workshop& ws = inst.workshops[w];
        if (ws.unit_cost < 0)
            diags.push_back("workshop " + std::to_string(w + 1) + ": negative unit cost");
        if (ws.max_lifetime && *ws.max_lifetime <= 0)
            diags.push_back("workshop " + std::to_string(w + 1) + ": max_lifetime must be positive");
    }

    if (n > 0 && inst.topological_order().empty()) {
        diags.push_back("cycle: precedence graph is not a DAG");
        return diags;
    }

    // sink must be reachable from every activity (no non-dummy dead ends besides sink preds)
    auto succ = inst.successors();
    for (int i = 1; i <= n; ++i) {
        bool leads_on = false;
        for (int s : succ[i])
            if (s >= 1) leads_on = true;
        bool feeds_sink =
            std::find(inst.predecessors[inst.sink()].begin(), inst.predecessors[inst.sink()].end(), i) !=
            inst.predecessors[inst.sink()].end();
        if (!leads_on && !feeds_sink)
            diags.push_back("dummy: sink not reachable from activity " + std::to_string(i));
    }
    return diags;
}

Instance import_psplib_mm(const std::string& text, const AugmentConfig& cfg) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int jobs_total = -1, renewable = -1, nonrenewable = 0, doubly = 0;

    struct JobRow {
        int n_modes = 0;
        std::vector<int> successors;
        std::vector<int> durations; // one per mode
    };
    std::vector<JobRow> jobs;

    enum class Section { Preamble, Precedence, Requests, Done };
    Section section = Section::Preamble;
    int current_job = -1;
    int resource_cols = -1;

    auto int_after_colon = [&](const std::string& line) {
        auto pos = line.find(':');
        if (pos == std::string::npos) throw ParseError(lineno, "expected ':'");
        std::istringstream vs(line.substr(pos + 1));
        int v;
        if (!(vs >> v)) throw ParseError(lineno, "expected integer after ':'");
        return v;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty()) continue;
        bool rule = line.find_first_not_of('*') == std::string::npos;

        switch (section) {
        case Section::Preamble:
            if (line.find("jobs (incl.") != std::string::npos)
                jobs_total = int_after_colon(line);
            else if (line.find("- renewable") != std::string::npos)
                renewable = int_after_colon(line);
            else if (line.find("- nonrenewable") != std::string::npos)
                nonrenewable = int_after_colon(line);
            else if (line.find("- doubly") != std::string::npos)
                doubly = int_after_colon(line);
            else if (line.find("PRECEDENCE RELATIONS") != std::string::npos) {
                if (jobs_total < 3) throw ParseError(lineno, "missing or bad jobs count");
                jobs.assign(jobs_total + 1, {});
                section = Section::Precedence;
            }
            break;
        case Section::Precedence: {
            if (rule) break;
            if (line.find("jobnr.") != std::string::npos) break;
            if (line.find("REQUESTS/DURATIONS") != std::string::npos) {
                section = Section::Requests;
                break;
            }
            std::istringstream ls(line);
            int jobnr, nmodes, nsucc;
            if (!(ls >> jobnr >> nmodes >> nsucc)) throw ParseError(lineno, "bad precedence row");
            if (jobnr < 1 || jobnr > jobs_total) throw ParseError(lineno, "job number out of range");
            jobs[jobnr].n_modes = nmodes;
            for (int s = 0; s < nsucc; ++s) {
                int v;
                if (!(ls >> v)) throw ParseError(lineno, "bad successor list");
                jobs[jobnr].successors.push_back(v);
            }
            break;
        }
        case Section::Requests: {
            if (line.find("RESOURCEAVAILABILITIES") != std::string::npos || rule) {
                bool complete = true;
                for (int j = 1; j <= jobs_total; ++j)
                    if (static_cast<int>(jobs[j].durations.size()) != jobs[j].n_modes) complete = false;
                if (complete && rule) break;     // trailing rule inside section
                if (line.find("RESOURCEAVAILABILITIES") != std::string::npos) section = Section::Done;
                break;
            }
            if (line.find("jobnr.") != std::string::npos) {
                // header row tells how many resource columns follow duration
                std::istringstream hs(line);
                std::string tok;
                resource_cols = 0;
                while (hs >> tok)
                    if (tok == "R" || tok == "N" || tok == "D") {
                        hs >> tok; // column index
                        ++resource_cols;
                    }
                break;
            }
            if (line.find_first_not_of('-') == std::string::npos) break;
            std::istringstream ls(line);
            std::vector<long> nums;
            long v;
            while (ls >> v) nums.push_back(v);
            if (nums.empty()) break;
            int cols = resource_cols >= 0 ? resource_cols : renewable + nonrenewable + doubly;
            if (static_cast<int>(nums.size()) == cols + 3) {
                current_job = static_cast<int>(nums[0]);
                if (current_job < 1 || current_job > jobs_total)
                    throw ParseError(lineno, "request row job out of range");
                jobs[current_job].durations.push_back(static_cast<int>(nums[2]));
            } else if (static_cast<int>(nums.size()) == cols + 2) {
                if (current_job < 0) throw ParseError(lineno, "continuation row before any job row");
                jobs[current_job].durations.push_back(static_cast<int>(nums[1]));
            } else {
                throw ParseError(lineno, "bad REQUESTS/DURATIONS row");
            }
            break;
        }
        case Section::Done:
            break;
        }
    }

    if (jobs_total < 3) throw ParseError(lineno, "not a PSPLIB multi-mode document (no jobs count)");
    if (renewable < 0) throw ParseError(lineno, "missing renewable resource count");
    if (renewable == 0) throw ParseError(lineno, "zero-workshop input: no renewable resources");
    for (int j = 1; j <= jobs_total; ++j) {
        if (jobs[j].n_modes <= 0) throw ParseError(lineno, "job " + std::to_string(j) + " missing modes");
        if (static_cast<int>(jobs[j].durations.size()) != jobs[j].n_modes)
            throw ParseError(lineno, "job " + std::to_string(j) + " has " +
                                         std::to_string(jobs[j].durations.size()) + " duration rows, expected " +
                                         std::to_string(jobs[j].n_modes));
    }
    if (cfg.cost_choices.empty()) throw ParseError(lineno, "cost_choices must be non-empty");
    if (cfg.space_lo < 0 || cfg.space_hi < cfg.space_lo)
        throw ParseError(lineno, "bad space_range");

    Instance inst;
    const int n = jobs_total - 2;
    const int k = renewable;
    inst.n_activities = n;
    inst.workshops.assign(k, Workshop{});
    inst.modes.assign(n + 2, {});
    inst.predecessors.assign(n + 2, {});
    inst.cost_mode = CostMode::Level;

    // PSPLIB job j -> activity j-1, so dummies land on 0 and N+1
    for (int j = 1; j <= jobs_total; ++j)
        for (int s : jobs[j].successors) {
            if (s < 1 || s > jobs_total) throw ParseError(lineno, "successor out of range");
            inst.predecessors[s - 1].push_back(j - 1);
        }

    // one seeded stream: unit costs for k = 0..K-1, then demands in
    // (activity, mode, workshop) ascending order
    Rng rng(cfg.seed);
    for (int w = 0; w < k; ++w)
        inst.workshops[w].unit_cost = cfg.cost_choices[rng.pick(cfg.cost_choices.size())];

    for (int j = 1; j <= n; ++j) {
        const JobRow& row = jobs[j + 1];
        for (int m = 0; m < row.n_modes; ++m) {
            ModeSpec ms;
            ms.duration = row.durations[m];
            ms.space_demand.resize(k);
            for (int w = 0; w < k; ++w)
                ms.space_demand[w] = rng.uniform_int(cfg.space_lo, cfg.space_hi);
            inst.modes[j].push_back(std::move(ms));
        }
    }
    inst.modes[0] = {ModeSpec{0, std::vector<int>(k, 0)}};
    inst.modes[inst.sink()] = {ModeSpec{0, std::vector<int>(k, 0)}};
    inst.normalize_predecessors();

    int max_total = 0, sum_max_d = 0;
    for (int j = 1; j <= n; ++j) {
        int dmax = 0;
        for (const auto& m : inst.modes[j]) {
            int total = 0;
            for (int r : m.space_demand) total += r;
            max_total = std::max(max_total, total);
            dmax = std::max(dmax, m.duration);
        }
        sum_max_d += dmax;
    }
    inst.site_capacity = std::max(1, static_cast<int>(std::lround(cfg.q_factor * max_total)));
    inst.horizon = std::max(1, sum_max_d);
    int cp = inst.critical_path_min_duration();
    int tmax = std::max({1, cp, static_cast<int>(std::ceil(cfg.tmax_factor * cp))});
    inst.deadline = std::min(tmax, inst.horizon);

    auto diags = validate_instance(inst);
    if (!diags.empty()) throw ParseError(lineno, "imported instance invalid: " + diags.front());
    return inst;
}

} // namespace moswacp
