#include "lposat/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lposat {

namespace {

// Index of a literal in watch lists: 2*(v-1) for +v, 2*(v-1)+1 for -v.
inline size_t lit_index(int lit) {
    int v = lit > 0 ? lit : -lit;
    return 2 * static_cast<size_t>(v - 1) + (lit < 0);
}

inline int lit_var(int lit) { return lit > 0 ? lit : -lit; }

// Luby restart sequence, 0-based: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
int64_t luby(int64_t i) {
    int64_t size = 1;
    int seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != i) {
        size = (size - 1) / 2;
        --seq;
        i %= size;
    }
    return 1LL << seq;
}

class Cdcl {
  public:
    Cdcl(const CnfInstance &cnf, const SolverLimits &limits)
        : input_(cnf), limits_(limits), nvars_(cnf.var_count),
          assign_(nvars_ + 1, -1), reason_(nvars_ + 1, -1),
          level_(nvars_ + 1, 0), activity_(nvars_ + 1, 0.0),
          phase_(nvars_ + 1, 0), heap_pos_(nvars_ + 1, -1),
          seen_(nvars_ + 1, 0), watches_(2 * static_cast<size_t>(nvars_)) {}

    SatResult run() {
        start_ = std::chrono::steady_clock::now();
        if (!load_clauses())
            return {SolveStatus::Unsat, {}};
        for (int v = 1; v <= nvars_; ++v)
            heap_insert(v);
        if (propagate() != -1)
            return {SolveStatus::Unsat, {}};

        int64_t restart_count = 0;
        int64_t restart_budget = 100 * luby(restart_count);
        int64_t conflicts_here = 0;

        while (true) {
            int confl = propagate();
            if (confl != -1) {
                ++conflicts_;
                ++conflicts_here;
                if (decision_level() == 0)
                    return {SolveStatus::Unsat, {}};
                std::vector<int> learnt;
                int back_level = analyze(confl, learnt);
                backtrack(back_level);
                attach_learnt(std::move(learnt));
                decay_activities();
                if (out_of_budget())
                    return {SolveStatus::Limit, {}};
                continue;
            }
            if (conflicts_here >= restart_budget) {
                backtrack(0);
                conflicts_here = 0;
                restart_budget = 100 * luby(++restart_count);
                continue;
            }
            int v = pick_branch_var();
            if (v == 0)
                return finish();
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(phase_[v] ? v : -v, -1);
        }
    }

  private:
    // --- clause storage -------------------------------------------------

    bool load_clauses() {
        for (const std::vector<int> &input_clause : input_.clauses) {
            std::vector<int> clause = input_clause;
            std::sort(clause.begin(), clause.end(),
                      [](int a, int b) { return lit_var(a) != lit_var(b)
                                                    ? lit_var(a) < lit_var(b)
                                                    : a < b; });
            clause.erase(std::unique(clause.begin(), clause.end()),
                         clause.end());
            bool tautology = false;
            for (size_t i = 0; i + 1 < clause.size(); ++i)
                if (clause[i] == -clause[i + 1]) {
                    tautology = true;
                    break;
                }
            if (tautology)
                continue;
            for (int lit : clause)
                if (lit == 0 || lit_var(lit) > nvars_)
                    throw std::invalid_argument(
                        "solve: literal out of range in input clause");
            if (clause.empty())
                return false;
            if (clause.size() == 1) {
                int8_t val = value(clause[0]);
                if (val == 0)
                    return false;
                if (val == -1)
                    enqueue(clause[0], -1);
                continue;
            }
            int id = static_cast<int>(clauses_.size());
            clauses_.push_back(std::move(clause));
            watch(id, clauses_[id][0]);
            watch(id, clauses_[id][1]);
        }
        return true;
    }

    void watch(int clause_id, int lit) {
        watches_[lit_index(lit)].push_back(clause_id);
    }

    // --- assignment -----------------------------------------------------

    // -1 unassigned, 0 false, 1 true.
    int8_t value(int lit) const {
        int8_t v = assign_[lit_var(lit)];
        if (v == -1)
            return -1;
        return lit > 0 ? v : static_cast<int8_t>(1 - v);
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void enqueue(int lit, int reason_clause) {
        int v = lit_var(lit);
        assign_[v] = lit > 0;
        reason_[v] = reason_clause;
        level_[v] = decision_level();
        trail_.push_back(lit);
    }

    void backtrack(int target_level) {
        if (decision_level() <= target_level)
            return;
        int floor = trail_lim_[target_level];
        for (int i = static_cast<int>(trail_.size()) - 1; i >= floor; --i) {
            int v = lit_var(trail_[i]);
            phase_[v] = assign_[v];
            assign_[v] = -1;
            reason_[v] = -1;
            if (heap_pos_[v] == -1)
                heap_insert(v);
        }
        trail_.resize(floor);
        trail_lim_.resize(target_level);
        prop_head_ = trail_.size();
    }

    // --- propagation ----------------------------------------------------

    // Returns the id of a conflicting clause, or -1.
    int propagate() {
        while (prop_head_ < trail_.size()) {
            int false_lit = -trail_[prop_head_++];
            std::vector<int> &list = watches_[lit_index(false_lit)];
            size_t keep = 0;
            for (size_t i = 0; i < list.size(); ++i) {
                int id = list[i];
                std::vector<int> &clause = clauses_[id];
                if (clause[0] == false_lit)
                    std::swap(clause[0], clause[1]);
                if (value(clause[0]) == 1) {
                    list[keep++] = id;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < clause.size(); ++k) {
                    if (value(clause[k]) != 0) {
                        std::swap(clause[1], clause[k]);
                        watch(id, clause[1]);
                        moved = true;
                        break;
                    }
                }
                if (moved)
                    continue;
                list[keep++] = id;
                if (value(clause[0]) == 0) {
                    for (++i; i < list.size(); ++i)
                        list[keep++] = list[i];
                    list.resize(keep);
                    return id;
                }
                enqueue(clause[0], id);
            }
            list.resize(keep);
        }
        return -1;
    }

    // --- conflict analysis ----------------------------------------------

    // First-UIP learning. Fills `learnt` (asserting literal first) and
    // returns the backjump level.
    int analyze(int confl, std::vector<int> &learnt) {
        learnt.push_back(0); // room for the asserting literal
        int counter = 0;
        int p = 0;
        size_t idx = trail_.size();

        while (true) {
            const std::vector<int> &clause = clauses_[confl];
            for (int q : clause) {
                if (p != 0 && q == p)
                    continue;
                int v = lit_var(q);
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    bump_activity(v);
                    if (level_[v] == decision_level())
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen_[lit_var(trail_[idx - 1])])
                --idx;
            p = trail_[--idx];
            seen_[lit_var(p)] = 0;
            if (--counter == 0)
                break;
            confl = reason_[lit_var(p)];
        }
        learnt[0] = -p;

        int back_level = 0;
        size_t best = 1;
        for (size_t i = 1; i < learnt.size(); ++i) {
            seen_[lit_var(learnt[i])] = 0;
            if (level_[lit_var(learnt[i])] > back_level) {
                back_level = level_[lit_var(learnt[i])];
                best = i;
            }
        }
        if (learnt.size() > 1)
            std::swap(learnt[1], learnt[best]);
        return back_level;
    }

    void attach_learnt(std::vector<int> learnt) {
        if (learnt.size() == 1) {
            enqueue(learnt[0], -1);
            return;
        }
        int id = static_cast<int>(clauses_.size());
        clauses_.push_back(std::move(learnt));
        watch(id, clauses_[id][0]);
        watch(id, clauses_[id][1]);
        enqueue(clauses_[id][0], id);
    }

    // --- decision heuristic ----------------------------------------------

    void bump_activity(int v) {
        activity_[v] += activity_inc_;
        if (activity_[v] > 1e100) {
            for (int u = 1; u <= nvars_; ++u)
                activity_[u] *= 1e-100;
            activity_inc_ *= 1e-100;
        }
        if (heap_pos_[v] != -1)
            heap_up(heap_pos_[v]);
    }

    void decay_activities() { activity_inc_ /= 0.95; }

    bool better(int a, int b) const {
        return activity_[a] != activity_[b] ? activity_[a] > activity_[b]
                                            : a < b;
    }

    void heap_insert(int v) {
        heap_pos_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        heap_up(heap_pos_[v]);
    }

    void heap_up(int i) {
        int v = heap_[i];
        while (i > 0 && better(v, heap_[(i - 1) / 2])) {
            heap_[i] = heap_[(i - 1) / 2];
            heap_pos_[heap_[i]] = i;
            i = (i - 1) / 2;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    void heap_down(int i) {
        int v = heap_[i];
        int n = static_cast<int>(heap_.size());
        while (true) {
            int child = 2 * i + 1;
            if (child >= n)
                break;
            if (child + 1 < n && better(heap_[child + 1], heap_[child]))
                ++child;
            if (!better(heap_[child], v))
                break;
            heap_[i] = heap_[child];
            heap_pos_[heap_[i]] = i;
            i = child;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    int heap_pop() {
        int v = heap_[0];
        heap_pos_[v] = -1;
        heap_[0] = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_pos_[heap_[0]] = 0;
            heap_down(0);
        }
        return v;
    }

    int pick_branch_var() {
        while (!heap_.empty()) {
            int v = heap_pop();
            if (assign_[v] == -1)
                return v;
        }
        return 0;
    }

    // --- bookkeeping ------------------------------------------------------

    bool out_of_budget() {
        if (limits_.max_conflicts >= 0 && conflicts_ >= limits_.max_conflicts)
            return true;
        if (limits_.max_seconds >= 0) {
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start_)
                    .count();
            if (elapsed >= limits_.max_seconds)
                return true;
        }
        return false;
    }

    SatResult finish() const {
        SatResult result;
        result.status = SolveStatus::Sat;
        result.model.assign(nvars_ + 1, 0);
        for (int v = 1; v <= nvars_; ++v)
            result.model[v] = assign_[v] == 1;
        if (!verify_model(input_, result.model))
            throw std::logic_error("solve: model failed verification");
        return result;
    }

    const CnfInstance &input_;
    SolverLimits limits_;
    int nvars_;

    std::vector<std::vector<int>> clauses_;
    std::vector<int8_t> assign_;
    std::vector<int> reason_;
    std::vector<int> level_;
    std::vector<double> activity_;
    std::vector<char> phase_;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;
    std::vector<char> seen_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    size_t prop_head_ = 0;
    double activity_inc_ = 1.0;
    int64_t conflicts_ = 0;
    std::chrono::steady_clock::time_point start_;
};

} // namespace

SatResult solve(const CnfInstance &cnf, const SolverLimits &limits) {
    return Cdcl(cnf, limits).run();
}

} // namespace lposat
