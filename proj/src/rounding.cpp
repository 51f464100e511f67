#include "liftsched/rounding.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace liftsched {

std::vector<long> Schedule::loads(const Instance& inst) const {
    std::vector<long> l(static_cast<std::size_t>(inst.machines), 0);
    for (const Job& j : inst.jobs) {
        auto it = assignment.find(j.id);
        if (it != assignment.end()) l[static_cast<std::size_t>(it->second)] += j.size;
    }
    return l;
}

long Schedule::makespan(const Instance& inst) const {
    long best = 0;
    for (long l : loads(inst)) best = std::max(best, l);
    return best;
}

bool Schedule::covers_all_jobs(const Instance& inst) const {
    for (const Job& j : inst.jobs)
        if (!assignment.count(j.id)) return false;
    return true;
}

std::vector<Rat> Schedule::as_point(const Instance& inst, const AssignLp& layout) const {
    std::vector<Rat> x(static_cast<std::size_t>(layout.m * layout.n), Rat(0));
    for (int j = 0; j < layout.n; ++j) {
        auto it = assignment.find(inst.jobs[static_cast<std::size_t>(j)].id);
        if (it != assignment.end())
            x[static_cast<std::size_t>(layout.var(it->second, j))] = 1;
    }
    return x;
}

std::string Schedule::report(const Instance& inst) const {
    std::ostringstream os;
    std::vector<long> l = loads(inst);
    for (int i = 0; i < inst.machines; ++i) {
        os << "machine " << (i + 1) << " load " << l[static_cast<std::size_t>(i)] << ":";
        for (const Job& j : inst.jobs) {
            auto it = assignment.find(j.id);
            if (it != assignment.end() && it->second == i) os << " " << j.id;
        }
        os << "\n";
    }
    os << "makespan " << makespan(inst) << "\n";
    return os.str();
}

namespace {

struct BruteState {
    const Instance& inst;
    std::vector<int> order;   // job indices, descending size
    std::vector<long> loads;
    std::vector<int> pick;    // machine per ordered job
    long best;
    std::vector<int> best_pick;
    unsigned long nodes = 0;
    unsigned long budget;

    void dfs(std::size_t t) {
        if (++nodes > budget) throw BudgetExceeded("brute force node budget");
        if (t == order.size()) {
            long ms = *std::max_element(loads.begin(), loads.end());
            if (ms < best) {
                best = ms;
                best_pick = pick;
            }
            return;
        }
        long p = inst.jobs[static_cast<std::size_t>(order[t])].size;
        for (int i = 0; i < inst.machines; ++i) {
            // identical machines: skip repeats of the same current load
            bool dup = false;
            for (int h = 0; h < i; ++h)
                if (loads[static_cast<std::size_t>(h)] == loads[static_cast<std::size_t>(i)]) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            if (loads[static_cast<std::size_t>(i)] + p >= best) continue;
            loads[static_cast<std::size_t>(i)] += p;
            pick[t] = i;
            dfs(t + 1);
            loads[static_cast<std::size_t>(i)] -= p;
        }
    }
};

} // namespace

BruteForceResult brute_force_opt(const Instance& inst, unsigned long budget) {
    inst.validate();
    double blowup = std::pow(static_cast<double>(inst.machines),
                             static_cast<double>(inst.jobs.size()));
    if (blowup > 4.0 * static_cast<double>(budget)) throw BudgetExceeded("m^n too large");

    BruteState st{inst, {}, {}, {}, 0, {}, 0, budget};
    st.order.resize(inst.jobs.size());
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) st.order[j] = static_cast<int>(j);
    std::sort(st.order.begin(), st.order.end(), [&](int a, int b) {
        return inst.jobs[static_cast<std::size_t>(a)].size >
               inst.jobs[static_cast<std::size_t>(b)].size;
    });
    st.loads.assign(static_cast<std::size_t>(inst.machines), 0);
    st.pick.assign(inst.jobs.size(), 0);
    st.best = inst.total_size() + 1;
    st.dfs(0);

    BruteForceResult res;
    res.opt = st.best;
    for (std::size_t t = 0; t < st.order.size(); ++t)
        res.schedule.assignment[inst.jobs[static_cast<std::size_t>(st.order[t])].id] =
            st.best_pick[t];
    return res;
}

Schedule greedy_short(Schedule partial, const std::vector<std::string>& shorts,
                      const Instance& inst) {
    std::vector<long> loads = partial.loads(inst);
    std::vector<std::string> order = shorts;
    std::sort(order.begin(), order.end());
    for (const std::string& id : order) {
        int arg = 0;
        for (int i = 1; i < inst.machines; ++i)
            if (loads[static_cast<std::size_t>(i)] < loads[static_cast<std::size_t>(arg)])
                arg = i;
        partial.assignment[id] = arg;
        loads[static_cast<std::size_t>(arg)] +=
            inst.jobs[static_cast<std::size_t>(inst.job_index(id))].size;
    }
    return partial;
}

namespace {

Rat class_mass(const Pseudoexpectation& pe, const AssignLp& layout, const Instance& inst,
               const JobClassification& cls, int machine, int q) {
    Rat mass = 0;
    for (const std::string& id : cls.long_classes[static_cast<std::size_t>(q - 1)])
        mass += pe.value({layout.var(machine, inst.job_index(id))});
    return mass;
}

} // namespace

bool StabilityState::all_stable() const {
    for (const auto& row : cells)
        for (const Cell& c : row)
            if (!c.stable) return false;
    return true;
}

StabilityState stability_scan(const Pseudoexpectation& pe, const AssignLp& layout,
                              const Instance& inst, const JobClassification& cls) {
    StabilityState st;
    st.cells.assign(static_cast<std::size_t>(layout.m),
                    std::vector<StabilityState::Cell>(static_cast<std::size_t>(cls.s)));
    for (int i = 0; i < layout.m; ++i)
        for (int q = 1; q <= cls.s; ++q) {
            auto& cell = st.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(q - 1)];
            cell.mass = class_mass(pe, layout, inst, cls, i, q);
            if (rat_is_integer(cell.mass)) {
                cell.stable = true;
                cell.a = cell.mass.get_num().get_si();
            }
        }
    return st;
}

namespace {

// greedy positive-mass set of `target` pairs (machine, job in J_c); ties by
// ascending job id; returns a shorter set when no extension keeps the joint
// mass positive
Mono greedy_conditioning_set(const Pseudoexpectation& pe, const AssignLp& layout,
                             const Instance& inst, const JobClassification& cls,
                             int machine, int c, std::size_t target) {
    Mono A;
    const auto& ids = cls.long_classes[static_cast<std::size_t>(c - 1)];
    std::vector<char> used(ids.size(), 0);
    while (A.size() < target) {
        bool extended = false;
        for (std::size_t t = 0; t < ids.size(); ++t) {
            if (used[t]) continue;
            Mono candidate = A;
            candidate.push_back(layout.var(machine, inst.job_index(ids[t])));
            std::sort(candidate.begin(), candidate.end());
            if (static_cast<int>(candidate.size()) > pe.degree()) break;
            if (pe.value(candidate) > 0) {
                A = std::move(candidate);
                used[t] = 1;
                extended = true;
                break;
            }
        }
        if (!extended) break;
    }
    return A;
}

// Conditioning on pairs that already carry mass 1 is the identity, so only
// the fractional part of the set spends degree.
Pseudoexpectation condition_sparingly(const Pseudoexpectation& pe, const Mono& A,
                                      int* spent) {
    Mono frac;
    for (int v : A)
        if (pe.value({v}) != 1) frac.push_back(v);
    if (frac.empty()) return pe;
    if (static_cast<int>(frac.size()) > pe.degree())
        throw DegreeExhausted("conditioning needs degree " + std::to_string(frac.size()) +
                              " but only " + std::to_string(pe.degree()) + " remains");
    if (spent) *spent += static_cast<int>(frac.size());
    return pe.condition(frac);
}

struct StagedContext {
    const AssignLp& layout;
    const Instance& inst;
    const JobClassification& cls;
    int* degree_spent = nullptr;
    std::ostringstream* trace = nullptr;

    void log(const std::string& line) const {
        if (trace) (*trace) << line << "\n";
    }
};

Pseudoexpectation stabilize_impl(Pseudoexpectation pe, int i_lo, int i_hi, int q,
                                 const StagedContext& ctx) {
    const int c = q + 1; // class being pinned
    if (c > ctx.cls.s) return pe;
    const long inv_eps = ctx.cls.inv_epsilon();
    int prev = i_lo - 1;
    for (long z = inv_eps; z >= 1; --z) {
        // rightmost machine in (prev, i_hi] carrying a positive-mass set of size z
        int found = -1;
        Mono set_a;
        for (int i = i_hi; i > prev; --i) {
            Mono a = greedy_conditioning_set(pe, ctx.layout, ctx.inst, ctx.cls, i, c,
                                             static_cast<std::size_t>(z));
            if (static_cast<long>(a.size()) == z) {
                found = i;
                set_a = std::move(a);
                break;
            }
        }
        if (found < 0) continue;
        pe = condition_sparingly(pe, set_a, ctx.degree_spent);
        ctx.log("stabilize class " + std::to_string(c) + ": conditioned " +
                std::to_string(z) + " pairs on machine " + std::to_string(found + 1));
        const int left = prev + 1;
        if (left != found) {
            Mono set_b = greedy_conditioning_set(pe, ctx.layout, ctx.inst, ctx.cls, left, c,
                                                 static_cast<std::size_t>(z));
            if (static_cast<long>(set_b.size()) != z)
                throw DegreeExhausted("stabilize: no size-" + std::to_string(z) +
                                      " set at the left boundary machine " +
                                      std::to_string(left + 1));
            pe = condition_sparingly(pe, set_b, ctx.degree_spent);
            ctx.log("stabilize class " + std::to_string(c) + ": conditioned " +
                    std::to_string(z) + " pairs on machine " + std::to_string(left + 1));
        }
        // the symmetry breaking rows pin every machine in [left, found]
        for (int i = left; i <= found; ++i) {
            Rat mass = class_mass(pe, ctx.layout, ctx.inst, ctx.cls, i, c);
            if (mass != z)
                throw DegreeExhausted("stabilize: machine " + std::to_string(i + 1) +
                                      " class " + std::to_string(c) + " mass " +
                                      rat_str(mass) + " not pinned to " +
                                      std::to_string(z));
        }
        prev = found;
    }
    for (int i = prev + 1; i <= i_hi; ++i) {
        Rat mass = class_mass(pe, ctx.layout, ctx.inst, ctx.cls, i, c);
        if (mass != 0)
            throw DegreeExhausted("stabilize: trailing machine " + std::to_string(i + 1) +
                                  " class " + std::to_string(c) + " mass " +
                                  rat_str(mass) + " not pinned to 0");
    }
    return pe;
}

} // namespace

Pseudoexpectation stabilize(Pseudoexpectation pe, int i_lo, int i_hi, int q,
                            const AssignLp& layout, const Instance& inst,
                            const JobClassification& cls, std::string* trace) {
    std::ostringstream os;
    StagedContext ctx{layout, inst, cls, nullptr, trace ? &os : nullptr};
    Pseudoexpectation out = stabilize_impl(std::move(pe), i_lo, i_hi, q, ctx);
    if (trace) *trace += os.str();
    return out;
}

Schedule round_long(const StabilityState& state, const Instance& inst,
                    const JobClassification& cls) {
    Schedule sched;
    const int m = static_cast<int>(state.cells.size());
    for (int q = 1; q <= cls.s; ++q) {
        const auto& ids = cls.long_classes[static_cast<std::size_t>(q - 1)];
        long total = 0;
        for (int i = 0; i < m; ++i) {
            const auto& cell = state.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(q - 1)];
            if (!cell.stable || cell.a < 0) throw InconsistentCounts();
            total += cell.a;
        }
        if (total != static_cast<long>(ids.size())) throw InconsistentCounts();
        std::size_t next = 0;
        for (int i = 0; i < m; ++i) {
            long take = state.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(q - 1)].a;
            for (long t = 0; t < take; ++t) sched.assignment[ids[next++]] = i;
        }
    }
    return sched;
}

namespace {

struct PreparedPe {
    Pseudoexpectation pe;
    bool from_hull = false;
};

// Lift the program to `degree` and solve, or take the exact-hull route when
// the requested degree reaches |E| (the lift is exact there).
std::optional<PreparedPe> prepare_pe(const RationalLP& lp, int degree,
                                     const RoundOptions& opts, std::string& trace) {
    const int ground = static_cast<int>(lp.num_vars());
    if (degree >= ground) {
        std::optional<Pseudoexpectation> pe = exact_hull_pe(lp, opts.hull_budget);
        if (!pe) return std::nullopt;
        trace += "pe: exact hull at full degree " + std::to_string(ground) + "\n";
        return PreparedPe{std::move(*pe), true};
    }
    LiftedLP lift = build_sa_lift(lp, degree, opts.lift_budget);
    LpOutcome outcome = lp_feasible(lift.lp);
    if (!outcome.feasible()) return std::nullopt;
    trace += "pe: degree-" + std::to_string(degree) + " lift solved (" +
             std::to_string(lift.lp.rows.size()) + " rows)\n";
    return PreparedPe{pe_from_solution(lift, outcome.point), false};
}

// consecutive machine groups sharing the stability signature of classes 1..q
std::vector<std::pair<int, int>> signature_groups(const Pseudoexpectation& pe,
                                                  const AssignLp& layout,
                                                  const Instance& inst,
                                                  const JobClassification& cls, int q) {
    std::vector<std::vector<Rat>> sig(static_cast<std::size_t>(layout.m));
    for (int i = 0; i < layout.m; ++i)
        for (int t = 1; t <= q; ++t)
            sig[static_cast<std::size_t>(i)].push_back(
                class_mass(pe, layout, inst, cls, i, t));
    std::vector<std::pair<int, int>> groups;
    int start = 0;
    for (int i = 1; i <= layout.m; ++i) {
        if (i == layout.m || sig[static_cast<std::size_t>(i)] != sig[static_cast<std::size_t>(start)]) {
            groups.push_back({start, i - 1});
            start = i;
        }
    }
    // consecutiveness invariant: equal signatures must not reappear
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t b = a + 1; b < groups.size(); ++b)
            if (sig[static_cast<std::size_t>(groups[a].first)] ==
                sig[static_cast<std::size_t>(groups[b].first)])
                throw InternalError("stability signatures are not consecutive");
    return groups;
}

void spot_check_persistence(const Pseudoexpectation& pe, const AssignLp& layout,
                            const Instance& inst, const JobClassification& cls,
                            const StabilityState& state, int trials, std::uint64_t seed) {
    std::vector<int> fractional;
    for (int i = 0; i < layout.m; ++i)
        for (int q = 1; q <= cls.s; ++q)
            for (const std::string& id : cls.long_classes[static_cast<std::size_t>(q - 1)]) {
                int v = layout.var(i, inst.job_index(id));
                Rat val = pe.value({v});
                if (val > 0 && val < 1) fractional.push_back(v);
            }
    if (fractional.empty()) return;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        int v = fractional[rng() % fractional.size()];
        Pseudoexpectation conditioned = pe.condition({v});
        for (int i = 0; i < layout.m; ++i)
            for (int q = 1; q <= cls.s; ++q) {
                Rat mass = class_mass(conditioned, layout, inst, cls, i, q);
                if (mass != state.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(q - 1)].mass)
                    throw InternalError("pinned class mass drifted under conditioning");
            }
    }
}

// proof-chain assertions shared by both rounding paths
void assert_round_invariants(const Schedule& longs, const Schedule& full,
                             const Instance& inst, const JobClassification& cls,
                             const StabilityState& state, long T, const Rat& epsilon) {
    const Rat one_plus_eps_T = (1 + epsilon) * T;
    // rounded per-class load stays within T
    for (int i = 0; i < inst.machines; ++i) {
        Rat rounded = 0;
        for (int q = 1; q <= cls.s; ++q)
            rounded += Rat(state.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(q - 1)].a) *
                       cls.class_lower(q);
        if (rounded > T)
            throw InternalError("rounded class load exceeds T on machine " +
                                std::to_string(i + 1));
    }
    // long-job load within (1+eps)T
    std::vector<long> long_loads = longs.loads(inst);
    for (long l : long_loads)
        if (Rat(l) > one_plus_eps_T)
            throw InternalError("long-job load exceeds (1+eps)T");
    // final makespan within (1+eps)T
    if (Rat(full.makespan(inst)) > one_plus_eps_T)
        throw InternalError("final makespan exceeds (1+eps)T");
    if (!full.covers_all_jobs(inst)) throw InternalError("schedule misses a job");
    // greedy dichotomy: makespan <= max(long makespan, avg load + max short)
    long max_short = 0;
    for (const std::string& id : cls.short_jobs)
        max_short = std::max(max_short,
                             inst.jobs[static_cast<std::size_t>(inst.job_index(id))].size);
    Rat avg = Rat(inst.total_size()) / inst.machines;
    Rat bound = std::max(Rat(longs.makespan(inst)), Rat(avg + max_short));
    if (Rat(full.makespan(inst)) > bound)
        throw InternalError("greedy exceeded the list-scheduling bound");
}

} // namespace

RoundResult ptas_round(const Instance& inst, long T, const Rat& epsilon, int degree,
                       const RoundOptions& opts) {
    RoundResult res;
    if (T < inst.max_size()) {
        res.status = RoundStatus::LIFT_INFEASIBLE;
        res.trace = "T below the largest job size\n";
        return res;
    }
    AssignSymLp sym = build_assign_sym(inst, T, epsilon);
    const JobClassification& cls = sym.classification;
    const AssignLp& layout = sym.base;

    std::optional<PreparedPe> prep = prepare_pe(sym.lp(), degree, opts, res.trace);
    if (!prep) {
        res.status = RoundStatus::LIFT_INFEASIBLE;
        return res;
    }
    Pseudoexpectation pe = std::move(prep->pe);

    int spent = 0;
    std::ostringstream trace;
    try {
        for (int q = 0; q < cls.s; ++q) {
            auto groups = signature_groups(pe, layout, inst, cls, q);
            trace << "stage " << (q + 1) << ": " << groups.size() << " group(s)\n";
            for (auto [lo, hi] : groups) {
                StagedContext ctx{layout, inst, cls, &spent, &trace};
                pe = stabilize_impl(std::move(pe), lo, hi, q, ctx);
            }
        }
    } catch (const DegreeExhausted& e) {
        res.status = RoundStatus::DEGREE_EXHAUSTED;
        res.trace += trace.str();
        res.trace += std::string("degree exhausted: ") + e.what() + "\n";
        res.degree_consumed = spent;
        return res;
    }

    StabilityState state = stability_scan(pe, layout, inst, cls);
    if (!state.all_stable())
        throw InternalError("stabilization finished with an unstable class mass");
    spot_check_persistence(pe, layout, inst, cls, state, opts.spot_checks, opts.seed);

    Schedule longs = round_long(state, inst, cls);
    Schedule full = greedy_short(longs, cls.short_jobs, inst);
    assert_round_invariants(longs, full, inst, cls, state, T, epsilon);

    res.status = RoundStatus::SUCCESS;
    res.schedule = std::move(full);
    res.degree_consumed = spent;
    res.trace += trace.str();
    res.trace += "conditioning spent " + std::to_string(spent) + " degree\n";
    return res;
}

namespace {

// recursion of the ordering-constraint path: stabilize class q+1 inside the
// group, make each resulting subgroup focused by conditioning on the
// largest-index positive-mass job per class, then recurse independently
Pseudoexpectation focus_recursion(Pseudoexpectation pe, int i_lo, int i_hi, int q,
                                  const StagedContext& ctx) {
    if (q >= ctx.cls.s) return pe;
    pe = stabilize_impl(std::move(pe), i_lo, i_hi, q, ctx);

    // subgroups by the freshly pinned class-(q+1) mass
    std::vector<std::pair<int, int>> subgroups;
    int start = i_lo;
    Rat current = class_mass(pe, ctx.layout, ctx.inst, ctx.cls, i_lo, q + 1);
    for (int i = i_lo + 1; i <= i_hi + 1; ++i) {
        Rat mass = i <= i_hi ? class_mass(pe, ctx.layout, ctx.inst, ctx.cls, i, q + 1)
                             : Rat(-1);
        if (i > i_hi || mass != current) {
            subgroups.push_back({start, i - 1});
            if (i <= i_hi) {
                start = i;
                current = mass;
            }
        }
    }

    for (auto [lo, hi] : subgroups) {
        for (int qt = 1; qt <= ctx.cls.s; ++qt) {
            const auto& ids = ctx.cls.long_classes[static_cast<std::size_t>(qt - 1)];
            // largest-index job of the class with positive mass in the subgroup,
            // conditioned on the largest-index machine carrying it
            for (int t = static_cast<int>(ids.size()) - 1; t >= 0; --t) {
                int j = ctx.inst.job_index(ids[static_cast<std::size_t>(t)]);
                int host = -1;
                for (int i = hi; i >= lo; --i) {
                    if (pe.value({ctx.layout.var(i, j)}) > 0) {
                        host = i;
                        break;
                    }
                }
                if (host < 0) continue;
                pe = condition_sparingly(pe, {ctx.layout.var(host, j)}, ctx.degree_spent);
                ctx.log("focus: pinned job " + ids[static_cast<std::size_t>(t)] +
                        " to machine " + std::to_string(host + 1));
                break;
            }
        }
    }
    for (auto [lo, hi] : subgroups) pe = focus_recursion(std::move(pe), lo, hi, q + 1, ctx);
    return pe;
}

// prefix-count assignment: machine i takes jobs j_{q, c_{i-1,q}+1} .. j_{q, c_iq}
Schedule assign_by_prefix(const StabilityState& state, const Instance& inst,
                          const JobClassification& cls) {
    return round_long(state, inst, cls); // ascending ids per machine order
}

} // namespace

RoundResult ptas_round_order(const Instance& inst, long T, const Rat& epsilon, int degree,
                             const RoundOptions& opts) {
    RoundResult res;
    if (T < inst.max_size()) {
        res.status = RoundStatus::LIFT_INFEASIBLE;
        res.trace = "T below the largest job size\n";
        return res;
    }
    AssignSymLp order = build_order(inst, T, epsilon);
    const JobClassification& cls = order.classification;
    const AssignLp& layout = order.base;

    std::optional<PreparedPe> prep = prepare_pe(order.lp(), degree, opts, res.trace);
    if (!prep) {
        res.status = RoundStatus::LIFT_INFEASIBLE;
        return res;
    }
    Pseudoexpectation pe = std::move(prep->pe);

    int spent = 0;
    std::ostringstream trace;
    try {
        StagedContext ctx{layout, inst, cls, &spent, &trace};
        pe = focus_recursion(std::move(pe), 0, layout.m - 1, 0, ctx);
    } catch (const DegreeExhausted& e) {
        res.status = RoundStatus::DEGREE_EXHAUSTED;
        res.trace += trace.str();
        res.trace += std::string("degree exhausted: ") + e.what() + "\n";
        res.degree_consumed = spent;
        return res;
    }

    StabilityState state = stability_scan(pe, layout, inst, cls);
    if (!state.all_stable())
        throw InternalError("focused recursion finished with an unstable class mass");

    Schedule longs = assign_by_prefix(state, inst, cls);
    Schedule full = greedy_short(longs, cls.short_jobs, inst);
    assert_round_invariants(longs, full, inst, cls, state, T, epsilon);

    // the output must satisfy every ordering row exactly
    std::vector<Rat> point = full.as_point(inst, layout);
    for (const LinRow& row : order.lp().rows)
        if (row.name.rfind("order[", 0) == 0 && !row.satisfied_by(point))
            throw InternalError("output violates ordering row " + row.name);

    res.status = RoundStatus::SUCCESS;
    res.schedule = std::move(full);
    res.degree_consumed = spent;
    res.trace += trace.str();
    res.trace += "conditioning spent " + std::to_string(spent) + " degree\n";
    return res;
}

Formulation formulation_from_string(const std::string& s) {
    if (s == "assign") return Formulation::ASSIGN;
    if (s == "clp") return Formulation::CLP;
    if (s == "assign-sym") return Formulation::ASSIGN_SYM;
    if (s == "order") return Formulation::ORDER;
    throw Error("unknown formulation '" + s + "'");
}

std::string formulation_to_string(Formulation f) {
    switch (f) {
        case Formulation::ASSIGN: return "assign";
        case Formulation::CLP: return "clp";
        case Formulation::ASSIGN_SYM: return "assign-sym";
        case Formulation::ORDER: return "order";
    }
    return "?";
}

namespace {

bool lift_feasible_at(const Instance& inst, long T, const Rat& epsilon, int degree,
                      Formulation f, const RoundOptions& opts, std::size_t config_cap) {
    const RationalLP* lp = nullptr;
    AssignLp assign;
    ClpLp clp;
    AssignSymLp sym;
    switch (f) {
        case Formulation::ASSIGN:
            assign = build_assign(inst, T);
            lp = &assign.lp;
            break;
        case Formulation::CLP:
            clp = build_clp(inst, T, config_cap);
            lp = &clp.lp;
            break;
        case Formulation::ASSIGN_SYM:
            if (T < inst.max_size()) return false;
            sym = build_assign_sym(inst, T, epsilon);
            lp = &sym.lp();
            break;
        case Formulation::ORDER:
            if (T < inst.max_size()) return false;
            sym = build_order(inst, T, epsilon);
            lp = &sym.lp();
            break;
    }
    if (degree >= static_cast<int>(lp->num_vars())) {
        double bits = static_cast<double>(lp->num_vars());
        if (bits <= 22)
            return exact_hull_pe(*lp, opts.hull_budget).has_value();
    }
    LiftedLP lift = build_sa_lift(*lp, std::max(degree, 1), opts.lift_budget);
    return lp_feasible(lift.lp).feasible();
}

} // namespace

GapResult gap_search(const Instance& inst, const Rat& epsilon, int degree,
                     Formulation formulation, const RoundOptions& opts,
                     unsigned long brute_budget, std::size_t config_cap) {
    inst.validate();
    GapResult res;
    long lo = std::max(inst.max_size(),
                       static_cast<long>(rat_ceil(Rat(inst.total_size()) / inst.machines).get_si()));
    long hi = inst.total_size();

    auto probe = [&](long T) {
        ++res.probes;
        return lift_feasible_at(inst, T, epsilon, degree, formulation, opts, config_cap);
    };

    if (probe(lo)) {
        res.t_star = lo;
    } else {
        if (!probe(hi))
            throw InternalError("lift infeasible even at T = total load");
        long bad = lo, good = hi;
        while (good - bad > 1) {
            long mid = bad + (good - bad) / 2;
            if (probe(mid))
                good = mid;
            else
                bad = mid;
        }
        res.t_star = good;
    }

    try {
        BruteForceResult bf = brute_force_opt(inst, brute_budget);
        res.opt = bf.opt;
        res.ratio = Rat(bf.opt) / res.t_star;
    } catch (const BudgetExceeded&) {
        // opt stays unknown; callers may certify a lower bound separately
    }
    return res;
}

} // namespace liftsched
