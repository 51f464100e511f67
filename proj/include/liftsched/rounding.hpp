#ifndef LIFTSCHED_ROUNDING_HPP
#define LIFTSCHED_ROUNDING_HPP

#include "liftsched/formulations.hpp"
#include "liftsched/instance.hpp"
#include "liftsched/lift.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liftsched {

struct Schedule {
    std::map<std::string, int> assignment; // job id -> machine (0-based)

    std::vector<long> loads(const Instance& inst) const;
    long makespan(const Instance& inst) const;
    bool covers_all_jobs(const Instance& inst) const;
    std::vector<Rat> as_point(const Instance& inst, const AssignLp& layout) const;
    std::string report(const Instance& inst) const;
};

// exact minimum makespan by exhaustive assignment with pruning
struct BruteForceResult {
    long opt = 0;
    Schedule schedule;
};
BruteForceResult brute_force_opt(const Instance& inst, unsigned long budget = 200000000);

// list scheduling of the short jobs onto the current minimum-load machine
Schedule greedy_short(Schedule partial, const std::vector<std::string>& shorts,
                      const Instance& inst);

// Per-(machine, class) stability snapshot: STABLE(a) records an integral
// class mass pinned by the stabilization procedure.
struct StabilityState {
    struct Cell {
        bool stable = false;
        long a = 0;
        Rat mass;
    };
    std::vector<std::vector<Cell>> cells; // [machine][class-1]
    bool all_stable() const;
};

StabilityState stability_scan(const Pseudoexpectation& pe, const AssignLp& layout,
                              const Instance& inst, const JobClassification& cls);

// Pins class q+1 on the consecutive machine range [i_lo, i_hi] by repeated
// conditioning: for set sizes 1/eps, 1/eps - 1, ..., 1 it conditions on the
// rightmost machine carrying a positive-mass set of that size and on the
// left boundary of the still-unpinned prefix; the symmetry breaking rows pin
// every machine in between. Throws DegreeExhausted when the budget runs out
// or a pin fails to materialize.
Pseudoexpectation stabilize(Pseudoexpectation pe, int i_lo, int i_hi, int q,
                            const AssignLp& layout, const Instance& inst,
                            const JobClassification& cls, std::string* trace = nullptr);

// assigns exactly b_iq jobs of class q to machine i, ascending job ids first
Schedule round_long(const StabilityState& state, const Instance& inst,
                    const JobClassification& cls);

enum class RoundStatus { SUCCESS, LIFT_INFEASIBLE, DEGREE_EXHAUSTED };

struct RoundResult {
    RoundStatus status = RoundStatus::LIFT_INFEASIBLE;
    std::optional<Schedule> schedule;
    std::string trace;
    int degree_consumed = 0;

    bool ok() const { return status == RoundStatus::SUCCESS; }
};

struct RoundOptions {
    unsigned long hull_budget = 1u << 22;
    LiftBudget lift_budget;
    int spot_checks = 10;
    std::uint64_t seed = 1;
};

// Theorem-11 style rounding over assign(B,T): lift, staged stabilization,
// integral assignment of the long jobs, greedy shorts. On success the
// makespan is at most (1+eps)T and every inequality of the proof chain is
// asserted along the way.
RoundResult ptas_round(const Instance& inst, long T, const Rat& epsilon, int degree,
                       const RoundOptions& opts = {});

// Ordering-constraint variant over order(B,T): stabilize one class per
// recursion level, condition on the largest-index positive-mass job per class
// on each group, recurse per focused group; the output follows the fixed
// within-class job order.
RoundResult ptas_round_order(const Instance& inst, long T, const Rat& epsilon, int degree,
                             const RoundOptions& opts = {});

enum class Formulation { ASSIGN, CLP, ASSIGN_SYM, ORDER };

Formulation formulation_from_string(const std::string& s);
std::string formulation_to_string(Formulation f);

struct GapResult {
    long t_star = 0;                // smallest lift-feasible T
    std::optional<long> opt;        // exact optimum when brute force fits the budget
    std::optional<Rat> ratio;       // opt / t_star
    int probes = 0;
};

// binary search over T in [max(max p_j, ceil(sum p / m)), sum p]
GapResult gap_search(const Instance& inst, const Rat& epsilon, int degree,
                     Formulation formulation, const RoundOptions& opts = {},
                     unsigned long brute_budget = 200000000,
                     std::size_t config_cap = 200000);

} // namespace liftsched

#endif
