#ifndef LIFTSCHED_FORMULATIONS_HPP
#define LIFTSCHED_FORMULATIONS_HPP

#include "liftsched/classification.hpp"
#include "liftsched/configuration.hpp"
#include "liftsched/instance.hpp"
#include "liftsched/lp.hpp"
#include "liftsched/rational.hpp"

#include <string>
#include <vector>

namespace liftsched {

// assign(T): x_ij in [0,1], one equality per job, one load row per machine.
// Variable x_ij has index i*n + j for machine i and job position j.
struct AssignLp {
    RationalLP lp;
    int m = 0;
    int n = 0;
    int var(int machine, int job) const { return machine * n + job; }
};

AssignLp build_assign(const Instance& inst, long T);

// clp(T): y_iC in [0,1]; per-machine configuration equality and per-size
// counting equality. Variable y_iC has index i*|C| + c.
struct ClpLp {
    RationalLP lp;
    int m = 0;
    std::vector<Configuration> configs;
    int var(int machine, int config) const {
        return machine * static_cast<int>(configs.size()) + config;
    }
};

ClpLp build_clp(const Instance& inst, long T, std::size_t cap = 200000);

// Class-level configuration: per-class slot counts (index q-1 for class q).
using ClassConfig = std::vector<long>;

enum class LexOrder { LESS, EQUAL, GREATER };

LexOrder lex_compare(const ClassConfig& a, const ClassConfig& b);

// Weights B^{s-q}; B = 1 + 2 s max_q |J_q| makes L_B strictly monotone
// with respect to the lexicographic order.
struct LexWeights {
    Int B;
    int s = 0;
    Int weight(int q) const; // B^{s-q}, q in [1..s]
};

LexWeights lex_weights(const JobClassification& cls);

Int lex_value(const ClassConfig& c, const LexWeights& w);

// assign(B,T): assign(T) plus the m-1 symmetry breaking rows
//   sum_q B^{s-q} sum_{j in J_q} (x_ij - x_{(i+1)j}) >= 0.
struct AssignSymLp {
    AssignLp base;
    JobClassification classification;
    LexWeights weights;
    const RationalLP& lp() const { return base.lp; }
};

AssignSymLp build_assign_sym(const Instance& inst, long T, const Rat& epsilon);

// order(B,T): assign(B,T) plus prefix-dominance rows
//   sum_{i<=h} x_{i j_{q,l}} >= sum_{i<=h} x_{i j_{q,l+1}}
// for each class q, consecutive pair (ascending job id), and h in [m].
AssignSymLp build_order(const Instance& inst, long T, const Rat& epsilon);

// per-class job counts of machine i in an integral point
ClassConfig conf_of_machine(const std::vector<Rat>& point, int machine,
                            const AssignLp& layout, const Instance& inst,
                            const JobClassification& cls);

bool check_lex_sorted(const std::vector<Rat>& point, const AssignLp& layout,
                      const Instance& inst, const JobClassification& cls);

// permutes machines so configurations are lexicographically non-increasing
std::vector<Rat> lex_sort_solution(const std::vector<Rat>& point, const AssignLp& layout,
                                   const Instance& inst, const JobClassification& cls);

// x'_ij = (1/n_{p_j}) sum_C m(p_j, C) y_iC ; feasible in assign(T) whenever y
// is feasible in clp(T)
std::vector<Rat> project_clp_to_assign(const std::vector<Rat>& y, const ClpLp& clp,
                                       const Instance& inst, const AssignLp& assign);

} // namespace liftsched

#endif
