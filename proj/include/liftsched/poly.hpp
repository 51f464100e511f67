#ifndef LIFTSCHED_POLY_HPP
#define LIFTSCHED_POLY_HPP

#include "liftsched/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace liftsched {

// A square-free monomial: strictly increasing variable indices of a ground
// set E. The empty vector is the constant monomial 1.
using Mono = std::vector<int>;

Mono mono_make(std::vector<int> vars);       // sorts, collapses repeats
Mono mono_union(const Mono& a, const Mono& b);
bool mono_contains(const Mono& outer, const Mono& inner);
std::string mono_str(const Mono& m);

// Polynomial over the Boolean quotient ring R[x]/I_E: every exponent is
// collapsed to one, so terms are keyed by variable subsets.
class SquareFreePoly {
public:
    SquareFreePoly() = default;
    explicit SquareFreePoly(const Rat& constant);
    static SquareFreePoly monomial(Mono m, const Rat& coeff = 1);

    void add_term(const Mono& m, const Rat& coeff); // accumulates, drops zeros
    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t degree() const;

    SquareFreePoly& operator+=(const SquareFreePoly& other);
    SquareFreePoly& operator-=(const SquareFreePoly& other);
    SquareFreePoly operator+(const SquareFreePoly& other) const;
    SquareFreePoly operator-(const SquareFreePoly& other) const;
    SquareFreePoly operator*(const SquareFreePoly& other) const;
    SquareFreePoly scaled(const Rat& c) const;
    bool operator==(const SquareFreePoly& other) const = default;

    // evaluation at a 0/1 point (indexed by variable)
    Rat eval(const std::vector<char>& point) const;

    std::string str() const;

private:
    std::map<Mono, Rat> terms_;
};

// One term of a polynomial before square-free reduction: the variable list
// may repeat (x_e^2 appears as {e,e}).
struct PowerTerm {
    Rat coeff;
    std::vector<int> vars;
};

// Collapses every exponent >= 1 to 1; the result agrees on {0,1}^E.
SquareFreePoly reduce_square_free(const std::vector<PowerTerm>& terms);

// Ground set [m] x C of configuration variables, indexed row-major.
struct ConfigVarSpace {
    int machines = 0;
    int configs = 0;

    int size() const { return machines * configs; }
    int var(int machine, int config) const { return machine * configs + config; }
    int machine_of(int v) const { return v / configs; }
    int config_of(int v) const { return v % configs; }
};

// Deletes every monomial in which some machine carries two or more
// configuration variables; such monomials vanish modulo the scheduling ideal.
SquareFreePoly kill_non_partial(const SquareFreePoly& poly, const ConfigVarSpace& space);

// A partial-schedule monomial y_S as (machine, config) pairs.
Mono schedule_mono(const std::vector<std::pair<int, int>>& edges, const ConfigVarSpace& space);

// Multiplies y_S by prod_{h in H} sum_C y_hC for H the |ell|-|S| smallest-index
// machines not incident to S; the result has pure degree ell and is congruent
// to y_S modulo the scheduling ideal.
SquareFreePoly expand_to_degree(const std::vector<std::pair<int, int>>& schedule,
                                std::size_t ell, const ConfigVarSpace& space);

// Decides congruence modulo the scheduling ideal by evaluating both sides on
// every assignment [m] -> C (the variety is exactly these indicator vectors).
bool equal_mod_sched(const SquareFreePoly& f, const SquareFreePoly& g,
                     const ConfigVarSpace& space, unsigned long budget = 1000000);

// Machine permutations act by y_{iC} -> y_{sigma(i)C}; x_{ij} -> x_{sigma(i)j}
// works the same way through a generic per-variable relabeling.
using MachinePermutation = std::vector<int>; // sigma[i] = image of machine i

SquareFreePoly apply_machine_permutation(const SquareFreePoly& f,
                                         const MachinePermutation& sigma,
                                         const ConfigVarSpace& space);

// (1/|perms|) * sum_sigma sigma(f)
SquareFreePoly symmetrize(const SquareFreePoly& f,
                          const std::vector<MachinePermutation>& perms,
                          const ConfigVarSpace& space);

// All |subset|! permutations of `machines` (identity elsewhere on [m]).
std::vector<MachinePermutation> all_permutations_of(const std::vector<int>& machines, int m);

} // namespace liftsched

#endif
