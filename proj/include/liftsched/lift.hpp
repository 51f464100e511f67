#ifndef LIFTSCHED_LIFT_HPP
#define LIFTSCHED_LIFT_HPP

#include "liftsched/linalg.hpp"
#include "liftsched/lp.hpp"
#include "liftsched/poly.hpp"
#include "liftsched/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liftsched {

// Degree-l Sherali-Adams lift of a binary-intended LP. One lift variable w_S
// per subset S of the ground set with |S| <= l (w_empty pinned to 1 by an
// equality row); for every base row g >= 0 (or h = 0) and every disjoint
// (S,R), the expansion of phi_{S,R} * g into square-free monomials becomes a
// row whenever its degree stays within l, plus the box rows E(phi_{S,R}) >= 0.
struct LiftedLP {
    RationalLP lp;
    int degree = 0;
    std::size_t ground_size = 0;
    std::vector<Mono> subsets;      // index -> subset, graded lex order
    std::map<Mono, int> subset_index;

    int var_of(const Mono& m) const;
};

struct LiftBudget {
    std::size_t max_vars = 200000;
    std::size_t max_rows = 2000000;
};

LiftedLP build_sa_lift(const RationalLP& base, int ell, const LiftBudget& budget = {});

// Linear functional on the square-free quotient ring, defined on monomials
// x_S with |S| <= degree; absent entries are zero. E(1) = 1 always.
class Pseudoexpectation {
public:
    Pseudoexpectation() = default;
    Pseudoexpectation(std::size_t ground_size, int degree, std::map<Mono, Rat> values);

    std::size_t ground_size() const { return ground_; }
    int degree() const { return degree_; }
    const std::map<Mono, Rat>& values() const { return values_; }

    // E(x_S); throws DegreeExceeded for |S| > degree
    Rat value(const Mono& m) const;
    Rat eval(const SquareFreePoly& poly) const;

    // E_A(x_I) = E(x_I x_A) / E(x_A). Degree drops by |A| except at full
    // degree, where conditioning keeps every moment available.
    Pseudoexpectation condition(const Mono& A) const;

    std::string dump() const; // canonical (subset, rational) listing

private:
    std::size_t ground_ = 0;
    int degree_ = 0;
    std::map<Mono, Rat> values_;
};

Pseudoexpectation pe_parse(const std::string& text);

// w_S values of a feasible lift point; throws InfeasiblePoint otherwise.
Pseudoexpectation pe_from_solution(const LiftedLP& lift, const std::vector<Rat>& point);

struct Violation {
    std::string row;    // constraint name, or "box"/"normalization"
    Mono S, R;          // multiplier pair
    Rat value;          // offending evaluated amount
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

// SA.1-SA.4 at degree l against the base program.
VerifyReport verify_sa_pe(const Pseudoexpectation& pe, const RationalLP& base, int ell);

// SoS.1-SoS.4 at degree l: exact PSD of the moment matrix over monomials of
// degree <= l/2 and of the localizing matrices of the inequalities;
// equalities are checked with monomial multipliers.
VerifyReport verify_sos_pe(const Pseudoexpectation& pe, const RationalLP& base, int ell,
                           std::size_t max_monomials = 5000);

// All 0/1 points of the base program (2^|E| scan, guarded); the uniform
// average of their moment vectors when nonempty. A degree-|E| lift is exact,
// so this is a canonical full-degree pseudoexpectation.
std::vector<std::vector<Rat>> enumerate_integral_points(const RationalLP& base,
                                                        unsigned long budget = 1u << 22);
std::optional<Pseudoexpectation> exact_hull_pe(const RationalLP& base,
                                               unsigned long budget = 1u << 22);

// moment vector of a single integral point, up to `degree`
Pseudoexpectation pe_of_point(const std::vector<Rat>& point, int degree);

} // namespace liftsched

#endif
