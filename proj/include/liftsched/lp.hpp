#ifndef LIFTSCHED_LP_HPP
#define LIFTSCHED_LP_HPP

#include "liftsched/rational.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liftsched {

enum class Rel { EQ, LE, GE };

struct LinRow {
    std::vector<std::pair<int, Rat>> terms; // (variable index, coefficient)
    Rel rel = Rel::EQ;
    Rat rhs;
    std::string name;

    Rat lhs_value(const std::vector<Rat>& point) const;
    bool satisfied_by(const std::vector<Rat>& point) const;
};

// Exact-rational linear program. Variables have a finite lower bound
// (default 0) and an optional upper bound. Immutable once built by the
// formulation functions; rows keep exact coefficients.
struct RationalLP {
    std::vector<std::string> var_names;
    std::vector<Rat> lower;
    std::vector<std::optional<Rat>> upper;
    std::vector<LinRow> rows;

    int add_var(const std::string& name, const Rat& lo = 0,
                std::optional<Rat> up = std::nullopt);
    void add_row(LinRow row);
    int var_index(const std::string& name) const;
    std::size_t num_vars() const { return var_names.size(); }

    bool point_feasible(const std::vector<Rat>& point) const;
    // human-readable listing with exact rationals, for golden-file tests
    void dump(std::ostream& os) const;
    std::string dump_str() const;
};

struct FarkasCertificate {
    // multipliers over the standardized rows (Ax = b, x >= 0 after slack
    // introduction); satisfies y^T A <= 0 componentwise and y^T b > 0
    std::vector<Rat> row_mults;
    std::string description;
};

struct LpOutcome {
    enum class Status { FEASIBLE, INFEASIBLE } status = Status::INFEASIBLE;
    std::vector<Rat> point;               // over the original variables
    std::optional<FarkasCertificate> farkas;

    bool feasible() const { return status == Status::FEASIBLE; }
};

// Exact feasibility via phase-1 primal simplex. The returned point or Farkas
// combination is re-verified by substitution before returning; a failed
// certification throws InternalError.
LpOutcome lp_feasible(const RationalLP& lp);

struct OptimizeResult {
    Rat value;
    std::vector<Rat> point;
};

enum class Sense { MIN, MAX };

// Exact optimum. Throws Infeasible / Unbounded.
OptimizeResult lp_optimize(const RationalLP& lp, const std::map<int, Rat>& objective,
                           Sense sense);

} // namespace liftsched

#endif
