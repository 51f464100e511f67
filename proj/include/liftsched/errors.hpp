#ifndef LIFTSCHED_ERRORS_HPP
#define LIFTSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liftsched {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define LIFTSCHED_DEFINE_ERROR(NAME)                        \
    struct NAME : Error {                                   \
        using Error::Error;                                 \
        NAME() : Error(#NAME) {}                            \
    }

LIFTSCHED_DEFINE_ERROR(NonIntegralEpsilonInverse);
LIFTSCHED_DEFINE_ERROR(ConfigurationExplosion);
LIFTSCHED_DEFINE_ERROR(DegreeTooLarge);
LIFTSCHED_DEFINE_ERROR(BudgetExceeded);
LIFTSCHED_DEFINE_ERROR(LiftExplosion);
LIFTSCHED_DEFINE_ERROR(InfeasiblePoint);
LIFTSCHED_DEFINE_ERROR(DegreeExceeded);
LIFTSCHED_DEFINE_ERROR(ZeroMass);
LIFTSCHED_DEFINE_ERROR(DegreeExhausted);
LIFTSCHED_DEFINE_ERROR(MatrixTooLarge);
LIFTSCHED_DEFINE_ERROR(NonIntegralPoint);
LIFTSCHED_DEFINE_ERROR(InfeasibleInput);
LIFTSCHED_DEFINE_ERROR(InconsistentCounts);
LIFTSCHED_DEFINE_ERROR(SearchFailed);
LIFTSCHED_DEFINE_ERROR(Infeasible);
LIFTSCHED_DEFINE_ERROR(Unbounded);
LIFTSCHED_DEFINE_ERROR(InternalError);

#undef LIFTSCHED_DEFINE_ERROR

} // namespace liftsched

#endif
