#pragma once

#include <stdexcept>
#include <string>

namespace nopath {

// Every domain failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define NOPATH_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

NOPATH_DEFINE_ERROR(InvalidChain);
NOPATH_DEFINE_ERROR(NotConnectedAtScale);
NOPATH_DEFINE_ERROR(ChainConditionViolated);
NOPATH_DEFINE_ERROR(GeometryFailure);
NOPATH_DEFINE_ERROR(ContainmentFailure);
NOPATH_DEFINE_ERROR(DegenerateWindow);
NOPATH_DEFINE_ERROR(UnlabeledCell);
NOPATH_DEFINE_ERROR(ConeViolation);
NOPATH_DEFINE_ERROR(ComponentMergeFailure);
NOPATH_DEFINE_ERROR(SignViolation);
NOPATH_DEFINE_ERROR(EmptyInput);
NOPATH_DEFINE_ERROR(SeedOnObstacle);
NOPATH_DEFINE_ERROR(AuditFailure);
NOPATH_DEFINE_ERROR(InvalidArgument);

#undef NOPATH_DEFINE_ERROR

}  // namespace nopath
