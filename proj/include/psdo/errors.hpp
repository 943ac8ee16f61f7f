#ifndef PSDO_ERRORS_HPP
#define PSDO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psdo
{

// Caller violated a precondition (mismatched registries, bad parameters).
class usage_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A requested coefficient lies below the accurate range of a truncated symbol.
class accuracy_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency condition failed; indicates a bug, not bad input.
class structural_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// Cohomology-class extraction met a mode monomial it does not account for.
class extraction_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace psdo

#endif
