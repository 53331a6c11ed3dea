#ifndef CHABAUTY_ERRORS_HPP
#define CHABAUTY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chabauty
{

/// A root find or series evaluation failed to reach its tolerance.
class NumericFailure : public std::runtime_error
{
public:
    NumericFailure(const std::string &what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual)
    {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Input lies outside the domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

} // namespace chabauty

#endif
