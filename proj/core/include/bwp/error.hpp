#pragma once

#include <stdexcept>
#include <string>

namespace bwp {

/// Argument outside the domain where a formula is defined.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A series, quadrature or root search did not reach its tolerance within budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// No candidate satisfies a constraint (e.g. every grid point exceeds the delay cap).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bwp
