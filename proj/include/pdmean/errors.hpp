#ifndef PDMEAN_ERRORS_HPP
#define PDMEAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdmean {

// Thrown when a fractional-power or logarithmic integral does not converge,
// e.g. an Abel transform of exponent <= -1 or an evaluation point sitting
// exactly on an atom.
class NonIntegrable : public std::domain_error {
public:
    explicit NonIntegrable(const std::string& what) : std::domain_error(what) {}
};

// Thrown when both transform parts vanish and the phase is undefined.
class DegenerateKernel : public std::domain_error {
public:
    explicit DegenerateKernel(const std::string& what) : std::domain_error(what) {}
};

// Requested Stieltjes transform order is not served for the regime.
class UnsupportedOrder : public std::invalid_argument {
public:
    explicit UnsupportedOrder(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter/measure combination has no implemented analytic route.
class UnsupportedCombination : public std::invalid_argument {
public:
    explicit UnsupportedCombination(const std::string& what) : std::invalid_argument(what) {}
};

// A Dirichlet-regime atom carries too much mass for the integral formulas.
class JumpTooLarge : public std::domain_error {
public:
    explicit JumpTooLarge(const std::string& what) : std::domain_error(what) {}
};

// Evaluation point outside the admissible set of the density formula.
class OffThetaSet : public std::domain_error {
public:
    explicit OffThetaSet(const std::string& what) : std::domain_error(what) {}
};

// Coupling-from-the-past failed to coalesce within the depth budget.
class CoalescenceFailure : public std::runtime_error {
public:
    explicit CoalescenceFailure(const std::string& what) : std::runtime_error(what) {}
};

// Malformed measure file or inline measure spec.
class MeasureParseError : public std::invalid_argument {
public:
    explicit MeasureParseError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace pdmean

#endif
