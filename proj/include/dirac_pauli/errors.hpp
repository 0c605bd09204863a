#ifndef DIRAC_PAULI_ERRORS_HPP
#define DIRAC_PAULI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dirac_pauli {

/// Argument outside the mathematical domain of an operation (r <= 0, x <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested functionality is outside what an operation supports.
class Unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// No real k turns the radicand of pi(r) into a perfect square.
class NoSquareCompletion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Neither root sign of pi(r) gives tau'(r) < 0.
class NoAdmissibleBranch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 1 + c3sq <= 0: the exponent L = sqrt(1 + c3sq) would be complex.
class ComplexExponentError : public std::runtime_error {
public:
    explicit ComplexExponentError(double one_plus_c3sq)
        : std::runtime_error("1 + c3sq = " + std::to_string(one_plus_c3sq) +
                             " <= 0: exponent L is complex"),
          value_(one_plus_c3sq) {}

    [[nodiscard]] double value() const noexcept { return value_; }

private:
    double value_;
};

/// Decay rate c2 <= 0: the radial function is not square integrable.
class NonNormalizableError : public std::runtime_error {
public:
    explicit NonNormalizableError(double c2)
        : std::runtime_error("decay rate c2 = " + std::to_string(c2) +
                             " <= 0: state is not normalizable"),
          c2_(c2) {}

    [[nodiscard]] double decay_rate() const noexcept { return c2_; }

private:
    double c2_;
};

/// Shooting bracket does not straddle a sign change at r_max.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shooting converged onto a state with the wrong number of nodes.
class WrongStateError : public std::runtime_error {
public:
    WrongStateError(int expected, int found)
        : std::runtime_error("shooting found " + std::to_string(found) +
                             " nodes, expected " + std::to_string(expected)),
          expected_(expected), found_(found) {}

    [[nodiscard]] int expected() const noexcept { return expected_; }
    [[nodiscard]] int found() const noexcept { return found_; }

private:
    int expected_;
    int found_;
};

}  // namespace dirac_pauli

#endif  // DIRAC_PAULI_ERRORS_HPP
