#ifndef DIRAC_PAULI_SPECIAL_FUNCTIONS_HPP
#define DIRAC_PAULI_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "dirac_pauli/errors.hpp"

namespace dirac_pauli {

/// ln Gamma(x) for x > 0.
///
/// Arguments below 16 are shifted upward with Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1));
/// the Stirling series with eight Bernoulli corrections is then accurate to
/// roughly one ulp of the result.
template <typename Scalar>
Scalar log_gamma(Scalar x) {
    using std::log;
    if (!(x > Scalar(0)))
        throw DomainError("log_gamma: argument must be positive");

    constexpr Scalar shift_threshold = 16;
    Scalar log_product = 0;
    if (x < shift_threshold) {
        Scalar product = 1;
        while (x < shift_threshold) {
            product *= x;
            x += Scalar(1);
        }
        log_product = log(product);
    }

    // B_{2k} / (2k (2k-1)) for k = 1..8
    static constexpr std::array<double, 8> stirling = {
        1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,     -1.0 / 1680.0,
        1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,      -3617.0 / 122400.0};
    const Scalar inv = Scalar(1) / x;
    const Scalar inv2 = inv * inv;
    Scalar series = 0;
    for (auto it = stirling.rbegin(); it != stirling.rend(); ++it)
        series = series * inv2 + Scalar(*it);
    series *= inv;

    const Scalar half_log_two_pi = Scalar(0.5) * log(Scalar(2) * std::numbers::pi_v<Scalar>);
    return (x - Scalar(0.5)) * log(x) - x + half_log_two_pi + series - log_product;
}

/// Generalized Laguerre polynomial L_n^alpha(z) by the three-term recurrence
/// (k+1) L_{k+1} = (2k + 1 + alpha - z) L_k - (k + alpha) L_{k-1}.
template <typename Scalar>
Scalar laguerre(int n, Scalar alpha, Scalar z) {
    if (n < 0)
        throw DomainError("laguerre: degree must be non-negative");
    Scalar prev = 1;
    if (n == 0)
        return prev;
    Scalar curr = Scalar(1) + alpha - z;
    for (int k = 1; k < n; ++k) {
        const Scalar next = ((Scalar(2 * k + 1) + alpha - z) * curr - (Scalar(k) + alpha) * prev) /
                            Scalar(k + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

/// L_n^alpha(z) together with L_{n-1}^alpha(z) (zero when n = 0).
template <typename Scalar>
std::array<Scalar, 2> laguerre_pair(int n, Scalar alpha, Scalar z) {
    if (n == 0)
        return {Scalar(1), Scalar(0)};
    return {laguerre(n, alpha, z), laguerre(n - 1, alpha, z)};
}

/// z * d/dz L_n^alpha(z) = n L_n - (n + alpha) L_{n-1}. Regular at z = 0.
template <typename Scalar>
Scalar laguerre_z_derivative(int n, Scalar alpha, Scalar z) {
    if (n == 0)
        return Scalar(0);
    const auto [ln, lnm1] = laguerre_pair(n, alpha, z);
    return Scalar(n) * ln - (Scalar(n) + alpha) * lnm1;
}

/// d/dz L_n^alpha(z) = [n L_n - (n + alpha) L_{n-1}] / z.
template <typename Scalar>
Scalar laguerre_derivative(int n, Scalar alpha, Scalar z) {
    if (!(z > Scalar(0)))
        throw DomainError("laguerre_derivative: z must be positive");
    return laguerre_z_derivative(n, alpha, z) / z;
}

/// Value, first and second derivative of L_n^alpha at z > 0, with both
/// derivatives taken from the derivative identity (the second by applying it
/// to each term of the first).
template <typename Scalar>
std::array<Scalar, 3> laguerre_jet(int n, Scalar alpha, Scalar z) {
    if (!(z > Scalar(0)))
        throw DomainError("laguerre_jet: z must be positive");
    if (n == 0)
        return {Scalar(1), Scalar(0), Scalar(0)};
    const Scalar value = laguerre(n, alpha, z);
    const Scalar first = laguerre_derivative(n, alpha, z);
    const Scalar prev_first = n >= 2 ? laguerre_derivative(n - 1, alpha, z) : Scalar(0);
    // d/dz [(n L_n - (n+alpha) L_{n-1}) / z]
    const Scalar second =
        (Scalar(n) * first - (Scalar(n) + alpha) * prev_first) / z - first / z;
    return {value, first, second};
}

/// Nodes and weights for integrals of z^alpha e^{-z} f(z) over (0, inf).
template <typename Scalar>
struct QuadratureRule {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Scalar alpha;
    Vector nodes;
    Vector weights;

    /// Sum of w_i f(x_i).
    template <typename Fn>
    Scalar integrate(Fn&& f) const {
        Scalar sum = 0;
        for (Eigen::Index i = 0; i < nodes.size(); ++i)
            sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// m-point generalized Gauss-Laguerre rule, 1 <= m <= 256.
///
/// Nodes come from the eigenvalues of the symmetric Jacobi matrix and are then
/// polished by Newton steps on L_m^alpha. Weights use
/// w_i = Gamma(m + alpha + 1) / (m! x_i [L_m^alpha'(x_i)]^2), evaluated in log
/// space. For m beyond ~180 the outermost weights underflow to zero.
template <typename Scalar>
QuadratureRule<Scalar> gauss_laguerre(int m, Scalar alpha) {
    using std::abs;
    using std::exp;
    using std::log;
    using std::sqrt;
    if (m < 1 || m > 256)
        throw DomainError("gauss_laguerre: point count must lie in [1, 256]");
    if (!(alpha > Scalar(-1)))
        throw DomainError("gauss_laguerre: alpha must exceed -1");

    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = typename QuadratureRule<Scalar>::Vector;

    Vector diag(m);
    Vector sub(m > 1 ? m - 1 : 0);
    for (int i = 0; i < m; ++i)
        diag[i] = Scalar(2 * i + 1) + alpha;
    for (int i = 1; i < m; ++i)
        sub[i - 1] = sqrt(Scalar(i) * (Scalar(i) + alpha));

    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    Vector nodes = solver.eigenvalues();

    const Scalar log_numerator = log_gamma(Scalar(m) + alpha + Scalar(1)) - log_gamma(Scalar(m + 1));
    Vector weights(m);
    for (int i = 0; i < m; ++i) {
        Scalar x = nodes[i];
        Scalar deriv = 0;
        for (int iter = 0; iter < 8; ++iter) {
            const auto [lm, lmm1] = laguerre_pair(m, alpha, x);
            deriv = (Scalar(m) * lm - (Scalar(m) + alpha) * lmm1) / x;
            const Scalar step = lm / deriv;
            x -= step;
            if (abs(step) <= Scalar(4) * Eigen::NumTraits<Scalar>::epsilon() * abs(x))
                break;
        }
        const auto [lm, lmm1] = laguerre_pair(m, alpha, x);
        deriv = (Scalar(m) * lm - (Scalar(m) + alpha) * lmm1) / x;
        nodes[i] = x;
        weights[i] = exp(log_numerator - log(x) - Scalar(2) * log(abs(deriv)));
    }
    return QuadratureRule<Scalar>{alpha, std::move(nodes), std::move(weights)};
}

}  // namespace dirac_pauli

#endif  // DIRAC_PAULI_SPECIAL_FUNCTIONS_HPP
