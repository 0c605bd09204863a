#ifndef DIRAC_PAULI_NU_ENGINE_HPP
#define DIRAC_PAULI_NU_ENGINE_HPP

// Nikiforov-Uvarov reduction of hypergeometric-type equations
//
//   sigma(r)^2 y'' + sigma(r) tau_tilde(r) y' + sigma_tilde(r) y = 0,
//
// with deg sigma, deg sigma_tilde <= 2 and deg tau_tilde <= 1. The solution is
// factored as y = h(r) g(r) with h'/h = pi/sigma, where
//
//   pi = (sigma' - tau_tilde)/2 +/- sqrt(((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma)
//
// and k is fixed by requiring the radicand to be a perfect square. g then
// solves sigma g'' + tau g' + lambda g = 0 with tau = tau_tilde + 2 pi and
// lambda = k + pi'. Polynomial solutions of degree n exist when
// lambda = -n tau' - n(n-1) sigma''/2.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dirac_pauli/errors.hpp"

namespace dirac_pauli {

/// Real polynomial of degree at most two, coefficients in ascending order.
template <typename Scalar>
class Polynomial {
public:
    using Coefficients = Eigen::Matrix<Scalar, 3, 1>;

    Polynomial() : coeffs_(Coefficients::Zero()) {}
    explicit Polynomial(const Coefficients& coeffs) : coeffs_(coeffs) {}
    Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(Coefficients::Zero()) {
        if (coeffs.size() > 3)
            throw Unsupported("Polynomial: degree above two");
        std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
    }

    static Polynomial constant(Scalar c) { return Polynomial{c}; }
    static Polynomial identity() { return Polynomial{Scalar(0), Scalar(1)}; }

    [[nodiscard]] const Coefficients& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] Scalar operator[](int i) const { return coeffs_[i]; }

    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept {
        for (int i = 2; i >= 0; --i)
            if (coeffs_[i] != Scalar(0))
                return i;
        return -1;
    }
    [[nodiscard]] bool is_zero() const noexcept { return degree() < 0; }

    Scalar operator()(Scalar r) const { return (coeffs_[2] * r + coeffs_[1]) * r + coeffs_[0]; }

    [[nodiscard]] Polynomial derivative() const {
        return Polynomial{coeffs_[1], Scalar(2) * coeffs_[2]};
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        return Polynomial(Coefficients(p.coeffs_ + q.coeffs_));
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
        return Polynomial(Coefficients(p.coeffs_ - q.coeffs_));
    }
    friend Polynomial operator*(Scalar s, const Polynomial& p) {
        return Polynomial(Coefficients(s * p.coeffs_));
    }
    /// Product; the result must still have degree <= 2.
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        Eigen::Matrix<Scalar, 5, 1> full = Eigen::Matrix<Scalar, 5, 1>::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                full[i + j] += p.coeffs_[i] * q.coeffs_[j];
        if (full[3] != Scalar(0) || full[4] != Scalar(0))
            throw Unsupported("Polynomial: product exceeds degree two");
        return Polynomial(Coefficients(full.template head<3>()));
    }

private:
    Coefficients coeffs_;
};

template <typename Scalar>
struct HypergeometricTypeEquation {
    Polynomial<Scalar> sigma;
    Polynomial<Scalar> tau_tilde;
    Polynomial<Scalar> sigma_tilde;

    HypergeometricTypeEquation(Polynomial<Scalar> sigma_, Polynomial<Scalar> tau_tilde_,
                               Polynomial<Scalar> sigma_tilde_)
        : sigma(std::move(sigma_)), tau_tilde(std::move(tau_tilde_)),
          sigma_tilde(std::move(sigma_tilde_)) {
        if (sigma.is_zero())
            throw DomainError("HypergeometricTypeEquation: sigma must not vanish");
        if (tau_tilde.degree() > 1)
            throw DomainError("HypergeometricTypeEquation: tau_tilde must have degree <= 1");
    }

    /// ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma.
    [[nodiscard]] Polynomial<Scalar> radicand(Scalar k) const {
        const Polynomial<Scalar> half = Scalar(0.5) * (sigma.derivative() - tau_tilde);
        return half * half - sigma_tilde + k * sigma;
    }
};

enum class RootSign { PlusRoot, MinusRoot };

template <typename Scalar>
struct NUReduction {
    Scalar k;
    Polynomial<Scalar> pi;
    Polynomial<Scalar> tau;
    Scalar lambda;
    RootSign sign_choice;
};

/// Both root signs give tau' < 0; the caller has to pick one.
template <typename Scalar>
class AmbiguousBranch : public std::runtime_error {
public:
    explicit AmbiguousBranch(std::array<NUReduction<Scalar>, 2> candidates)
        : std::runtime_error("both signs of pi give tau' < 0"), candidates_(std::move(candidates)) {}

    [[nodiscard]] const std::array<NUReduction<Scalar>, 2>& candidates() const noexcept {
        return candidates_;
    }

private:
    std::array<NUReduction<Scalar>, 2> candidates_;
};

namespace detail {

template <typename Scalar>
Scalar max_abs_coeff(const Polynomial<Scalar>& p) {
    return p.coeffs().cwiseAbs().maxCoeff();
}

/// Polynomial s with s^2 equal to the radicand, leading coefficient >= 0.
template <typename Scalar>
Polynomial<Scalar> square_root(const Polynomial<Scalar>& q) {
    using std::abs;
    using std::copysign;
    using std::sqrt;
    const Scalar scale = max_abs_coeff(q);
    const Scalar tol = Scalar(1e-12) * scale;
    const Scalar q0 = q[0], q1 = q[1], q2 = q[2];

    if (q2 < -tol)
        throw NoSquareCompletion("radicand has negative leading coefficient");
    if (q2 <= tol) {
        if (abs(q1) > Scalar(1e-6) * (scale > Scalar(0) ? scale : Scalar(1)) || q0 < -tol)
            throw NoSquareCompletion("radicand is not the square of a real polynomial");
        return Polynomial<Scalar>::constant(sqrt(q0 > Scalar(0) ? q0 : Scalar(0)));
    }
    const Scalar lead = sqrt(q2);
    // q1 / (2 sqrt(q2)) and sign(q1) sqrt(q0) agree for an exact square; each
    // loses accuracy when its input carries cancellation, so keep the one that
    // reproduces the radicand best.
    const Polynomial<Scalar> from_linear{q1 / (Scalar(2) * lead), lead};
    const Polynomial<Scalar> from_constant{copysign(sqrt(q0 > Scalar(0) ? q0 : Scalar(0)), q1), lead};
    const Scalar err_linear = max_abs_coeff(from_linear * from_linear - q);
    const Scalar err_constant = max_abs_coeff(from_constant * from_constant - q);
    return err_constant <= err_linear ? from_constant : from_linear;
}

template <typename Scalar>
NUReduction<Scalar> assemble(const HypergeometricTypeEquation<Scalar>& eq, Scalar k,
                             const Polynomial<Scalar>& root, RootSign sign) {
    const Polynomial<Scalar> half = Scalar(0.5) * (eq.sigma.derivative() - eq.tau_tilde);
    const Polynomial<Scalar> pi = sign == RootSign::PlusRoot ? half + root : half - root;
    const Polynomial<Scalar> tau = eq.tau_tilde + Scalar(2) * pi;
    return NUReduction<Scalar>{k, pi, tau, k + pi[1], sign};
}

}  // namespace detail

/// All real k that make the radicand a perfect square, ascending and without
/// duplicates. The radicand's discriminant is quadratic in k; its own
/// discriminant is expanded symbolically so that no cancellation occurs for
/// sigma(r) = r.
template <typename Scalar>
std::vector<Scalar> candidate_ks(const HypergeometricTypeEquation<Scalar>& eq) {
    using std::abs;
    using std::sqrt;
    const Polynomial<Scalar> half = Scalar(0.5) * (eq.sigma.derivative() - eq.tau_tilde);
    const Polynomial<Scalar> base = half * half - eq.sigma_tilde;
    const Scalar a0 = base[0], a1 = base[1], a2 = base[2];
    const Scalar s0 = eq.sigma[0], s1 = eq.sigma[1], s2 = eq.sigma[2];

    const Scalar qa = s1 * s1 - Scalar(4) * s2 * s0;
    const Scalar qb = Scalar(2) * a1 * s1 - Scalar(4) * (a2 * s0 + a0 * s2);
    const Scalar qc = a1 * a1 - Scalar(4) * a2 * a0;

    std::vector<Scalar> ks;
    if (qa == Scalar(0)) {
        if (qb == Scalar(0)) {
            if (qc == Scalar(0))
                throw Unsupported("candidate_ks: every k completes the square");
            throw NoSquareCompletion("candidate_ks: discriminant is a nonzero constant");
        }
        ks.push_back(-qc / qb);
        return ks;
    }

    const Scalar cross = a2 * s0 - a0 * s2;
    const Scalar delta_over_16 =
        cross * cross - a1 * s1 * (a2 * s0 + a0 * s2) + s1 * s1 * a2 * a0 + s0 * s2 * a1 * a1;
    if (delta_over_16 < Scalar(0))
        throw NoSquareCompletion("candidate_ks: no real k completes the square");

    const Scalar root = Scalar(4) * sqrt(delta_over_16);
    const Scalar q = Scalar(-0.5) * (qb + (qb >= Scalar(0) ? root : -root));
    if (q == Scalar(0)) {
        ks.push_back(Scalar(0));
        return ks;
    }
    ks.push_back(q / qa);
    ks.push_back(qc / q);
    std::sort(ks.begin(), ks.end());
    if (ks[0] == ks[1])
        ks.pop_back();
    return ks;
}

/// Reduction with an explicit root sign; tau' is not inspected.
template <typename Scalar>
NUReduction<Scalar> reduce(const HypergeometricTypeEquation<Scalar>& eq, Scalar k, RootSign sign) {
    return detail::assemble(eq, k, detail::square_root(eq.radicand(k)), sign);
}

/// Reduction whose tau has strictly negative derivative.
template <typename Scalar>
NUReduction<Scalar> reduce(const HypergeometricTypeEquation<Scalar>& eq, Scalar k) {
    const Polynomial<Scalar> root = detail::square_root(eq.radicand(k));
    auto plus = detail::assemble(eq, k, root, RootSign::PlusRoot);
    auto minus = detail::assemble(eq, k, root, RootSign::MinusRoot);
    const bool plus_ok = plus.tau[1] < Scalar(0);
    const bool minus_ok = minus.tau[1] < Scalar(0);
    if (plus_ok && minus_ok)
        throw AmbiguousBranch<Scalar>({plus, minus});
    if (plus_ok)
        return plus;
    if (minus_ok)
        return minus;
    throw NoAdmissibleBranch("reduce: neither sign of pi gives tau' < 0");
}

/// max |(pi - (sigma' - tau_tilde)/2)^2 - radicand| relative to the radicand's
/// largest coefficient.
template <typename Scalar>
Scalar square_certificate(const HypergeometricTypeEquation<Scalar>& eq, const NUReduction<Scalar>& red) {
    const Polynomial<Scalar> half = Scalar(0.5) * (eq.sigma.derivative() - eq.tau_tilde);
    const Polynomial<Scalar> root = red.pi - half;
    const Polynomial<Scalar> q = eq.radicand(red.k);
    const Scalar scale = detail::max_abs_coeff(q);
    const Scalar err = detail::max_abs_coeff(root * root - q);
    return scale > Scalar(0) ? err / scale : err;
}

/// lambda_n = -n tau' - n (n-1) sigma'' / 2.
template <typename Scalar>
Scalar lambda_n(const NUReduction<Scalar>& red, const Polynomial<Scalar>& sigma, int n) {
    if (n < 0)
        throw DomainError("lambda_n: n must be non-negative");
    const Scalar nn = Scalar(n);
    return -nn * red.tau[1] - Scalar(0.5) * nn * (nn - Scalar(1)) * Scalar(2) * sigma[2];
}

/// rho(r) = r^power e^{rate r}.
template <typename Scalar>
struct WeightSpec {
    Scalar power;
    Scalar rate;
};

/// Weight solving (sigma rho)' = tau rho for sigma(r) = r: power = tau(0) - 1,
/// rate = tau'.
template <typename Scalar>
WeightSpec<Scalar> weight_spec(const NUReduction<Scalar>& red, const Polynomial<Scalar>& sigma) {
    if (!(sigma[0] == Scalar(0) && sigma[1] == Scalar(1) && sigma[2] == Scalar(0)))
        throw Unsupported("weight_spec: only sigma(r) = r is supported");
    return WeightSpec<Scalar>{red.tau[0] - Scalar(1), red.tau[1]};
}

/// (1/n!) (1/rho) d^n/dr^n [r^n rho] for rho = r^p e^{qr}, q < 0.
///
/// The n-fold derivative is expanded with the Leibniz rule, giving
/// sum_k C(n,k) (n+p)_k (-1)^{n-k} x^{n-k} / n! with x = -q r and (.)_k the
/// falling factorial. This equals L_n^p(-q r).
template <typename Scalar>
Scalar rodrigues_polynomial(const WeightSpec<Scalar>& spec, int n, Scalar z) {
    if (!(spec.rate < Scalar(0)))
        throw Unsupported("rodrigues_polynomial: weight must decay (rate < 0)");
    if (n < 0)
        throw DomainError("rodrigues_polynomial: n must be non-negative");
    const Scalar x = -spec.rate * z;
    // k-th term coefficient: C(n,k) (n+p)_k / n!, built incrementally from k = 0.
    Scalar coeff = Scalar(1);
    for (int i = 2; i <= n; ++i)
        coeff /= Scalar(i);
    Scalar sum = 0;
    for (int k = 0; k <= n; ++k) {
        const int power = n - k;
        Scalar term = coeff;
        for (int i = 0; i < power; ++i)
            term *= -x;
        sum += term;
        coeff *= Scalar(n - k) / Scalar(k + 1) * (Scalar(n - k) + spec.power);
    }
    return sum;
}

}  // namespace dirac_pauli

#endif  // DIRAC_PAULI_NU_ENGINE_HPP
