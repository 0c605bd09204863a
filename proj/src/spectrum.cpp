#include "dirac_pauli/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "dirac_pauli/special_functions.hpp"

namespace dirac_pauli {

namespace {

bool uses_corrected_minus(Branch branch, Convention conv) {
    return branch == Branch::Minus && conv == Convention::CorrectedMinus;
}

/// c1 as a function of the trial energy.
double linear_coefficient(const FieldConfig& cfg, int ell, Branch branch, double epsilon) {
    const double mua = cfg.mu * cfg.a;
    const double cross = 2.0 * cfg.mu * cfg.mu * cfg.a * cfg.b;
    if (branch == Branch::Plus)
        return 2.0 * epsilon - mua * (3.0 + 2.0 * ell) + cross;
    return mua * (3.0 + 2.0 * ell) + cross - 2.0 * epsilon;
}

/// +1 / -1 sign of the mu E term in the partner relation; 0 for PaperLiteral.
double coupling_sign(Branch branch, PartnerMode mode) {
    if (mode == PartnerMode::PaperLiteral)
        return 0.0;
    return branch == Branch::Plus ? 1.0 : -1.0;
}

double ell_shift(const BoundState& state, PartnerMode mode) {
    return mode == PartnerMode::PaperLiteral ? 0.0 : static_cast<double>(state.qn.ell());
}

}  // namespace

double constant_coefficient(const FieldConfig& cfg, int ell, Branch branch, Convention conv) {
    const double l1 = 1.0 + ell;
    const double mub = cfg.mu * cfg.b;
    // Completed squares of (1+l)(l+1 -/+ 2 mu b) + (mu b)^2; the expanded sums cancel for large |mu b|.
    if (branch == Branch::Plus)
        return (l1 - mub) * (l1 - mub);
    if (uses_corrected_minus(branch, conv))
        return (l1 + mub) * (l1 + mub);
    return l1 * (2.0 * mub - l1) + mub * mub;
}

double angular_exponent(const FieldConfig& cfg, int ell, Branch branch, Convention conv) {
    const double one_plus = 1.0 + constant_coefficient(cfg, ell, branch, conv);
    if (!(one_plus > 0.0))
        throw ComplexExponentError(one_plus);
    return std::sqrt(one_plus);
}

double decay_rate(const FieldConfig& cfg, Convention conv) noexcept {
    const double mua = cfg.mu * cfg.a;
    return conv == Convention::PaperLiteral ? mua : std::abs(mua);
}

CanonicalRadialODE coefficients(const FieldConfig& cfg, const QuantumNumbers& qn, Branch branch,
                                double epsilon, Convention conv) {
    const double c3sq = constant_coefficient(cfg, qn.ell(), branch, conv);
    const double L = angular_exponent(cfg, qn.ell(), branch, conv);
    const double c2 = decay_rate(cfg, conv);
    if (!(c2 > 0.0))
        throw NonNormalizableError(c2);
    return CanonicalRadialODE{linear_coefficient(cfg, qn.ell(), branch, epsilon), c2, c3sq, L, branch,
                              conv};
}

double energy_level(const FieldConfig& cfg, const QuantumNumbers& qn, Branch branch, Convention conv) {
    const double L = angular_exponent(cfg, qn.ell(), branch, conv);
    const double n = qn.n();
    const double ell = qn.ell();
    const double mua = cfg.mu * cfg.a;
    const double mub = cfg.mu * cfg.b;
    if (conv == Convention::PaperLiteral) {
        if (branch == Branch::Plus)
            return -mua * (n - ell - 1.0 + L + mub);
        return mua * (n + ell + 2.0 + L + mub);
    }
    // c1(eps) = -2 c2 (n + L + 1/2), c1 linear in eps with slope +/-2.
    const double c2 = std::abs(mua);
    const double target = -2.0 * c2 * (n + L + 0.5);
    const double at_zero = linear_coefficient(cfg, qn.ell(), branch, 0.0);
    const double slope = branch == Branch::Plus ? 2.0 : -2.0;
    return (target - at_zero) / slope;
}

StateKind classify_state(double epsilon) noexcept {
    if (epsilon > 0.0)
        return StateKind::Particle;
    if (epsilon < 0.0)
        return StateKind::Antiparticle;
    return StateKind::Threshold;
}

std::string_view to_string(StateKind kind) noexcept {
    switch (kind) {
        case StateKind::Particle: return "particle";
        case StateKind::Antiparticle: return "antiparticle";
        case StateKind::Threshold: return "threshold";
    }
    return "unknown";
}

std::string_view to_string(PartnerMode mode) noexcept {
    return mode == PartnerMode::RelationDerived ? "relation-derived" : "paper-literal";
}

NormalizationData normalization_closed(const FieldConfig& cfg, const QuantumNumbers& qn,
                                       const CanonicalRadialODE& ode) {
    const double n = qn.n();
    const double L = ode.L;
    const double c2 = ode.c2;
    if (!(c2 > 0.0))
        throw NonNormalizableError(c2);

    NormalizationData out{};
    out.omega1p = n - 1.0 - qn.ell() + L + cfg.mu * cfg.b;
    out.omega2p = cfg.mu * cfg.a / (2.0 * c2) - 0.5;
    out.omega1 = out.omega1p + out.omega2p * (2.0 * n + 2.0 * L + 1.0);
    out.omega2 = (n + 2.0 * L) * (1.0 + out.omega2p);
    out.omega3 = out.omega2p * (1.0 + n);

    // Denominator divided by Gamma(n + 2L + 1)/n!; the (n-1)! term vanishes at n = 0.
    const double two_l = 2.0 * L;
    double bracket = 1.0 + out.omega1 * out.omega1;
    bracket += out.omega2 * out.omega2 * (n / (n + two_l));
    bracket += out.omega3 * out.omega3 * ((n + two_l + 1.0) / (n + 1.0));
    const double log_leading = log_gamma(n + two_l + 1.0) - log_gamma(n + 1.0);
    out.N = std::exp(0.5 * ((1.0 + two_l) * std::log(2.0 * c2) - log_leading - std::log(bracket)));
    return out;
}

double partner_reduced(const BoundState& state, double z, PartnerMode mode) {
    const int n = state.qn.n();
    const double alpha = 2.0 * state.ode.L;
    const double c2 = state.ode.c2;
    const double r = z / (2.0 * c2);
    const double lag = laguerre(n, alpha, z);
    const double z_dlag = laguerre_z_derivative(n, alpha, z);
    const double kappa = coupling_sign(state.branch, mode) * state.cfg.mu * (state.cfg.a * r + state.cfg.b) -
                         ell_shift(state, mode);
    return (state.ode.L - 1.0 - c2 * r + kappa) * lag + z_dlag;
}

double normalization_numeric(const BoundState& state, PartnerMode mode, int m) {
    const int n = state.qn.n();
    const int points = m > 0 ? m : n + 3;
    const double alpha = 2.0 * state.ode.L;
    const auto rule = gauss_laguerre(points, alpha);
    const double integral = rule.integrate([&](double z) {
        const double upper = laguerre(n, alpha, z);
        const double partner = partner_reduced(state, z, mode);
        return upper * upper + partner * partner;
    });
    return std::exp(0.5 * ((1.0 + alpha) * std::log(2.0 * state.ode.c2) - std::log(integral)));
}

BoundState make_bound_state(const FieldConfig& cfg, const QuantumNumbers& qn, Branch branch,
                            Convention conv) {
    const double energy = energy_level(cfg, qn, branch, conv);
    const CanonicalRadialODE ode = coefficients(cfg, qn, branch, energy, conv);
    BoundState state{cfg, branch, qn, energy, ode, normalization_closed(cfg, qn, ode), 1.0};
    state.amplitude = normalization_numeric(state, PartnerMode::RelationDerived);
    return state;
}

double quantization_residual(const BoundState& state) {
    const double target = 2.0 * state.ode.c2 * (state.qn.n() + state.ode.L + 0.5);
    const double scale = std::max(std::abs(state.ode.c1), target);
    return (state.ode.c1 + target) / scale;
}

RadialJet upper_jet(const BoundState& state, double r) {
    if (!(r > 0.0))
        throw DomainError("upper_jet: r must be positive");
    const double c2 = state.ode.c2;
    const double s = state.ode.L - 1.0;
    const double z = 2.0 * c2 * r;
    const auto [g, dg, d2g] = laguerre_jet(state.qn.n(), 2.0 * state.ode.L, z);
    const double w = state.amplitude * std::pow(r, s) * std::exp(-c2 * r);
    const double phi = s / r - c2;
    const double g1 = 2.0 * c2 * dg;
    const double g2 = 4.0 * c2 * c2 * d2g;
    return {w * g, w * (phi * g + g1), w * ((phi * phi - s / (r * r)) * g + 2.0 * phi * g1 + g2)};
}

double wavefunction_upper(const BoundState& state, double r) {
    if (!(r > 0.0))
        throw DomainError("wavefunction_upper: r must be positive");
    const double c2 = state.ode.c2;
    return state.amplitude * std::pow(r, state.ode.L - 1.0) * std::exp(-c2 * r) *
           laguerre(state.qn.n(), 2.0 * state.ode.L, 2.0 * c2 * r);
}

std::array<double, 2> partner_jet(const BoundState& state, double r, PartnerMode mode) {
    const auto [u, du, d2u] = upper_jet(state, r);
    const double sign = coupling_sign(state.branch, mode);
    const double kappa = sign * state.cfg.mu * (state.cfg.a * r + state.cfg.b) - ell_shift(state, mode);
    const double dkappa = sign * state.cfg.mu * state.cfg.a;
    return {r * du + kappa * u, du + r * d2u + dkappa * u + kappa * du};
}

double wavefunction_partner(const BoundState& state, double r, PartnerMode mode) {
    if (!(r > 0.0))
        throw DomainError("wavefunction_partner: r must be positive");
    // r U' with U' from the Laguerre derivative identity, plus the coupling term.
    const double c2 = state.ode.c2;
    const double s = state.ode.L - 1.0;
    const double alpha = 2.0 * state.ode.L;
    const double z = 2.0 * c2 * r;
    const double w = state.amplitude * std::pow(r, s) * std::exp(-c2 * r);
    const double lag = laguerre(state.qn.n(), alpha, z);
    const double dlag = laguerre_derivative(state.qn.n(), alpha, z);
    const double upper = w * lag;
    const double r_dupper = w * ((s - c2 * r) * lag + r * 2.0 * c2 * dlag);
    const double kappa = coupling_sign(state.branch, mode) * state.cfg.mu * (state.cfg.a * r + state.cfg.b) -
                         ell_shift(state, mode);
    return r_dupper + kappa * upper;
}

DegeneracyReport degeneracy_scan(const FieldConfig& cfg, Branch branch, Convention conv, int n_max,
                                 int ell_max, double tol) {
    if (n_max < 0 || ell_max < 0 || n_max > 64 || ell_max > 64)
        throw DomainError("degeneracy_scan: bounds must lie in [0, 64]");
    DegeneracyReport report;
    for (int n = 0; n <= n_max; ++n) {
        for (int ell = 0; ell <= ell_max; ++ell) {
            const QuantumNumbers qn(n, ell);
            try {
                const BoundState state = make_bound_state(cfg, qn, branch, conv);
                report.states.push_back({qn, state.energy});
            } catch (const std::exception& e) {
                report.failures.push_back({qn, e.what()});
            }
        }
    }

    std::vector<ScanEntry> sorted = report.states;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ScanEntry& x, const ScanEntry& y) { return x.energy < y.energy; });
    for (std::size_t i = 0; i < sorted.size();) {
        std::vector<QuantumNumbers> group{sorted[i].qn};
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j].energy - sorted[j - 1].energy <= tol) {
            group.push_back(sorted[j].qn);
            ++j;
        }
        report.max_multiplicity = std::max(report.max_multiplicity, static_cast<int>(group.size()));
        report.groups.push_back(std::move(group));
        i = j;
    }
    return report;
}

}  // namespace dirac_pauli
