#include "dirac_pauli/ode_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

namespace dirac_pauli {

namespace {

double max_abs(std::initializer_list<double> values) {
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

class ReportBuilder {
public:
    ReportBuilder(const std::vector<double>& grid, ResidualMode mode) {
        report_.grid = grid;
        report_.mode = mode;
        report_.residuals.reserve(grid.size());
    }

    void add(double residual, double scale) {
        report_.residuals.push_back(residual);
        const double rel = scale > 0.0 ? std::abs(residual) / scale : 0.0;
        report_.max_rel = std::max(report_.max_rel, rel);
        sum_sq_ += rel * rel;
    }

    ResidualReport finish() {
        if (!report_.residuals.empty())
            report_.rms_rel = std::sqrt(sum_sq_ / static_cast<double>(report_.residuals.size()));
        return std::move(report_);
    }

private:
    ResidualReport report_;
    double sum_sq_ = 0.0;
};

void check_grid(const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0))
            throw DomainError("residual grid must lie in (0, inf)");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError("residual grid must be strictly increasing");
    }
}

struct ShotOutcome {
    int sign;
    int nodes;
};

/// Endpoint where the decaying solution is below e^{-40} of the growing one. Their ratio
/// behaves as e^{-2x} x^{2n+2L+1}; never less than x = 40.
double shooting_endpoint(double n, double L) {
    double x = 40.0;
    for (int i = 0; i < 60; ++i)
        x = std::max(40.0, 20.0 + (n + L + 0.5) * std::log(x));
    return x;
}

/// Integrates u'' + (2L+1)/x u' - (beta/x + 1) u = 0 outward from the Frobenius start.
ShotOutcome shoot_once(const CanonicalRadialODE& ode, int n) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;

    constexpr double x0 = 1e-3;
    const double x_max = shooting_endpoint(n, ode.L);
    const double beta = ode.c1 / ode.c2;
    const double damping = 2.0 * ode.L + 1.0;

    // Regular Frobenius series: x u'' + (2L+1) u' - beta u - x u = 0 gives
    // a_{k+1} = (beta a_k + a_{k-1}) / ((k+1)(k+2L+1)), a_0 = 1.
    State u{1.0, 0.0};
    // At x0 = 1e-3 the terms fall by ~1e-3 each, so a fixed count reaches roundoff.
    double prev = 0.0, curr = 1.0, power = 1.0;
    for (int k = 0; k < 12; ++k) {
        const double next = (beta * curr + prev) / ((k + 1.0) * (k + damping));
        u[1] += (k + 1.0) * next * power;
        power *= x0;
        const double term = next * power;
        u[0] += term;
        prev = curr;
        curr = next;
    }
    auto rhs = [&](const State& s, State& ds, double x) {
        ds[0] = s[1];
        ds[1] = -damping / x * s[1] + (beta / x + 1.0) * s[0];
    };

    int nodes = 0;
    double previous = u[0];
    auto observer = [&](const State& s, double) {
        if ((s[0] < 0.0 && previous > 0.0) || (s[0] > 0.0 && previous < 0.0))
            ++nodes;
        if (s[0] != 0.0)
            previous = s[0];
    };

    auto stepper = odeint::make_controlled(0.0, 1e-12, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_adaptive(stepper, rhs, u, x0, x_max, 1e-4, observer);
    return {u[0] > 0.0 ? 1 : (u[0] < 0.0 ? -1 : 0), nodes};
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw DomainError("log_grid: requires 0 < lo < hi and n >= 2");
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    grid.back() = hi;
    return grid;
}

std::vector<double> standard_grid(const CanonicalRadialODE& ode) {
    return log_grid(0.05, 40.0 / ode.c2, 200);
}

ResidualReport canonical_residual(const CanonicalRadialODE& ode, const std::function<RadialJet(double)>& y,
                                  const std::vector<double>& grid) {
    check_grid(grid);
    ReportBuilder builder(grid, ResidualMode::CanonicalODE);
    for (double r : grid) {
        const auto [value, first, second] = y(r);
        const double damping = 3.0 / r * first;
        const double potential = (-ode.c1 * r - ode.c2 * ode.c2 * r * r - ode.c3sq) / (r * r) * value;
        builder.add(second + damping + potential, max_abs({second, damping, potential}));
    }
    return builder.finish();
}

ResidualReport canonical_residual(const CanonicalRadialODE& ode, const BoundState& state,
                                  const std::vector<double>& grid) {
    return canonical_residual(ode, [&](double r) { return upper_jet(state, r); }, grid);
}

FirstOrderReport first_order_residual(const BoundState& state, PartnerMode mode,
                                      const std::vector<double>& grid) {
    check_grid(grid);
    ReportBuilder defining(grid, ResidualMode::FirstOrderSystem);
    ReportBuilder complementary(grid, ResidualMode::FirstOrderSystem);
    const double ell = state.qn.ell();
    const double mu = state.cfg.mu;
    const double eps = state.energy;

    for (double r : grid) {
        const auto upper = upper_jet(state, r);
        const auto partner = partner_jet(state, r, mode);
        const double mu_e = mu * electric_field(state.cfg, r);
        const double mass = mass_profile(state.branch, eps, r);
        const double sum = eps + mass;
        const double diff = eps - mass;

        if (state.branch == Branch::Plus) {
            const double f = upper[0], df = upper[1];
            const double g = partner[0], dg = partner[1];
            // (d/dr + mu E - ell/r) F + (eps + M) G
            const double a_terms[] = {df, mu_e * f, -ell / r * f, sum * g};
            defining.add(a_terms[0] + a_terms[1] + a_terms[2] + a_terms[3],
                         max_abs({a_terms[0], a_terms[1], a_terms[2], a_terms[3]}));
            // (d/dr - mu E + (ell+2)/r) G - (eps - M) F
            const double b_terms[] = {dg, -mu_e * g, (ell + 2.0) / r * g, -diff * f};
            complementary.add(b_terms[0] + b_terms[1] + b_terms[2] + b_terms[3],
                              max_abs({b_terms[0], b_terms[1], b_terms[2], b_terms[3]}));
        } else {
            const double g = upper[0], dg = upper[1];
            const double f = partner[0], df = partner[1];
            // (d/dr - mu E - ell/r) G - (eps - M) F
            const double b_terms[] = {dg, -mu_e * g, -ell / r * g, -diff * f};
            defining.add(b_terms[0] + b_terms[1] + b_terms[2] + b_terms[3],
                         max_abs({b_terms[0], b_terms[1], b_terms[2], b_terms[3]}));
            // (d/dr + mu E - (ell+2)/r) F + (eps + M) G
            const double a_terms[] = {df, mu_e * f, -(ell + 2.0) / r * f, sum * g};
            complementary.add(a_terms[0] + a_terms[1] + a_terms[2] + a_terms[3],
                              max_abs({a_terms[0], a_terms[1], a_terms[2], a_terms[3]}));
        }
    }
    return {defining.finish(), complementary.finish()};
}

double normalization_integral(const BoundState& state, PartnerMode mode) {
    using boost::math::quadrature::gauss_kronrod;
    using boost::math::quadrature::tanh_sinh;
    const auto density = [&](double r) {
        if (!(r > 0.0))
            return 0.0;
        // Scale by r before squaring: for L < 1 the components diverge at the origin.
        const double upper = wavefunction_upper(state, r) * r;
        const double partner = wavefunction_partner(state, r, mode) * r;
        return upper * upper + partner * partner;
    };
    // Split at a few decay lengths so each panel sees a smooth integrand. The first panel
    // carries the r^{2L} behaviour at the origin, which tanh-sinh handles for any L.
    const double scale = 1.0 / state.ode.c2;
    const std::array<double, 5> edges{0.0, 2.0 * scale, 8.0 * scale, 24.0 * scale, 64.0 * scale};
    double total = tanh_sinh<double>().integrate(density, edges[0], edges[1], 1e-14);
    for (std::size_t i = 1; i + 1 < edges.size(); ++i)
        total += gauss_kronrod<double, 31>::integrate(density, edges[i], edges[i + 1], 15, 1e-14);
    total += gauss_kronrod<double, 31>::integrate(density, edges.back(),
                                                  std::numeric_limits<double>::infinity(), 15, 1e-14);
    return total;
}

ShootingResult shoot_eigenvalue(const OdeFamily& family, int n, double lo, double hi, double tol) {
    if (!(lo < hi))
        throw BracketError("shoot_eigenvalue: empty bracket");
    if (n < 0)
        throw DomainError("shoot_eigenvalue: n must be non-negative");

    ShotOutcome at_lo = shoot_once(family(lo), n);
    ShotOutcome at_hi = shoot_once(family(hi), n);
    if (at_lo.sign == at_hi.sign || at_lo.sign == 0 || at_hi.sign == 0)
        throw BracketError("shoot_eigenvalue: no sign change of the tail across the bracket");

    int bisections = 0;
    while (bisections < 200) {
        const double mid = 0.5 * (lo + hi);
        if (!(hi - lo > tol * std::abs(mid)) || mid <= lo || mid >= hi)
            break;
        const ShotOutcome at_mid = shoot_once(family(mid), n);
        ++bisections;
        if (at_mid.sign == at_lo.sign) {
            lo = mid;
            at_lo = at_mid;
        } else {
            hi = mid;
            at_hi = at_mid;
        }
    }

    // Just off the eigenvalue the tail diverges with opposite signs on the two
    // sides; only one of those divergences adds a spurious crossing.
    const int nodes = std::min(at_lo.nodes, at_hi.nodes);
    if (nodes != n)
        throw WrongStateError(n, nodes);
    return {0.5 * (lo + hi), lo, hi, std::max(bisections, 1), nodes};
}

std::vector<SpectrumComparison> compare_spectrum(const FieldConfig& cfg, Branch branch, Convention conv,
                                                 int n_max, int ell_max) {
    if (n_max < 0 || ell_max < 0 || n_max > 64 || ell_max > 64)
        throw DomainError("compare_spectrum: bounds must lie in [0, 64]");
    std::vector<SpectrumComparison> rows;
    for (int n = 0; n <= n_max; ++n) {
        for (int ell = 0; ell <= ell_max; ++ell) {
            const QuantumNumbers qn(n, ell);
            SpectrumComparison row{qn, 0.0, 0.0, 0.0, -1, std::nullopt};
            try {
                const BoundState state = make_bound_state(cfg, qn, branch, conv);
                row.closed = state.energy;
                const double c2 = state.ode.c2;
                const double half = state.energy != 0.0 ? std::min(0.2 * std::abs(state.energy), 0.45 * c2)
                                                        : 0.2 * c2;
                const auto family = [&](double eps) { return coefficients(cfg, qn, branch, eps, conv); };
                const ShootingResult shot =
                    shoot_eigenvalue(family, n, state.energy - half, state.energy + half, 1e-10);
                row.shot = shot.energy;
                row.node_count = shot.node_count;
                row.rel_diff = std::abs(shot.energy - state.energy) /
                               (state.energy != 0.0 ? std::abs(state.energy) : 1.0);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace dirac_pauli
