#include "ho/operators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "ho/errors.hpp"

namespace ho {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Complex cexp_i2pi(Complex a) { return std::exp(2.0 * kPi * kI * a); }

void require_real(const SpectralPoint& lambda, const char* who) {
    for (const Complex& l : lambda) {
        if (l.imag() != 0.0) throw DomainError(std::string(who) + ": lambda must be real");
    }
}

void require_distinct(const SpectralPoint& lambda, const char* who) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) {
            if (std::abs(lambda[i] - lambda[j]) < 1e-9) {
                throw PoleError(std::string(who) + ": coincident spectral parameters");
            }
        }
    }
}

void require_small(const SpectralPoint& lambda, const PositionPoint& x, const char* who) {
    if (lambda.empty() || lambda.size() != x.size()) {
        throw DomainError(std::string(who) + ": lambda and x must have equal nonzero length");
    }
    if (lambda.size() > 2) throw DomainError(std::string(who) + ": only n <= 2 is supported");
}

// second derivative along one axis
Complex second_diff(const std::function<Complex(const PositionPoint&)>& f, PositionPoint x, std::size_t axis,
                    const FDStencil& s, Complex f0) {
    const double h = s.h;
    const double c = x[axis];
    auto at = [&](double d) {
        x[axis] = c + d;
        return f(x);
    };
    if (s.order == 3) return (at(h) - 2.0 * f0 + at(-h)) / (h * h);
    return (-at(2 * h) + 16.0 * at(h) - 30.0 * f0 + 16.0 * at(-h) - at(-2 * h)) / (12.0 * h * h);
}

template <class Fn>
void for_each_subset(int n, int r, Fn&& fn) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) == r) fn(mask);
    }
}

// sum over |I| = r of prod_{i in I, j not in I} (l_i - l_j - i c)/(l_i - l_j) f(lambda - i 1_I)
Complex difference_operator(int r, const SpectralPoint& lambda, Complex c,
                            const std::function<Complex(const SpectralPoint&)>& f) {
    const int n = static_cast<int>(lambda.size());
    Complex total = 0.0;
    for_each_subset(n, r, [&](unsigned I) {
        Complex coeff = 1.0;
        SpectralPoint shifted = lambda;
        for (int i = 0; i < n; ++i) {
            if (!(I >> i & 1u)) continue;
            shifted[i] -= kI;
            for (int j = 0; j < n; ++j) {
                if (I >> j & 1u) continue;
                const Complex d = lambda[i] - lambda[j];
                coeff *= (d - kI * c) / d;
            }
        }
        total += coeff * f(shifted);
    });
    return total;
}

void check_difference_args(int r, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                           const char* who) {
    require_small(lambda, x, who);
    require_real(lambda, who);
    require_distinct(lambda, who);
    if (r < 1 || r > static_cast<int>(lambda.size())) throw DomainError(std::string(who) + ": need 1 <= r <= n");
    if (!(double(g) > 1.1)) throw DomainError(std::string(who) + ": needs g > 1.1 for the shifted Euler integrand");
}

std::vector<Complex> exp_positions(const PositionPoint& x) {
    std::vector<Complex> z;
    for (double v : x) z.emplace_back(std::exp(2.0 * kPi * v));
    return z;
}

}  // namespace

void FDStencil::validate() const {
    if (order != 3 && order != 5) throw DomainError("FDStencil: order must be 3 or 5");
    if (!(h > 0.0)) throw DomainError("FDStencil: h must be positive");
}

EigenResidual make_residual(Complex lhs, Complex rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    return {lhs, rhs, std::abs(lhs - rhs) / scale};
}

double cs_potential(const PositionPoint& x, Coupling g) {
    const double gv = g;
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double s = std::sinh(kPi * (x[i] - x[j]));
            if (s == 0.0) throw DomainError("cs_potential: coincident positions");
            v += 2.0 * kPi * kPi * gv * (gv - 1.0) / (s * s);
        }
    }
    return v;
}

Complex apply_cs_operator(const std::function<Complex(const PositionPoint&)>& f, const PositionPoint& x,
                          Coupling g, const FDStencil& stencil) {
    stencil.validate();
    const Complex f0 = f(x);
    Complex lap = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) lap += second_diff(f, x, a, stencil, f0);
    return -lap + cs_potential(x, g) * f0;
}

EigenResidual apply_cs_hamiltonian(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                   const FDStencil& stencil, const QuadSpec& spec) {
    require_small(lambda, x, "apply_cs_hamiltonian");
    require_real(lambda, "apply_cs_hamiltonian");
    stencil.validate();
    if (x.size() == 2 && x[0] == x[1]) throw DomainError("apply_cs_hamiltonian: x1 == x2");
    QuadSpec q = spec;
    q.abs_tol = spec.abs_tol * stencil.h * stencil.h;
    q.rel_tol = spec.rel_tol * stencil.h * stencil.h;
    auto h = [&](const PositionPoint& y) {
        Complex w = 1.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            for (std::size_t j = i + 1; j < y.size(); ++j) w *= weight_w(y[i] - y[j], g);
        }
        return w * euler_psi(lambda, y, g, q).value;
    };
    double e = 0.0;
    for (const Complex& l : lambda) e += std::norm(2.0 * kPi * l);
    const Complex lhs = apply_cs_operator(h, x, g, stencil);
    FDStencil coarse = stencil;
    coarse.h *= 2.0;
    const Complex lhs2 = apply_cs_operator(h, x, g, coarse);
    if (std::abs(lhs - lhs2) > 0.1 * std::max(std::abs(lhs), 1e-300)) {
        throw StepTooLarge("apply_cs_hamiltonian: Richardson check failed, reduce h");
    }
    return make_residual(lhs, e * h(x));
}

Complex elementary_symmetric(int r, const std::vector<Complex>& z) {
    std::vector<Complex> e(z.size() + 1, 0.0);
    e[0] = 1.0;
    for (const Complex& v : z) {
        for (std::size_t k = z.size(); k >= 1; --k) e[k] += v * e[k - 1];
    }
    if (r < 0 || r > static_cast<int>(z.size())) return 0.0;
    return e[r];
}

EigenResidual apply_macdonald_rational(int r, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                       const QuadSpec& spec) {
    check_difference_args(r, lambda, x, g, "apply_macdonald_rational");
    const int n = static_cast<int>(lambda.size());
    auto psi_at = [&](const SpectralPoint& l) { return euler_psi(l, x, g, spec).value; };
    const double sign = (r * (n - 1)) % 2 ? -1.0 : 1.0;
    const Complex lhs = sign * difference_operator(r, lambda, 1.0 - double(g), psi_at);
    return make_residual(lhs, elementary_symmetric(r, exp_positions(x)) * psi_at(lambda));
}

EigenResidual apply_dual_difference_Hr(int r, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                       const QuadSpec& spec) {
    check_difference_args(r, lambda, x, g, "apply_dual_difference_Hr");
    auto F_at = [&](const SpectralPoint& l) { return ho_normalization(l, g) * euler_psi(l, x, g, spec).value; };
    const Complex lhs = difference_operator(r, lambda, double(g), F_at);
    return make_residual(lhs, elementary_symmetric(r, exp_positions(x)) * F_at(lambda));
}

EigenResidual apply_baxter(Complex lambda_B, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                           const QuadSpec& spec) {
    require_small(lambda, x, "apply_baxter");
    require_real(lambda, "apply_baxter");
    const double gv = g;
    if (!(std::fabs(lambda_B.imag()) < 0.5 * gv)) throw DomainError("apply_baxter: need |Im lambda_B| < g/2");
    const double c = 2.0 * kPi * gamma(gv).real();
    const double decay = 0.9 * kPi * (gv - 2.0 * std::fabs(lambda_B.imag()));
    const Complex eig = [&] {
        Complex v = 1.0;
        for (const Complex& l : lambda) v *= dual_kernel_Khat(lambda_B - l, g);
        return v;
    }();
    const Complex psi_x = euler_psi(lambda, x, g, spec.tightened(10.0)).value;

    if (lambda.size() == 1) {
        const double l1 = lambda[0].real();
        auto f = [&](double y) { return cexp_i2pi(lambda_B * (x[0] - y) + l1 * y) * kernel_K(x[0] - y, g); };
        const Complex lhs =
            c * integrate_1d(f, Domain::line(x[0], decay, std::fabs(lambda_B.real() - l1)), spec).value;
        return make_residual(lhs, eig * psi_x);
    }

    // y1 > y2 by symmetry; the inner level is the Euler integral for Psi(y)
    const double l12 = (lambda[0] - lambda[1]).real();
    const double l2 = lambda[1].real();
    const double freq = std::fabs(lambda_B.real()) + std::fabs(l12) + std::fabs(l2);
    const double x_min = std::min(x[0], x[1]);
    auto Kx = [&](double y) { return kernel_K(x[0] - y, g) * kernel_K(x[1] - y, g); };
    std::array<NestedLevel, 3> levels;
    levels[0].domain = [&](std::span<const double>) { return Domain::line(0.5 * (x[0] + x[1]), decay, freq); };
    levels[0].factor = [&](std::span<const double> y) { return cexp_i2pi(-lambda_B * y[0] + l2 * y[0]) * Kx(y[0]); };
    levels[1].domain = [&](std::span<const double> y) {
        Domain d = Domain::until(y[0], decay, freq);
        d.center = std::min(y[0], x_min);
        return d;
    };
    levels[1].factor = [&](std::span<const double> y) {
        return cexp_i2pi(-lambda_B * y[1] + l2 * y[1]) * Kx(y[1]) * measure_mu(y[0] - y[1], g);
    };
    levels[2].domain = [&](std::span<const double> y) {
        Domain d = Domain::line(0.5 * (y[0] + y[1]), 0.9 * 2.0 * kPi * gv, std::fabs(l12));
        if (y[0] != y[1]) d.breakpoints = {y[1], y[0]};
        return d;
    };
    levels[2].factor = [&](std::span<const double> y) {
        return cexp_i2pi(l12 * y[2]) * kernel_K(y[0] - y[2], g) * kernel_K(y[1] - y[2], g);
    };
    const Complex pre = c * c * c * cexp_i2pi(lambda_B * (x[0] + x[1]));
    QuadSpec q = spec;
    q.abs_tol = spec.abs_tol / std::abs(pre);
    const Complex lhs = pre * integrate_nested(levels, q).value;
    return make_residual(lhs, eig * psi_x);
}

EigenResidual apply_dual_baxter(double x_B, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                const QuadSpec& spec) {
    require_small(lambda, x, "apply_dual_baxter");
    require_real(lambda, "apply_dual_baxter");
    g.require_above_one("apply_dual_baxter");
    const double gv = g;
    const double c = 2.0 * kPi * gamma(gv).real();
    const double decay = 0.8 * kPi;
    Complex eig = 1.0;
    for (double v : x) eig *= kernel_K(x_B - v, g);
    const Complex psi_x = euler_psi(lambda, x, g, spec.tightened(10.0)).value;

    if (lambda.size() == 1) {
        const double l1 = lambda[0].real();
        auto f = [&](double t) { return cexp_i2pi(x_B * (l1 - t) + t * x[0]) * detail::khat_real(l1 - t, gv); };
        const Complex lhs = integrate_1d(f, Domain::line(l1, decay, std::fabs(x_B - x[0])), spec).value / c;
        return make_residual(lhs, eig * psi_x);
    }

    // gamma1 > gamma2 by symmetry; the inner level is the Euler integral for Psi_gamma(x)
    const double l1 = lambda[0].real(), l2 = lambda[1].real();
    const double x12 = x[0] - x[1];
    const double xs = x[0] + x[1];
    const double freq = std::fabs(x_B) + std::fabs(xs) + std::fabs(x12);
    const double l_min = std::min(l1, l2);
    auto Kh = [&](double t) { return detail::khat_real(l1 - t, gv) * detail::khat_real(l2 - t, gv); };
    std::array<NestedLevel, 3> levels;
    levels[0].domain = [&](std::span<const double>) { return Domain::line(0.5 * (l1 + l2), decay, freq); };
    levels[0].factor = [&](std::span<const double> t) { return cexp_i2pi(-x_B * t[0]) * Kh(t[0]); };
    levels[1].domain = [&](std::span<const double> t) {
        Domain d = Domain::until(t[0], decay, freq);
        d.center = std::min(t[0], l_min);
        return d;
    };
    levels[1].factor = [&](std::span<const double> t) -> Complex {
        if (t[0] == t[1]) return 0.0;
        // muhat alone overflows far out in the tail
        const double lg = detail::log_khat_real(l1 - t[1], gv) + detail::log_khat_real(l2 - t[1], gv) +
                          detail::log_muhat_real(t[0] - t[1], gv);
        return cexp_i2pi((xs - x_B) * t[1]) * std::exp(lg);
    };
    levels[2].domain = [&](std::span<const double> t) {
        Domain d = Domain::line(0.5 * xs, 0.9 * 2.0 * kPi * gv, std::fabs(t[0] - t[1]));
        if (x12 != 0.0) d.breakpoints = {std::min(x[0], x[1]), std::max(x[0], x[1])};
        return d;
    };
    levels[2].factor = [&](std::span<const double> t) {
        return cexp_i2pi((t[0] - t[1]) * t[2]) * kernel_K(x[0] - t[2], g) * kernel_K(x[1] - t[2], g);
    };
    const Complex pre = cexp_i2pi(x_B * (l1 + l2)) / c;
    QuadSpec q = spec;
    q.abs_tol = spec.abs_tol / std::abs(pre);
    const Complex lhs = pre * integrate_nested(levels, q).value;
    return make_residual(lhs, eig * psi_x);
}

}  // namespace ho
