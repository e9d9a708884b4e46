#include "ho/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ho/errors.hpp"

namespace ho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogPi = 1.1447298858494001741;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

// log Gamma(z) for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
    const Complex zm = z - 1.0;
    Complex series = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) {
        series += kLanczos[k] / (zm + static_cast<double>(k));
    }
    const Complex t = zm + kLanczosG + 0.5;
    return kHalfLog2Pi + (zm + 0.5) * std::log(t) - t + std::log(series);
}

// sin(pi r), cos(pi r) for real r with exact zeros at the lattice points.
double sinpi_real(double x) {
    double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
    if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(kPi * r);
}

double cospi_real(double x) {
    double r = std::fabs(x - 2.0 * std::round(0.5 * x));  // r in [0, 1]
    if (r == 0.5) return 0.0;
    if (r > 0.5) return -std::sin(kPi * (r - 0.5));
    return std::sin(kPi * (0.5 - r));
}

bool near_nonpositive_integer(Complex z, double tol) {
    if (std::fabs(z.imag()) > tol) return false;
    const double n = std::round(z.real());
    return n <= 0.0 && std::fabs(z.real() - n) <= tol;
}

}  // namespace

Coupling::Coupling(double g) : g_(g) {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw DomainError("coupling constant must satisfy g > 0, got " + std::to_string(g));
    }
}

void Coupling::require_above_one(const char* what) const {
    if (!(g_ > 1.0)) {
        throw DomainError(std::string(what) + " requires g > 1, got g = " + std::to_string(g_));
    }
}

Complex sin_pi(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    return {sinpi_real(x) * std::cosh(kPi * y), cospi_real(x) * std::sinh(kPi * y)};
}

Complex log_sin_pi(Complex z) {
    const double y = z.imag();
    if (std::fabs(y) < 1.0) return std::log(sin_pi(z));
    // Phase of the dominant exponential, reduced mod 2.
    const double x = z.real() - 2.0 * std::round(0.5 * z.real());
    const Complex i(0.0, 1.0);
    if (y > 0.0) {
        const Complex small = std::exp(Complex(-2.0 * kPi * y, 2.0 * kPi * x));
        return Complex(kPi * y - std::log(2.0), 0.5 * kPi - kPi * x) + std::log(1.0 - small);
    }
    const Complex small = std::exp(Complex(2.0 * kPi * y, -2.0 * kPi * x));
    return Complex(-kPi * y - std::log(2.0), kPi * x - 0.5 * kPi) + std::log(1.0 - small);
}

Complex log_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("log_gamma: non-finite argument");
    }
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    if (near_nonpositive_integer(z, kPoleTolerance)) {
        throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
    }
    return kLogPi - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex rgamma(Complex z) {
    if (z.real() >= 0.5) return std::exp(-lanczos_log_gamma(z));
    const Complex s = sin_pi(z);
    if (s == Complex(0.0, 0.0)) return {0.0, 0.0};
    if (std::fabs(z.imag()) > 50.0) {
        return std::exp(log_sin_pi(z) + lanczos_log_gamma(1.0 - z) - kLogPi);
    }
    return s * std::exp(lanczos_log_gamma(1.0 - z)) / kPi;
}

double kernel_K(double x, Coupling g) {
    const double u = kPi * std::fabs(x);
    // log(2 ch u) = u + log1p(e^{-2u})
    return std::exp(-g.value() * (u + std::log1p(std::exp(-2.0 * u))));
}

Complex kernel_K(Complex x, Coupling g) {
    // Principal power; continuous on the strip |Im x| < 1/2 where 2 ch(pi x) has Re > 0.
    return std::exp(-g.value() * std::log(2.0 * std::cosh(kPi * x)));
}

double weight_w(double x, Coupling g) {
    if (x == 0.0) return 0.0;
    const double u = kPi * std::fabs(x);
    // log|2 sh u| = u + log(1 - e^{-2u})
    return std::exp(g.value() * (u + std::log(-std::expm1(-2.0 * u))));
}

double measure_mu(double x, Coupling g) {
    const double w = weight_w(x, g);
    return w * w;
}

Complex dual_kernel_Khat(Complex lambda, Coupling g) {
    const Complex i(0.0, 1.0);
    const double half = 0.5 * g.value();
    return std::exp(log_gamma(i * lambda + half) + log_gamma(-i * lambda + half));
}

Complex dual_weight_what(Complex lambda, Coupling g) {
    const Complex i(0.0, 1.0);
    return rgamma(i * lambda) * rgamma(-i * lambda + g.value());
}

Complex dual_measure_muhat(Complex lambda, Coupling g) {
    return dual_weight_what(lambda, g) * dual_weight_what(-lambda, g);
}

double alpha_n(int n, Coupling g) {
    if (n < 1) throw DomainError("alpha_n requires n >= 1");
    double log_alpha = 0.0;
    const double lg = std::lgamma(g.value());
    for (int k = 1; k <= n; ++k) log_alpha += std::lgamma(k * g.value()) - lg;
    return std::exp(log_alpha);
}

double norm_const(int n, Coupling g, bool dual) {
    if (n < 0) throw DomainError("norm_const requires n >= 0");
    const double base = 2.0 * kPi * std::tgamma(g.value());
    const double power = std::pow(base, dual ? -n : n);
    return power / std::tgamma(n + 1.0);
}

namespace detail {

double log_khat_real(double u, double g) {
    return 2.0 * lanczos_log_gamma(Complex(0.5 * g, u)).real();
}

double khat_real(double u, double g) { return std::exp(log_khat_real(u, g)); }

double log_muhat_real(double u, double g) {
    if (u == 0.0) return -INFINITY;
    const double a = kPi * std::fabs(u);
    // 1/(Gamma(iu) Gamma(-iu)) = u sh(pi u) / pi
    const double log_sh = a + std::log(-std::expm1(-2.0 * a)) - std::log(2.0);
    const double log_recip = std::log(std::fabs(u)) + log_sh - kLogPi;
    return log_recip - 2.0 * lanczos_log_gamma(Complex(g, u)).real();
}

double muhat_real(double u, double g) { return u == 0.0 ? 0.0 : std::exp(log_muhat_real(u, g)); }

}  // namespace detail

}  // namespace ho
