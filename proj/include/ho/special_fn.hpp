#pragma once

#include <complex>

namespace ho {

using Complex = std::complex<double>;

/// Coupling constant g of the Calogero-Sutherland model. Always g > 0;
/// operations that need g > 1 call require_above_one().
class Coupling {
public:
    explicit Coupling(double g);

    double value() const noexcept { return g_; }
    operator double() const noexcept { return g_; }

    /// Throws DomainError naming `what` unless g > 1.
    void require_above_one(const char* what) const;

private:
    double g_;
};

/// Distance below which an argument counts as sitting on a gamma pole.
inline constexpr double kPoleTolerance = 1e-13;

/// log Gamma(z). On Re z >= 1/2 this is the principal branch continuous from
/// the positive axis; for Re z < 1/2 it is obtained by reflection and the
/// imaginary part is only fixed modulo 2*pi. Throws PoleError at 0,-1,-2,...
Complex log_gamma(Complex z);
Complex gamma(Complex z);

/// 1/Gamma(z), entire. Returns exact zeros on the nonpositive integers.
Complex rgamma(Complex z);

/// sin(pi z) with exact zeros at integer z.
Complex sin_pi(Complex z);

/// log sin(pi z), stable for large |Im z|. Defined modulo 2*pi*i.
Complex log_sin_pi(Complex z);

// Nonrelativistic kernel, weight and measure:
//   K(x) = (2 ch pi x)^-g,  w(x) = |2 sh pi x|^g,  mu(x) = w(x)^2.
double kernel_K(double x, Coupling g);
Complex kernel_K(Complex x, Coupling g);
double weight_w(double x, Coupling g);
double measure_mu(double x, Coupling g);

/// Khat(lambda) = Gamma(i lambda + g/2) Gamma(-i lambda + g/2).
/// Throws PoleError at lambda = -+ i (g/2 + m).
Complex dual_kernel_Khat(Complex lambda, Coupling g);

/// what(lambda) = 1 / (Gamma(i lambda) Gamma(-i lambda + g)); entire.
Complex dual_weight_what(Complex lambda, Coupling g);

/// muhat(lambda) = what(lambda) what(-lambda).
Complex dual_measure_muhat(Complex lambda, Coupling g);

/// alpha_n(g) = prod_{k=1}^n Gamma(k g) / Gamma(g).
double alpha_n(int n, Coupling g);

/// d_n(g) = (2 pi Gamma(g))^n / n!  or, for dual = true,
/// dhat_n(g) = (2 pi Gamma(g))^-n / n!.
double norm_const(int n, Coupling g, bool dual);

namespace detail {
// Real-argument fast paths used inside quadrature loops.
double khat_real(double u, double g);   // Khat(u), u real
double muhat_real(double u, double g);  // muhat(u), u real
double log_muhat_real(double u, double g);
double log_khat_real(double u, double g);
}  // namespace detail

}  // namespace ho
