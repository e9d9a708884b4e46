#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ho/errors.hpp"
#include "ho/wavefunctions.hpp"

using ho::Complex;
using ho::Coupling;
using ho::PositionPoint;
using ho::SpectralPoint;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

ho::QuadSpec tight() {
    ho::QuadSpec q;
    q.abs_tol = 1e-13;
    q.rel_tol = 1e-11;
    return q;
}

// n = 2 integral by the trapezoid rule (spectrally accurate for analytic decaying integrands)
Complex euler2_trapezoid(SpectralPoint l, PositionPoint x, double g) {
    const double h = 0.01;
    Complex s = 0.0;
    for (int k = -2000; k <= 2000; ++k) {
        const double y = 0.5 * (x[0] + x[1]) + h * k;
        const double k1 = std::pow(2.0 * std::cosh(kPi * (x[0] - y)), -g);
        const double k2 = std::pow(2.0 * std::cosh(kPi * (x[1] - y)), -g);
        s += std::exp(2.0 * kPi * kI * ((l[0] - l[1]) * y + l[1] * (x[0] + x[1]))) * k1 * k2;
    }
    return 2.0 * kPi * std::tgamma(g) * h * s;
}

// |Gamma(g + i t)|^2 for integer g from |Gamma(1 + i t)|^2 = pi t / sh(pi t)
double abs_gamma_sq(int g, double t) {
    double v = t == 0.0 ? 1.0 : kPi * t / std::sinh(kPi * t);
    for (int k = 1; k < g; ++k) v *= k * k + t * t;
    return v;
}

}  // namespace

TEST_CASE("index matrix bookkeeping") {
    ho::HCIndexMatrix M(3);
    M.set(2, 1, 1);
    M.set(3, 1, 2);
    M.set(3, 2, 4);
    CHECK(M.degree() == 7);
    CHECK(M.p(2, 1) == 3);
    CHECK(M.p(3, 2) == 4);
    CHECK(M.p(4, 1) == 0);
    CHECK(M(1, 2) == 0);
    CHECK_THROWS_AS(M.set(1, 2, 1), ho::DomainError);
    CHECK_THROWS_AS(M.set(2, 1, -1), ho::DomainError);
}

TEST_CASE("closed form at the origin") {
    const Coupling g(2.0);
    CHECK(ho::psi_zero({0.0, 0.0}, g).real() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(ho::psi_zero({0.0, 0.0, 0.0}, g).real() == doctest::Approx(1.0 / 720.0).epsilon(1e-14));
    // lambda_12 = 1: |Gamma(2 + i)|^2 / 6
    const Complex z = ho::psi_zero({0.5, -0.5}, g);
    CHECK(z.real() == doctest::Approx(abs_gamma_sq(2, 1.0) / 6.0).epsilon(1e-13));
    CHECK(z.real() == doctest::Approx(0.0906763517).epsilon(1e-9));
    CHECK(std::fabs(z.imag()) < 1e-15);
    // Gamma(g)^2 / Gamma(2g) via the sech integral, at a non-integer coupling
    const double gv = 1.7;
    const double sech = std::sqrt(kPi) * std::tgamma(gv) / std::tgamma(gv + 0.5) * std::pow(2.0, -2 * gv) / kPi;
    CHECK(ho::psi_zero({0.0, 0.0}, Coupling(gv)).real() ==
          doctest::Approx(2 * kPi * std::tgamma(gv) * sech).epsilon(1e-12));
}

TEST_CASE("two particles: Euler, Mellin-Barnes, series and trapezoid agree") {
    for (double gv : {1.5, 2.0, 3.0}) {
        const Coupling g(gv);
        for (auto [l, x] : {std::pair{SpectralPoint{0.5, -0.3}, PositionPoint{1.0, 0.0}},
                            std::pair{SpectralPoint{1.2, 0.1}, PositionPoint{0.3, -0.4}},
                            std::pair{SpectralPoint{-0.7, 0.9}, PositionPoint{2.0, 0.5}}}) {
            const Complex ref = euler2_trapezoid(l, x, gv);
            INFO("g " << gv << " lambda " << l[0] << "," << l[1] << " x " << x[0] << "," << x[1]);
            const auto e = ho::euler_psi(l, x, g, tight());
            const auto m = ho::mb_psi(l, x, g, tight());
            const auto s = ho::hc_psi_symmetrized(l, x, g, {});
            CHECK(std::abs(e.value - ref) < 1e-11);
            CHECK(std::abs(m.value - ref) < 1e-11);
            CHECK(std::abs(s.result.value - ref) < 1e-11);
            CHECK(e.abs_err < 1e-10);
        }
    }
    const auto z = ho::euler_psi({0.5, -0.5}, {0.0, 0.0}, Coupling(2.0), tight());
    CHECK(std::abs(z.value - ho::psi_zero({0.5, -0.5}, Coupling(2.0))) < 1e-12);
}

TEST_CASE("series coefficients") {
    const Coupling g(2.3);
    const SpectralPoint l{0.4, -0.35};
    ho::HCIndexMatrix M0(2), M1(2);
    M1.set(2, 1, 1);
    const Complex l12 = l[0] - l[1];
    const Complex c0 = ho::hc_coeff(M0, l, g);
    CHECK(rel(c0, 1.0 / ho::dual_weight_what(l12, g)) < 1e-13);
    const Complex ratio = ho::hc_coeff(M1, l, g) / c0;
    CHECK(rel(ratio, 2.3 * (2.3 - kI * l12) / (1.0 - kI * l12)) < 1e-12);

    // both ways of writing the coefficient agree
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_int_distribution<int> m(0, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const SpectralPoint l3{u(rng), u(rng), u(rng)};
        ho::HCIndexMatrix M(3);
        M.set(2, 1, m(rng));
        M.set(3, 1, m(rng));
        M.set(3, 2, m(rng));
        const Complex a = ho::hc_coeff(M, l3, g);
        const Complex b = ho::hc_coeff_what_form(M, l3, g);
        CHECK(rel(a, b) < 1e-10);
    }
    CHECK_THROWS_AS(ho::hc_coeff(M1, {0.3, 0.3}, g), ho::PoleError);
}

TEST_CASE("series truncation") {
    const Coupling g(2.0);
    const SpectralPoint l{0.5, 0.1, -0.4};
    const auto s = ho::hc_psi(l, {1.0, 0.4, 0.0}, g, {});
    CHECK(s.k_used >= 2);
    CHECK(s.shell_norms.back() <= 1e-12 * s.shell_norms.front());
    ho::SeriesOptions fixed;
    fixed.k_max = 3;
    CHECK(ho::hc_psi(l, {1.0, 0.4, 0.0}, g, fixed).k_used == 3);
    ho::SeriesOptions short_run;
    short_run.k_limit = 4;
    CHECK_THROWS_AS(ho::hc_psi(l, {0.02, 0.01, 0.0}, g, short_run), ho::Divergence);
    CHECK_THROWS_AS(ho::hc_psi(l, {0.0, 0.4, 1.0}, g, {}), ho::DomainError);
    CHECK_THROWS_AS(ho::hc_psi({0.2, 0.2, 0.1}, {1.0, 0.4, 0.0}, g, {}), ho::PoleError);
}

TEST_CASE("three particles") {
    const Coupling g(2.0);
    ho::QuadSpec q;
    q.abs_tol = 1e-12;
    q.rel_tol = 1e-7;
    const SpectralPoint l{0.5, 0.1, -0.4};
    const PositionPoint x{1.0, 0.4, 0.0};
    const Complex s = ho::hc_psi_symmetrized(l, x, g, {}).result.value;
    const auto e = ho::euler_psi(l, x, g, q);
    CHECK(rel(e.value, s) < 1e-7);
    CHECK(std::abs(e.value - s) < 10 * e.abs_err + 1e-16);
    const auto z = ho::euler_psi(l, {0.0, 0.0, 0.0}, g, q);
    CHECK(rel(z.value, ho::psi_zero(l, g)) < 1e-7);
    ho::QuadSpec loose;
    loose.abs_tol = 1e-10;
    loose.rel_tol = 1e-5;
    const auto m = ho::mb_psi(l, x, g, loose);
    CHECK(rel(m.value, s) < 1e-4);
    CHECK(ho::euler_psi({0.0, 0.0, 0.0}, {0, 0, 0}, g, q).value.real() ==
          doctest::Approx(1.0 / 720.0).epsilon(1e-7));
}

TEST_CASE("complex spectral parameters") {
    const Coupling g(2.0);
    const SpectralPoint l{Complex(0.3, -1.0), 0.1, -0.4};
    const PositionPoint x{0.9, 0.3, -0.2};
    ho::QuadSpec q;
    q.abs_tol = 1e-12;
    q.rel_tol = 1e-7;
    const Complex s = ho::hc_psi_symmetrized(l, x, g, {}).result.value;
    CHECK(rel(ho::euler_psi(l, x, g, q).value, s) < 1e-6);
    const SpectralPoint l2{Complex(0.3, -1.0), -0.4};
    const PositionPoint x2{0.7, -0.1};
    CHECK(rel(ho::euler_psi(l2, x2, g, tight()).value, ho::hc_psi_symmetrized(l2, x2, g, {}).result.value) <
          1e-10);
    CHECK_THROWS_AS(ho::euler_psi({Complex(0, -1.95), 0.0}, x2, g, q), ho::DomainError);
    CHECK_THROWS_AS(ho::mb_psi({Complex(0, 1.0), 0.0}, x2, g, q), ho::DomainError);
    CHECK_THROWS_AS(ho::mb_psi({0.1, 0.0}, x2, Coupling(0.8), q), ho::DomainError);
}

TEST_CASE("symmetry and translation covariance") {
    const Coupling g(2.5);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const SpectralPoint l{u(rng), u(rng)};
        const PositionPoint x{u(rng), u(rng)};
        const Complex v = ho::euler_psi(l, x, g, tight()).value;
        CHECK(std::abs(ho::euler_psi(l, {x[1], x[0]}, g, tight()).value - v) < 1e-12);
        CHECK(std::abs(ho::euler_psi({l[1], l[0]}, x, g, tight()).value - v) < 1e-12);
        const double c = u(rng);
        const Complex shifted = ho::euler_psi(l, {x[0] + c, x[1] + c}, g, tight()).value;
        CHECK(std::abs(shifted - std::exp(2.0 * kPi * kI * c * (l[0] + l[1])) * v) < 1e-12);
        CHECK(std::abs(ho::mb_psi(l, x, g, tight()).value - v) < 1e-11);
    }
}

TEST_CASE("normalized function") {
    const Coupling g(2.0);
    for (const SpectralPoint& l : {SpectralPoint{0.4, -0.3}, SpectralPoint{0.5, 0.1, -0.4}}) {
        const PositionPoint zero(l.size(), 0.0);
        CHECK(std::abs(ho::ho_F(l, zero, g, ho::Rep::Zero, tight()).value - 1.0) < 1e-13);
    }
    const auto f = ho::ho_F({0.4, -0.3}, {0.0, 0.0}, g, ho::Rep::Euler, tight());
    CHECK(std::abs(f.value - 1.0) < 1e-11);
    CHECK(ho::parse_rep("mb") == ho::Rep::MellinBarnes);
    CHECK(ho::rep_name(ho::Rep::Series) == "series");
    CHECK_THROWS_AS(ho::parse_rep("fourier"), ho::DomainError);
    CHECK_THROWS_AS(ho::psi({0.1, 0.2}, {0.1, 0.0}, g, ho::Rep::Zero, tight()), ho::DomainError);
}

TEST_CASE("leading asymptotics") {
    const Coupling g(2.0);
    const SpectralPoint l{0.35, -0.2};
    // the correction to the leading term is O(e^{-2 pi d})
    for (double d : {1.5, 2.5, 3.5}) {
        const PositionPoint x{d, 0.0};
        const Complex exact = ho::hc_psi_symmetrized(l, x, g, {}).result.value;
        const Complex as = ho::psi_asymptotic(l, x, g, ho::Chamber::Descending);
        const double scaled = std::abs(exact - as) * std::exp(kPi * 2.0 * d);
        CHECK(scaled < 50.0 * std::exp(-2.0 * kPi * d));
        CHECK(scaled > 1e-3 * std::exp(-2.0 * kPi * d));
        // ascending chamber is the mirror image
        const Complex asc = ho::psi_asymptotic(l, {0.0, d}, g, ho::Chamber::Ascending);
        CHECK(rel(asc, as) < 1e-13);
        CHECK(rel(ho::phi_asymptotic(l, x, g), ho::what_product(l, g) * as) < 1e-12);
    }
    CHECK_THROWS_AS(ho::psi_asymptotic(l, {0.0, 1.0}, g, ho::Chamber::Descending), ho::DomainError);
    const SpectralPoint l3{0.5, 0.1, -0.4};
    const PositionPoint x3{6.0, 3.0, 0.0};
    CHECK(rel(ho::psi_asymptotic(l3, x3, g, ho::Chamber::Descending),
              ho::hc_psi_symmetrized(l3, x3, g, {}).result.value) < 1e-6);
}

TEST_CASE("renormalized function and helpers") {
    const Coupling g(2.0);
    const SpectralPoint l{0.35, -0.2};
    const PositionPoint x{0.8, 0.1};
    const auto phi = ho::phi_renormalized(l, x, g, tight());
    CHECK(rel(phi.value, ho::what_product(l, g) * ho::mb_psi(l, x, g, tight()).value) < 1e-14);
    const auto chk = ho::phi_check(l, x, g, tight(), ho::Rep::Euler);
    CHECK(rel(chk.value, std::exp(kPi * 2.0 * 0.7) * ho::phi_renormalized(l, x, g, tight(), ho::Rep::Euler).value) <
          1e-13);
    CHECK(ho::lattice_gap({1.0, 0.0, -0.5}) == doctest::Approx(2.0 * 2.5 * 1.5));
    CHECK(ho::bound_exponent(2, 2.7) == doctest::Approx(2.7));
    CHECK(ho::bound_exponent(3, 2.0) == doctest::Approx(8.0));
    CHECK(ho::bound_exponent(3, 5.0) == doctest::Approx(20.0 - 3.0));
    CHECK(ho::x_dot_rho({3.0, 1.0, 0.0}) == doctest::Approx(3.0));
    CHECK(ho::min_gap({3.0, 1.0, 0.5}) == doctest::Approx(0.5));
}
