#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ho/errors.hpp"
#include "ho/verification.hpp"

using ho::Complex;
using ho::Coupling;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

ho::QuadSpec spec(double rel) {
    ho::QuadSpec q;
    q.rel_tol = rel;
    q.abs_tol = 1e-3 * rel;
    return q;
}

double binom(int n, int r) {
    double v = 1.0;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

// (2 ch pi x)^{-g} written out again
double cosh_kernel(double x, double g) { return std::pow(2.0 * std::cosh(kPi * x), -g); }

}  // namespace

TEST_CASE("Barnes first lemma") {
    // (pi t / sh pi t)^2 integrates to 1/3 against dt / 2 pi ... times 1/2
    auto r = ho::barnes_check(1.0, 1.0, -1.0, -1.0, spec(1e-11));
    CHECK(r.pass);
    CHECK(std::abs(r.cases[0].lhs - 1.0 / 6.0) < 1e-10);
    CHECK(std::abs(r.cases[0].rhs - 1.0 / 6.0) < 1e-13);
    // (pi / ch pi t)^2 integrates to 2 pi
    r = ho::barnes_check(0.5, 0.5, -0.5, -0.5, spec(1e-11));
    CHECK(std::abs(r.cases[0].lhs - 1.0) < 1e-10);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(0.2, 1.5), im(-0.8, 0.8);
    for (int k = 0; k < 6; ++k) {
        const Complex a1(re(rng), im(rng)), a2(re(rng), im(rng));
        const Complex b1(-re(rng), im(rng)), b2(-re(rng), im(rng));
        const auto c = ho::barnes_check(a1, a2, b1, b2, spec(1e-11));
        INFO(a1 << a2 << b1 << b2 << " rel " << c.cases[0].rel_diff);
        CHECK(c.pass);
    }
    CHECK_THROWS_AS(ho::barnes_check(-0.1, 1.0, -1.0, -1.0, spec(1e-8)), ho::DomainError);
}

TEST_CASE("Gustafson integral") {
    const Coupling g(2.0);
    // n = 1 reduces to the Barnes lemma above
    auto one = ho::gustafson_check(1, {0.5, 0.5}, {-0.5, -0.5}, spec(1e-11));
    CHECK(std::abs(one.cases[0].lhs - 1.0) < 1e-10);

    // alpha = i lambda + g/2, beta = i lambda - g/2 gives the zero-point value
    const ho::SpectralPoint l2{0.4, -0.3};
    std::vector<Complex> a, b;
    for (const Complex& v : l2) {
        a.push_back(kI * v + 1.0);
        b.push_back(kI * v - 1.0);
    }
    one = ho::gustafson_check(1, a, b, spec(1e-11));
    CHECK(one.pass);
    CHECK(std::abs(one.cases[0].rhs / (ho::gamma(2.0) * ho::psi_zero(l2, g)) - 1.0) < 1e-12);

    const ho::SpectralPoint l3{0.5, 0.1, -0.6};
    a.clear();
    b.clear();
    for (const Complex& v : l3) {
        a.push_back(kI * v + 1.0);
        b.push_back(kI * v - 1.0);
    }
    const auto two = ho::gustafson_check(2, a, b, spec(1e-7));
    INFO("rel " << two.cases[0].rel_diff);
    CHECK(two.pass);
    CHECK(std::abs(two.cases[0].rhs / (2.0 * ho::gamma(2.0) * ho::gamma(4.0) * ho::psi_zero(l3, g)) - 1.0) < 1e-12);

    const auto gen = ho::gustafson_check(2, {Complex(0.7, 0.2), 0.9, Complex(1.1, -0.3)},
                                         {Complex(-0.6, 0.1), -0.8, Complex(-0.5, 0.4)}, spec(1e-7));
    INFO("rel " << gen.cases[0].rel_diff);
    CHECK(gen.pass);
    CHECK_THROWS_AS(ho::gustafson_check(2, {1.0, 1.0}, {-1.0, -1.0}, spec(1e-6)), ho::DomainError);
}

TEST_CASE("rational kernel identity") {
    // alpha = 0: every term is 1
    for (int n = 1; n <= 4; ++n) {
        std::vector<Complex> z, y;
        for (int i = 0; i < n; ++i) {
            z.push_back(0.3 * i - 0.1);
            y.push_back(-0.7 * i + 1.95);
        }
        for (int r = 0; r <= n; ++r) {
            const auto c = ho::kernel_identity_check(n, r, z, y, 0.0);
            CHECK(c.cases[0].lhs.real() == doctest::Approx(binom(n, r)));
            CHECK(c.pass);
        }
    }
    // n = 2, r = 1 by hand
    const double z1 = 1.3, z2 = -0.7, y1 = 0.2, y2 = 2.1, a = 0.9;
    auto side = [&](double u1, double u2, double v1, double v2, double al) {
        auto term = [&](double ui, double uj) {
            return (ui - uj - al) / (ui - uj) * (ui - v1 + al) / (ui - v1) * (ui - v2 + al) / (ui - v2);
        };
        return term(u1, u2) + term(u2, u1);
    };
    const auto c = ho::kernel_identity_check(2, 1, {z1, z2}, {y1, y2}, a);
    CHECK(c.cases[0].lhs.real() == doctest::Approx(side(z1, z2, y1, y2, a)).epsilon(1e-14));
    CHECK(c.cases[0].rhs.real() == doctest::Approx(side(y1, y2, z1, z2, -a)).epsilon(1e-14));
    CHECK(c.pass);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 2; n <= 4; ++n) {
        for (int r = 1; r <= n; ++r) {
            std::vector<Complex> zz, yy;
            for (int i = 0; i < n; ++i) {
                zz.emplace_back(u(rng), 0.1 * u(rng));
                yy.emplace_back(u(rng), 0.1 * u(rng));
            }
            CHECK(ho::kernel_identity_check(n, r, zz, yy, Complex(0.37, 0.2)).pass);
        }
    }
    CHECK_THROWS_AS(ho::kernel_identity_check(2, 1, {0.5, 0.5}, {y1, y2}, a), ho::DegenerateInput);
    CHECK_THROWS_AS(ho::kernel_identity_check(2, 1, {z1, z2}, {z1, y2}, a), ho::DegenerateInput);
}

TEST_CASE("Pochhammer identity") {
    const auto c2 = ho::compositions(2, 2);
    REQUIRE(c2.size() == 3);
    CHECK(c2[0] == std::vector<int>{0, 2});
    CHECK(c2[2] == std::vector<int>{2, 0});
    CHECK(ho::compositions(3, 4).size() == 15);

    CHECK(ho::rational_hypergeom_check(3, 0, {0.4, -1.1, 0.3}, {2.2, 0.9, -0.45}, 0.7).cases[0].lhs == Complex(1.0));

    // n = 2, K = 1 by hand: the compositions (0,1) and (1,0)
    const double x1 = 0.4, x2 = -1.1, y1 = 2.2, y2 = 0.9, a = 0.7;
    auto lhs_term = [&](double xi, double xj) {
        // k_i = 1, k_j = 0
        return (-1.0 - a) / -1.0 * (xi - xj - a) / (xi - xj) * (xi - y1 + a) / (xi - y1) * (xi - y2 + a) / (xi - y2);
    };
    auto rhs_term = [&](double ya, double yb) {
        // k_a = 1: factors (-1 - alpha)/(-1) and (y_b - y_a - alpha)/(y_b - y_a)
        return (-1.0 - a) / -1.0 * (yb - ya - a) / (yb - ya) * (x1 - ya + a) / (x1 - ya) *
               (x2 - ya + a) / (x2 - ya);
    };
    const auto r = ho::rational_hypergeom_check(2, 1, {x1, x2}, {y1, y2}, a);
    CHECK(r.cases[0].lhs.real() == doctest::Approx(lhs_term(x1, x2) + lhs_term(x2, x1)).epsilon(1e-14));
    CHECK(r.cases[0].rhs.real() == doctest::Approx(rhs_term(y1, y2) + rhs_term(y2, y1)).epsilon(1e-14));
    CHECK(r.pass);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 1; n <= 3; ++n) {
        for (int K = 1; K <= 4; ++K) {
            std::vector<Complex> x, y;
            for (int i = 0; i < n; ++i) {
                x.emplace_back(u(rng), 0.2);
                y.emplace_back(u(rng), -0.3);
            }
            const auto c = ho::rational_hypergeom_check(n, K, x, y, Complex(0.7, 0.1));
            INFO("n " << n << " K " << K << " rel " << c.cases[0].rel_diff);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("commutativity of Baxter kernels") {
    const Coupling g(2.0);
    const Complex l(0.3, 0.4);
    const std::vector<double> z{0.5, -0.2};
    const auto r = ho::baxter_commutativity_check(1, z, l, g, spec(1e-11), 1e-7);
    REQUIRE(r.cases.size() == 2);
    CHECK(r.pass);
    // the cosh side by a plain trapezoid sum
    Complex tr = 0.0;
    const double h = 0.005;
    for (int k = -4000; k <= 4000; ++k) {
        const double t = k * h;
        tr += std::exp(2.0 * kPi * kI * l * t) * cosh_kernel(0.5 - t, 2.0) * cosh_kernel(-0.2 - t, 2.0);
    }
    tr *= h;
    CHECK(std::abs(r.cases[0].lhs - tr) < 1e-11);

    const auto two = ho::baxter_commutativity_check(2, {0.5, -0.2, 0.1, 0.7}, Complex(0.2, -0.3), Coupling(2.5),
                                                    spec(1e-7), 1e-4);
    INFO("rel " << two.cases[0].rel_diff << " " << two.cases[1].rel_diff);
    CHECK(two.pass);
    // |Im lambda| >= 1 leaves only the cosh kernels
    CHECK(ho::baxter_commutativity_check(1, z, Complex(0.1, 1.2), g, spec(1e-10), 1e-7).cases.size() == 1);
    CHECK_THROWS_AS(ho::baxter_commutativity_check(1, z, Complex(0.1, 2.0), g, spec(1e-8), 1e-7), ho::DomainError);
}

TEST_CASE("kernel function identity") {
    const Coupling g(2.0);
    const std::vector<double> x{0.9, 0.0}, y{0.4, -0.5};
    const auto k1 = ho::kernel_function_identity_check(1, x, y, g, {5, 1e-3});
    CHECK(k1.pass);
    // translation invariance: the x-derivatives alone, by a wide symmetric difference
    auto prod = [&](double s) {
        double v = 1.0;
        for (double xi : x) {
            for (double ya : y) v *= cosh_kernel(xi + s - ya, 2.0);
        }
        return v;
    };
    CHECK(std::abs(k1.cases[0].lhs - (prod(1e-4) - prod(-1e-4)) / 2e-4) < 1e-6);
    const auto k2 = ho::kernel_function_identity_check(2, x, y, g, {5, 1e-3});
    INFO("rel " << k2.cases[0].rel_diff);
    CHECK(k2.pass);
    CHECK(ho::kernel_function_identity_check(2, {0.3, -0.6}, {1.1, 0.2}, Coupling(3.0), {5, 1e-3}).pass);
    CHECK_THROWS_AS(ho::kernel_function_identity_check(3, x, y, g, {}), ho::DomainError);
}
