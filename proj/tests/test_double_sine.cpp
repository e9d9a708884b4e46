#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ho/double_sine.hpp"
#include "ho/errors.hpp"
#include "ho/quadrature.hpp"

using ho::Complex;
using ho::Periods;

namespace {

constexpr double kPi = std::numbers::pi;

// S2 on the strip from the real-axis representation
//   log S2(z) = -int_0^inf [sh(a t)/(2 sh(w1 t) sh(w2 t)) - a/(2 w1 w2 t)] dt/t,  a = w1 + w2 - 2z.
Complex s2_oracle(Complex z, double w1, double w2) {
    const Complex a = w1 + w2 - 2.0 * z;
    const double c = w1 * w2;
    auto head = [&](double t) -> Complex {
        if (t < 1e-3) return a * (a * a - w1 * w1 - w2 * w2) / (12.0 * c);
        return (std::sinh(a * t) / (2.0 * std::sinh(w1 * t) * std::sinh(w2 * t)) - a / (2.0 * c * t)) / t;
    };
    auto tail = [&](double t) -> Complex {
        return std::sinh(a * t) / (2.0 * std::sinh(w1 * t) * std::sinh(w2 * t) * t);
    };
    ho::QuadSpec q;
    q.abs_tol = 1e-13;
    q.rel_tol = 1e-13;
    ho::Domain d = ho::Domain::interval(0.0, 1.0);
    d.breakpoints = {1e-3};
    const double decay = w1 + w2 - std::fabs(a.real());
    const Complex log_s = ho::integrate_1d(head, d, q).value +
                          ho::integrate_1d(tail, ho::Domain::from(1.0, decay), q).value - a / (2.0 * c);
    return std::exp(-log_s);
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

Complex strip_point(std::mt19937_64& rng, const Periods& w) {
    std::uniform_real_distribution<double> u(0.05, 0.95), v(-1.5, 1.5);
    return {u(rng) * w.sum(), v(rng)};
}

}  // namespace

TEST_CASE("second Bernoulli polynomial") {
    const Periods w(1.3, 0.4);
    CHECK(std::abs(ho::bernoulli_B22(0.5 * w.sum(), w) - (-(1.69 + 0.16) / (12 * 0.52))) < 1e-15);
    CHECK(std::abs(ho::bernoulli_B22(0.0, Periods(1, 1)) - 5.0 / 6.0) < 1e-15);
    const Complex z(0.37, -0.8);
    CHECK(std::abs(ho::bernoulli_B22(z, w) - ho::bernoulli_B22(w.sum() - z, w)) < 1e-14);
}

TEST_CASE("midpoint value and independent representation") {
    const Complex mid = ho::s2(1.0, Periods(1, 1));
    CHECK(std::abs(mid - 1.0) < 1e-12);
    for (Complex z : {Complex(0.3, 0.1), Complex(1.1, -0.6), Complex(0.85, 0.0)}) {
        INFO("z = " << z);
        CHECK(rel(ho::s2(z, Periods(1, 0.7)), s2_oracle(z, 1, 0.7)) < 1e-8);
    }
    CHECK(rel(ho::s2(Complex(0.5, 0.4), Periods(2, 1)), s2_oracle(Complex(0.5, 0.4), 2, 1)) < 1e-8);
}

TEST_CASE("functional equations") {
    const Periods w(1, 0.7);
    const Complex z(0.3, 0.1);
    CHECK(rel(ho::s2(z, w) / ho::s2(z + 1.0, w), 2.0 * std::sin(kPi * z / 0.7)) < 1e-8);
    std::mt19937_64 rng(5);
    for (const Periods& p : {Periods(1, 0.7), Periods(1, 0.13), Periods(2.5, 1)}) {
        for (int k = 0; k < 50; ++k) {
            const Complex z = strip_point(rng, p);
            const Complex s = ho::s2(z, p);
            INFO("z = " << z << " periods " << p.w1 << "," << p.w2);
            CHECK(rel(s / ho::s2(z + p.w1, p), 2.0 * std::sin(kPi * z / p.w2)) < 1e-8);
            CHECK(rel(s / ho::s2(z + p.w2, p), 2.0 * std::sin(kPi * z / p.w1)) < 1e-8);
            CHECK(std::abs(s * ho::s2(p.sum() - z, p) - 1.0) < 1e-9);
            const Complex prod = 4.0 * std::sin(kPi * z / p.w1) * std::sin(kPi * z / p.w2);
            CHECK(std::abs(s * ho::s2(-z, p) + prod) < 1e-8 * std::max(1.0, std::abs(prod)));
            CHECK(rel(ho::s2(z, Periods(p.w2, p.w1)), s) < 1e-10);
            for (double gam : {0.5, 2.0, kPi}) {
                CHECK(rel(ho::s2(gam * z, Periods(gam * p.w1, gam * p.w2)), s) < 1e-9);
            }
        }
    }
}

TEST_CASE("zeros and poles") {
    const Periods w(1, 0.7);
    CHECK_THROWS_AS(ho::s2(0.0, w), ho::ZeroError);
    CHECK_THROWS_AS(ho::s2(-1.4, w), ho::ZeroError);
    CHECK_THROWS_AS(ho::s2(-1.7, w), ho::ZeroError);
    CHECK_THROWS_AS(ho::s2(1.7, w), ho::PoleError);
    CHECK_THROWS_AS(ho::s2(3.4, w), ho::PoleError);
    CHECK_NOTHROW(ho::s2(-1.5, w));
    CHECK_THROWS_AS(Periods(0.0, 1.0), ho::DomainError);
    // far from the strip the shift relations take over
    const Complex z(-3.2, 0.3);
    CHECK(rel(ho::s2(z, w), s2_oracle(z + 2.0 + 1.4, 1, 0.7) * [&] {
              Complex f = 1.0;
              Complex u = z;
              for (int k = 0; k < 2; ++k, u += 1.0) f *= 2.0 * std::sin(kPi * u / 0.7);
              for (int k = 0; k < 2; ++k, u += 0.7) f *= 2.0 * std::sin(kPi * u / 1.0);
              return f;
          }()) < 1e-8);
}

TEST_CASE("relativistic kernel and measure") {
    const Periods w(1, 0.3);
    const double gR = 0.5;
    CHECK(ho::measure_muR(0.0, w, gR) == Complex(0.0, 0.0));
    for (double x : {0.2, 1.1, 3.0}) {
        CHECK(std::abs(ho::kernel_KR(x, w, gR) - ho::kernel_KR(-x, w, gR)) <
              1e-12 * std::abs(ho::kernel_KR(x, w, gR)));
        CHECK(std::abs(ho::measure_muR(x, w, gR) - ho::measure_muR(-x, w, gR)) <
              1e-10 * std::abs(ho::measure_muR(x, w, gR)));
    }
    const ho::Coupling g2(2.0);
    const Complex k = ho::kernel_KR(1.0, Periods(1, 0.1), 0.2);
    CHECK(std::abs(k - ho::kernel_K(1.0, g2)) < 0.05 * ho::kernel_K(1.0, g2));
}

TEST_CASE("pointwise limits") {
    const std::vector<double> w2s{0.2, 0.1, 0.05, 0.025};
    const auto rep = ho::limit_check_pointwise({0.0, 0.7, -1.6}, w2s, 2.0);
    for (const auto& r : rep.records) {
        if (r.quantity == "K" && r.point.real() == 0.0) {
            CHECK(std::abs(r.rhs - 0.25) < 1e-15);
        }
        if (r.quantity == "mu" && r.point.real() == 0.0) CHECK(r.lhs == Complex(0.0, 0.0));
    }
    for (const auto& o : rep.orders) {
        if (o.point.real() == 0.0 && o.quantity == "mu") continue;
        INFO(o.quantity << " at " << o.point << " order " << o.order);
        CHECK(o.order >= 0.9);
    }
    // x = 0.7: successive error ratio at least 2
    std::vector<double> errs;
    for (const auto& r : rep.records) {
        if (r.quantity == "K" && r.point.real() == 0.7) errs.push_back(r.rel_err);
    }
    REQUIRE(errs.size() == 4);
    for (int i = 1; i < 4; ++i) CHECK(errs[i - 1] / errs[i] >= 1.9);
    CHECK_THROWS_AS(ho::limit_check_pointwise({0.5}, {0.1, 0.2}, 2.0), ho::DomainError);
}

TEST_CASE("gamma limit") {
    const std::vector<double> w2s{0.2, 0.1, 0.05, 0.025};
    const auto rep =
        ho::gamma_limit_check({Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(0.8, 0.4)}, 1.0, w2s, 2.0, {0.3});
    for (const auto& r : rep.records) {
        if (r.quantity == "S2-gamma" && r.point == Complex(1.0, 0.0)) CHECK(std::abs(r.rhs - 1.0) < 1e-14);
        if (r.quantity == "S2-gamma" && r.point == Complex(0.5, 0.0)) {
            CHECK(r.rhs.real() == doctest::Approx(0.5641896).epsilon(1e-7));
        }
        if (r.quantity == "KhatR" && r.omega2 == 0.05) CHECK(r.rel_err < 0.1);
    }
    for (const auto& o : rep.orders) {
        INFO(o.quantity << " at " << o.point << " order " << o.order);
        if (std::isnan(o.order)) continue;  // already exact at every omega2
        CHECK(o.order >= 0.9);
    }
}

TEST_CASE("uniform bounds") {
    std::vector<double> xs;
    for (int k = -50; k <= 50; ++k) xs.push_back(0.1 * k);
    const auto rep = ho::bound_check_uniform(xs, {0.2, 0.1, 0.05}, 2.0);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        INFO("omega2 " << row.omega2 << " supK " << row.sup_K << " supMu " << row.sup_mu);
        CHECK(std::isfinite(row.sup_K));
        CHECK(std::isfinite(row.sup_mu));
        CHECK(row.sup_K <= 2 * rep.limit_sup_K);
        CHECK(row.sup_K >= 0.5 * rep.limit_sup_K);
        CHECK(row.sup_mu <= 2 * rep.limit_sup_mu);
        CHECK(row.sup_mu >= 0.5 * rep.limit_sup_mu);
    }
}
