#pragma once

#include <string>
#include <vector>

#include "ho/special_fn.hpp"

namespace ho {

/// Real positive periods (omega1, omega2) of the double sine function.
struct Periods {
    double w1;
    double w2;

    Periods(double omega1, double omega2);
    double sum() const { return w1 + w2; }
};

/// Distance to the zero/pole lattice below which S2 counts as singular.
inline constexpr double kS2LatticeTolerance = 1e-10;

/// B22(z) = [(z - (w1+w2)/2)^2 - (w1^2+w2^2)/12] / (w1 w2)
Complex bernoulli_B22(Complex z, const Periods& w);

/// log S2(z|w) reduced mod 2 pi i. Throws PoleError at w1+w2+m w1+k w2 and
/// ZeroError at -m w1 - k w2 (m, k >= 0).
Complex log_s2(Complex z, const Periods& w);
Complex s2(Complex z, const Periods& w);

// Relativistic kernel, weight and measure with coupling gR:
//   K^R(x) = 1/(S2(ix + g*/2) S2(-ix + g*/2)),  g* = w1 + w2 - gR
//   w^R(x) = S2(ix)/S2(ix + gR),  mu^R(x) = w^R(x) w^R(-x)
Complex kernel_KR(double x, const Periods& w, double gR);
Complex weight_wR(double x, const Periods& w, double gR);
Complex measure_muR(double x, const Periods& w, double gR);

// Dual relativistic weight and kernel in the limit scaling omega1 = 1,
// gR = g omega2, with dual periods (1, 1/omega2):
//   whatR(l) = S2(il) S2(-il + g),  KhatR(l) = 1/(S2(il + g/2) S2(-il + g/2)).
Complex dual_weight_whatR(Complex lambda, double omega2, double g);
Complex dual_kernel_KhatR(Complex lambda, double omega2, double g);

struct LimitRecord {
    std::string quantity;
    Complex point;  // x (real) or z
    double omega2;
    Complex lhs;
    Complex rhs;
    double abs_err;
    double rel_err;
};

struct OrderFit {
    std::string quantity;
    Complex point;
    /// Least-squares slope of log rel_err against log omega2.
    double order;
};

struct LimitReport {
    std::vector<LimitRecord> records;
    std::vector<OrderFit> orders;
};

/// K^R(x|1,w2,g w2) -> K(x) and mu^R -> mu along a decreasing omega2 sequence.
/// Throws NonConvergence if the relative error stops decreasing after the
/// first two terms.
LimitReport limit_check_pointwise(const std::vector<double>& x_grid,
                                  const std::vector<double>& omega2_seq, double g);

/// S2(z|1/w1, 1/w2)(w1/(2 pi w2))^{1/2 - w1 z}/sqrt(2 pi) -> 1/Gamma(w1 z),
/// together with the scaled dual weight and kernel limits at `lambdas`.
LimitReport gamma_limit_check(const std::vector<Complex>& z_grid, double omega1,
                              const std::vector<double>& omega2_seq, double g,
                              const std::vector<double>& lambdas);

struct BoundRow {
    double omega2;
    double sup_K;      // sup |K^R(x)| e^{pi g |x|}
    double argmax_K;
    double sup_mu;     // sup |mu^R(x)| e^{-2 pi g |x|}
    double argmax_mu;
};

struct BoundReport {
    std::vector<BoundRow> rows;
    double limit_sup_K;
    double limit_sup_mu;
    double limit_argmax_mu;
};

BoundReport bound_check_uniform(const std::vector<double>& x_grid,
                                const std::vector<double>& omega2_grid, double g);

}  // namespace ho
