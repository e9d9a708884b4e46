#include "ho/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "ho/double_sine.hpp"
#include "ho/errors.hpp"

namespace ho {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

QuadSpec quad(double rel, double abs_scale = 1e-3) {
    QuadSpec q;
    q.rel_tol = rel;
    q.abs_tol = abs_scale * rel;
    return q;
}

std::vector<double> couplings(const SuiteOptions& o, std::vector<double> sweep) {
    if (o.g) return {*o.g};
    return sweep;
}

double coupling(const SuiteOptions& o, double dflt) { return o.g ? *o.g : dflt; }

void absorb(IdentityReport& into, const IdentityReport& from) {
    for (const auto& c : from.cases) into.add(c);
}

std::vector<Complex> to_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

// real points with pairwise gaps at least `gap`
SpectralPoint random_spectral(std::mt19937& rng, int n, double gap) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (;;) {
        SpectralPoint l;
        for (int i = 0; i < n; ++i) l.emplace_back(u(rng), 0.0);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) ok = ok && std::abs(l[i] - l[j]) >= gap;
        }
        if (ok) return l;
    }
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> linspace(double a, double b, int k) {
    std::vector<double> v;
    for (int i = 0; i < k; ++i) v.push_back(k == 1 ? a : a + (b - a) * i / (k - 1));
    return v;
}

// ---------------------------------------------------------------- double sine

SuiteReport suite_double_sine(const SuiteOptions& o) {
    SuiteReport s{"double-sine"};
    IdentityReport shift{"trig3", {}, true, 1e-8}, refl{"reflection", {}, true, 1e-8};
    IdentityReport hom{"homogeneity", {}, true, 1e-8}, prod{"product", {}, true, 1e-8};
    std::mt19937 rng(20);
    for (const Periods& p : {Periods(1, 0.7), Periods(2.5, 1)}) {
        std::uniform_real_distribution<double> u(0.05, 0.95), v(-1.5, 1.5);
        const std::vector<Complex> per{p.w1, p.w2};
        for (int k = 0; k < 50; ++k) {
            const Complex z(u(rng) * p.sum(), v(rng));
            const Complex sz = s2(z, p);
            auto in = [&] { return std::vector<std::pair<std::string, std::vector<Complex>>>{{"z", {z}}, {"periods", per}}; };
            shift.add(make_case(in(), sz / s2(z + p.w1, p), 2.0 * std::sin(kPi * z / p.w2)));
            shift.add(make_case(in(), sz / s2(z + p.w2, p), 2.0 * std::sin(kPi * z / p.w1)));
            refl.add(make_case(in(), sz * s2(p.sum() - z, p), 1.0));
            hom.add(make_case(in(), s2(kPi * z, Periods(kPi * p.w1, kPi * p.w2)), sz));
            prod.add(make_case(in(), sz * s2(-z, p), -4.0 * std::sin(kPi * z / p.w1) * std::sin(kPi * z / p.w2)));
        }
    }
    s.add(shift);
    s.add(refl);
    s.add(hom);
    s.add(prod);

    const double g = coupling(o, 2.0);
    const auto lim = gamma_limit_check({Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(0.8, 0.4), Complex(1.3, -0.2)},
                                       1.0, {0.2, 0.1, 0.05, 0.025}, g, {0.3, -0.7});
    for (const auto& f : lim.orders) {
        const std::string what = "order " + f.quantity + " at " + std::to_string(f.point.real()) + "," +
                                 std::to_string(f.point.imag());
        if (std::isnan(f.order)) {
            // exact for every omega2: report the largest error instead
            double worst = 0.0;
            for (const auto& r : lim.records) {
                if (r.quantity == f.quantity && r.point == f.point) worst = std::max(worst, r.rel_err);
            }
            s.check("exact " + what.substr(6), worst, 1e-12, true);
        } else {
            s.check(what, f.order, 0.9, false);
        }
    }
    return s;
}

// ---------------------------------------------------------------- limits

SuiteReport suite_limits(const SuiteOptions& o) {
    SuiteReport s{"limits"};
    const double g = coupling(o, 2.0);
    const auto lim = limit_check_pointwise({-5.0, -3.5, -1.6, -0.4, 0.0, 0.7, 2.2, 5.0}, {0.2, 0.1, 0.05, 0.025}, g);
    for (const auto& f : lim.orders) {
        const std::string at = f.quantity + " at " + std::to_string(f.point.real());
        if (std::isnan(f.order)) {
            // mu(0) = 0 and far out the error is below round-off for every omega2
            double worst = 0.0;
            for (const auto& r : lim.records) {
                if (r.quantity == f.quantity && r.point == f.point) worst = std::max(worst, r.rel_err);
            }
            s.check("exact " + at, worst, 1e-12, true);
        } else {
            s.check("order " + at, f.order, 0.9, false);
        }
    }
    const auto b = bound_check_uniform(linspace(-5.0, 5.0, 101), {0.2, 0.1, 0.05, 0.025}, g);
    double drift_K = 1.0, drift_mu = 1.0;
    for (const auto& row : b.rows) {
        if (!std::isfinite(row.sup_K) || !std::isfinite(row.sup_mu)) {
            drift_K = drift_mu = INFINITY;
            break;
        }
        drift_K = std::max({drift_K, row.sup_K / b.limit_sup_K, b.limit_sup_K / row.sup_K});
        drift_mu = std::max({drift_mu, row.sup_mu / b.limit_sup_mu, b.limit_sup_mu / row.sup_mu});
    }
    s.check("sup K drift over omega2", drift_K, 2.0, true);
    s.check("sup mu drift over omega2", drift_mu, 2.0, true);
    return s;
}

// ---------------------------------------------------------------- wave functions

SuiteReport suite_zero_point(const SuiteOptions& o) {
    SuiteReport s{"zero-point"};
    IdentityReport two{"zero-point-n2", {}, true, 1e-8}, three{"zero-point-n3", {}, true, 1e-4};
    for (double gv : couplings(o, {1.5, 2.0, 3.0})) {
        const Coupling g(gv);
        std::mt19937 rng(100);
        for (int k = 0; k < 10; ++k) {
            const SpectralPoint l = random_spectral(rng, 2, 0.2);
            const Complex exact = psi_zero(l, g);
            const auto in = std::vector<std::pair<std::string, std::vector<Complex>>>{{"g", {gv}}, {"lambda", l}};
            two.add(make_case(in, euler_psi(l, {0.0, 0.0}, g, quad(1e-11)).value, exact));
            if (gv > 1.0) two.add(make_case(in, mb_psi(l, {0.0, 0.0}, g, quad(1e-11)).value, exact));
        }
        for (int k = 0; k < 10; ++k) {
            const SpectralPoint l = random_spectral(rng, 3, 0.2);
            const Complex exact = psi_zero(l, g);
            const auto in = std::vector<std::pair<std::string, std::vector<Complex>>>{{"g", {gv}}, {"lambda", l}};
            three.add(make_case(in, euler_psi(l, {0.0, 0.0, 0.0}, g, quad(1e-6, 1e-6)).value, exact));
            if (gv > 1.0) three.add(make_case(in, mb_psi(l, {0.0, 0.0, 0.0}, g, quad(1e-5, 1e-6)).value, exact));
        }
    }
    s.add(two);
    s.add(three);
    return s;
}

SuiteReport suite_duality(const SuiteOptions& o) {
    SuiteReport s{"duality"};
    IdentityReport two{"duality-n2", {}, true, 1e-6};
    for (double gv : couplings(o, {1.5, 2.0, 3.0})) {
        const Coupling g(gv);
        g.require_above_one("duality");
        for (double a : {-1.6, -0.7, 0.3, 1.1, 2.0}) {
            for (double d : {0.0, 0.3, 0.6, 0.9, 1.2}) {
                const SpectralPoint l{0.5 * a + 0.1, -0.5 * a + 0.1};
                const PositionPoint x{d + 0.2, 0.2};
                two.add(make_case({{"g", {gv}}, {"lambda", l}, {"x", to_complex(x)}}, euler_psi(l, x, g, quad(1e-10)).value,
                                  mb_psi(l, x, g, quad(1e-10)).value));
            }
        }
    }
    s.add(two);

    const Coupling g(coupling(o, 2.0));
    IdentityReport series{"series", {}, true, 1e-7};
    for (const SpectralPoint& l : {SpectralPoint{0.35, -0.2}, SpectralPoint{0.9, -0.6}}) {
        for (double d : {0.5, 1.0, 2.0}) {
            const PositionPoint x{d, 0.0};
            const auto hc = hc_psi_symmetrized(l, x, g, {});
            const Complex mb = mb_psi(l, x, g, quad(1e-12)).value;
            series.add(make_case({{"lambda", l}, {"x", to_complex(x)}, {"k_used", {double(hc.k_used)}}}, hc.result.value, mb));
            s.check("series shell estimate at x12=" + std::to_string(d), hc.result.abs_err / std::abs(mb), 1e-7, true);
        }
    }
    s.add(series);

    if (o.three_particles) {
        IdentityReport three{"duality-n3", {}, true, 1e-3};
        const std::vector<std::pair<SpectralPoint, PositionPoint>> pts{
            {{0.5, 0.1, -0.4}, {0.6, 0.2, 0.0}},
            {{0.3, 0.0, -0.3}, {1.0, 0.5, 0.0}},
            {{0.8, -0.1, -0.6}, {0.4, 0.3, 0.0}},
        };
        for (const auto& [l, x] : pts) {
            three.add(make_case({{"lambda", l}, {"x", to_complex(x)}}, euler_psi(l, x, g, quad(1e-6)).value,
                                mb_psi(l, x, g, quad(1e-5)).value));
        }
        s.add(three);
    }
    return s;
}

SuiteReport suite_asymptotics(const SuiteOptions& o) {
    SuiteReport s{"asymptotics"};
    const double gv = coupling(o, 2.0);
    const Coupling g(gv);
    QuadSpec q;
    q.rel_tol = 1e-14;
    q.abs_tol = 1e-30;
    for (const SpectralPoint& l : {SpectralPoint{0.35, -0.2}, SpectralPoint{0.8, -0.3}}) {
        std::vector<double> ms, ys;
        for (double m : linspace(1.0, 4.0, 31)) {
            const PositionPoint x{m, 0.0};
            const Complex phi = phi_renormalized(l, x, g, q, Rep::Euler).value;
            const double gap = std::abs(phi - phi_asymptotic(l, x, g));
            ms.push_back(m);
            ys.push_back(std::log(gap) + 2.0 * kPi * gv * x_dot_rho(x));
        }
        s.check("slope at lambda12=" + std::to_string((l[0] - l[1]).real()), least_squares_slope(ms, ys),
                -(2.0 * kPi - 0.3), true);
    }
    return s;
}

SuiteReport suite_bounds(const SuiteOptions& o) {
    SuiteReport s{"bounds"};
    const double gv = coupling(o, 2.0);
    const Coupling g(gv);
    g.require_above_one("bounds");
    const double N = bound_exponent(2, gv);
    auto sweep = [&](int nl, int nx) {
        double sup = 0.0;
        for (double a : linspace(-4.0, 4.0, nl)) {
            for (double d : linspace(0.0, 2.0, nx)) {
                const SpectralPoint l{0.5 * a, -0.5 * a};
                const Complex phi = phi_renormalized(l, {d, 0.0}, g, quad(1e-8, 1e-6)).value;
                sup = std::max(sup, std::abs(phi) * std::pow(lattice_gap(l), -N) * std::exp(kPi * gv * d));
            }
        }
        return sup;
    };
    // the 17x9 grid still misses the peak near small lambda12; compare the next two halvings
    const double mid = sweep(33, 17), fine = sweep(65, 33);
    s.check("finite weighted sup", std::isfinite(fine) ? fine : INFINITY, 1e300, true);
    s.check("sup ratio fine/mid", fine / mid, 1.02, true);
    return s;
}

// ---------------------------------------------------------------- operators

const std::vector<std::pair<SpectralPoint, PositionPoint>>& generic_points() {
    static const std::vector<std::pair<SpectralPoint, PositionPoint>> pts{
        {{0.5, -0.3}, {0.8, 0.0}},    {{0.2, 0.6}, {0.4, -0.5}},   {{0.9, -0.1}, {0.3, -0.2}},
        {{-0.4, 0.7}, {1.0, 0.1}},    {{0.25, -0.65}, {0.15, 0.9}},
    };
    return pts;
}

IdentityCase residual_case(const SpectralPoint& l, const PositionPoint& x, const EigenResidual& r,
                           std::vector<std::pair<std::string, std::vector<Complex>>> extra = {}) {
    extra.insert(extra.begin(), {{"lambda", l}, {"x", to_complex(x)}});
    return make_case(std::move(extra), r.lhs, r.rhs);
}

SuiteReport suite_eigen_differential(const SuiteOptions& o) {
    SuiteReport s{"eigen-differential"};
    const Coupling g(coupling(o, 2.0));
    IdentityReport rep{"cs-hamiltonian", {}, true, 1e-4};
    for (const auto& [l, x] : generic_points()) rep.add(residual_case(l, x, apply_cs_hamiltonian(l, x, g, {5, 1e-3}, quad(1e-10))));
    s.add(rep);
    const auto& [l, x] = generic_points().front();
    const double r1 = apply_cs_hamiltonian(l, x, g, {5, 0.04}, quad(1e-10)).residual;
    const double r2 = apply_cs_hamiltonian(l, x, g, {5, 0.02}, quad(1e-10)).residual;
    s.check("Richardson ratio h=0.04/0.02", r1 / r2, 8.0, false);
    return s;
}

SuiteReport suite_eigen_difference(const SuiteOptions& o) {
    SuiteReport s{"eigen-difference"};
    const Coupling g(coupling(o, 2.0));
    IdentityReport m{"macdonald", {}, true, 1e-4}, h{"dual-difference", {}, true, 1e-4};
    for (int r : {1, 2}) {
        for (const auto& [l, x] : generic_points()) {
            m.add(residual_case(l, x, apply_macdonald_rational(r, l, x, g, quad(1e-10)), {{"r", {double(r)}}}));
            h.add(residual_case(l, x, apply_dual_difference_Hr(r, l, x, g, quad(1e-10)), {{"r", {double(r)}}}));
        }
    }
    s.add(m);
    s.add(h);
    return s;
}

SuiteReport suite_baxter(const SuiteOptions& o) {
    SuiteReport s{"baxter"};
    const Coupling g(coupling(o, 2.0));
    IdentityReport one{"baxter-n1", {}, true, 1e-8}, two{"baxter-n2", {}, true, 1e-4};
    for (double lb : linspace(-1.0, 1.0, 9)) {
        one.add(residual_case({0.4}, {0.6}, apply_baxter(lb, {0.4}, {0.6}, g, quad(1e-11)), {{"lambda_B", {lb}}}));
        const SpectralPoint l{0.3, -0.3};
        const PositionPoint x{0.5, 0.0};
        two.add(residual_case(l, x, apply_baxter(lb, l, x, g, quad(1e-6)), {{"lambda_B", {lb}}}));
    }
    s.add(one);
    s.add(two);
    return s;
}

SuiteReport suite_dual_baxter(const SuiteOptions& o) {
    SuiteReport s{"dual-baxter"};
    const Coupling g(coupling(o, 2.0));
    IdentityReport one{"dual-baxter-n1", {}, true, 1e-8}, two{"dual-baxter-n2", {}, true, 1e-4};
    // symmetric about the centre of x, where the eigenvalue is largest
    for (double xb : linspace(-0.6, 1.0, 9)) {
        one.add(residual_case({0.4}, {0.6}, apply_dual_baxter(xb, {0.4}, {0.6}, g, quad(1e-11)), {{"x_B", {xb}}}));
        const SpectralPoint l{0.5, -0.5};
        const PositionPoint x{0.4, 0.0};
        two.add(residual_case(l, x, apply_dual_baxter(xb, l, x, g, quad(1e-5)), {{"x_B", {xb}}}));
    }
    s.add(one);
    s.add(two);
    return s;
}

// ---------------------------------------------------------------- identities

SuiteReport suite_barnes(const SuiteOptions& o) {
    SuiteReport s{"barnes"};
    IdentityReport rep{"barnes", {}, true, 1e-8};
    absorb(rep, barnes_check(1.0, 1.0, -1.0, -1.0, quad(1e-11)));
    const double gv = coupling(o, 2.0);
    const SpectralPoint l{0.3, -0.3};
    const auto spec_rep = barnes_check(kI * l[0] + gv / 2, kI * l[1] + gv / 2, kI * l[0] - gv / 2, kI * l[1] - gv / 2,
                                       quad(1e-11));
    absorb(rep, spec_rep);
    // the specialization reproduces the zero-point value
    rep.add(make_case({{"g", {gv}}, {"lambda", l}}, spec_rep.cases[0].rhs, gamma(gv) * psi_zero(l, Coupling(gv))));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(0.2, 1.5), im(-0.8, 0.8);
    for (int k = 0; k < 10; ++k) {
        const Complex a1(re(rng), im(rng)), a2(re(rng), im(rng)), b1(-re(rng), im(rng)), b2(-re(rng), im(rng));
        absorb(rep, barnes_check(a1, a2, b1, b2, quad(1e-11)));
    }
    s.add(rep);
    return s;
}

SuiteReport suite_gustafson(const SuiteOptions& o) {
    SuiteReport s{"gustafson"};
    IdentityReport one{"gustafson-n1", {}, true, 1e-8}, two{"gustafson-n2", {}, true, 1e-5};
    const double gv = coupling(o, 2.0);
    absorb(one, gustafson_check(1, {1.0, 1.0}, {-1.0, -1.0}, quad(1e-11)));
    const SpectralPoint l{0.3, 0.0, -0.3};
    std::vector<Complex> a, b;
    for (const Complex& v : l) {
        a.push_back(kI * v + gv / 2);
        b.push_back(kI * v - gv / 2);
    }
    const auto sp = gustafson_check(2, a, b, quad(1e-8));
    absorb(two, sp);
    two.add(make_case({{"g", {gv}}, {"lambda", l}}, sp.cases[0].rhs,
                      2.0 * gamma(gv) * gamma(2.0 * gv) * psi_zero(l, Coupling(gv))));
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> re(0.3, 1.2), im(-0.5, 0.5);
    for (int k = 0; k < 10; ++k) {
        std::vector<Complex> aa, bb;
        for (int j = 0; j < 3; ++j) {
            aa.emplace_back(re(rng), im(rng));
            bb.emplace_back(-re(rng), im(rng));
        }
        absorb(two, gustafson_check(2, aa, bb, quad(1e-8)));
    }
    s.add(one);
    s.add(two);
    return s;
}

bool well_separated(const std::vector<Complex>& u, const std::vector<Complex>& v, double eps) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (i != j && std::abs(u[i] - u[j]) < eps) return false;
        }
        for (const Complex& w : v) {
            if (std::abs(u[i] - w) < eps) return false;
        }
    }
    return true;
}

SuiteReport suite_kernel_identity(const SuiteOptions& o) {
    SuiteReport s{"kernel-identity"};
    IdentityReport rep{"kernel-identity", {}, true, 1e-12};
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> u(-2.0, 2.0), al(0.1, 1.0);
    for (int n = 1; n <= 4; ++n) {
        for (int r = 1; r <= n; ++r) {
            for (int k = 0; k < 10;) {
                std::vector<Complex> z, y;
                for (int i = 0; i < n; ++i) {
                    z.emplace_back(u(rng), 0.0);
                    y.emplace_back(u(rng), 0.0);
                }
                if (!well_separated(z, y, 0.05) || !well_separated(y, z, 0.05)) continue;
                absorb(rep, kernel_identity_check(n, r, z, y, al(rng)));
                ++k;
            }
        }
    }
    s.add(rep);

    const Coupling g(coupling(o, 2.0));
    IdentityReport k1{"kernel-function-k1", {}, true, 1e-9}, k2{"kernel-function-k2", {}, true, 1e-5};
    for (const auto& [x, y] : std::vector<std::pair<std::vector<double>, std::vector<double>>>{
             {{0.9, 0.0}, {0.4, -0.5}}, {{0.3, -0.6}, {1.1, 0.2}}, {{1.5, 0.2}, {-0.3, 0.8}}}) {
        absorb(k1, kernel_function_identity_check(1, x, y, g, {5, 1e-3}, 1e-9));
        absorb(k2, kernel_function_identity_check(2, x, y, g, {5, 1e-3}));
    }
    s.add(k1);
    s.add(k2);
    return s;
}

SuiteReport suite_hypergeom(const SuiteOptions&) {
    SuiteReport s{"hypergeom-identity"};
    IdentityReport rep{"hypergeom-identity", {}, true, 1e-10};
    std::mt19937 rng(18);
    std::uniform_real_distribution<double> u(-2.0, 2.0), al(0.1, 1.0);
    // every denominator is x_i - x_j - k_j + m or x_j - y_a + m for small integers m
    auto generic = [](const std::vector<Complex>& x, const std::vector<Complex>& y, int K) {
        auto far = [&](Complex d) {
            for (int m = -K; m <= K; ++m) {
                if (std::abs(d + double(m)) < 1e-3) return false;
            }
            return true;
        };
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (i != j && !far(x[i] - x[j])) return false;
                if (i != j && !far(y[i] - y[j])) return false;
                if (!far(x[i] - y[j])) return false;
            }
        }
        return true;
    };
    for (int n = 1; n <= 3; ++n) {
        for (int K = 0; K <= 4; ++K) {
            for (int k = 0; k < 10;) {
                std::vector<Complex> x, y;
                for (int i = 0; i < n; ++i) {
                    x.emplace_back(u(rng), 0.0);
                    y.emplace_back(u(rng), 0.0);
                }
                if (!generic(x, y, K)) continue;
                absorb(rep, rational_hypergeom_check(n, K, x, y, al(rng)));
                ++k;
            }
        }
    }
    s.add(rep);
    return s;
}

SuiteReport suite_commutativity(const SuiteOptions& o) {
    SuiteReport s{"commutativity"};
    IdentityReport one{"commutativity-n1", {}, true, 1e-7}, two{"commutativity-n2", {}, true, 1e-4};
    for (double gv : couplings(o, {2.0, 2.5})) {
        const Coupling g(gv);
        const double im_max = 0.8 * std::min(gv, 1.0);
        for (Complex lc : {Complex(0.0, 0.0), Complex(0.3, 0.4), Complex(-0.45, im_max), Complex(0.7, -im_max)}) {
            absorb(one, baxter_commutativity_check(1, {0.5, -0.2}, lc, g, quad(1e-11, 1.0), 1e-7));
        }
        for (Complex lc : {Complex(0.25, 0.0), Complex(0.2, -0.3), Complex(-0.1, im_max)}) {
            absorb(two, baxter_commutativity_check(2, {0.5, -0.2, 0.1, 0.7}, lc, g, quad(1e-7, 1.0), 1e-4));
        }
    }
    s.add(one);
    s.add(two);
    return s;
}

using SuiteFn = std::function<SuiteReport(const SuiteOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"double-sine", suite_double_sine},
        {"limits", suite_limits},
        {"duality", suite_duality},
        {"zero-point", suite_zero_point},
        {"eigen-differential", suite_eigen_differential},
        {"eigen-difference", suite_eigen_difference},
        {"baxter", suite_baxter},
        {"dual-baxter", suite_dual_baxter},
        {"barnes", suite_barnes},
        {"gustafson", suite_gustafson},
        {"kernel-identity", suite_kernel_identity},
        {"hypergeom-identity", suite_hypergeom},
        {"commutativity", suite_commutativity},
        {"asymptotics", suite_asymptotics},
        {"bounds", suite_bounds},
    };
    return r;
}

}  // namespace

void SuiteReport::add(IdentityReport r) {
    pass = pass && r.pass;
    reports.push_back(std::move(r));
}

void SuiteReport::check(std::string what, double value, double threshold, bool at_most) {
    const bool ok = at_most ? value <= threshold : value >= threshold;
    pass = pass && ok;
    properties.push_back({std::move(what), value, threshold, ok});
}

const IdentityReport* SuiteReport::report(const std::string& which) const {
    for (const auto& r : reports) {
        if (r.name == which) return &r;
    }
    return nullptr;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
    for (const auto& [n, fn] : registry()) {
        if (n == name) return fn(opts);
    }
    throw DomainError("unknown suite: " + name);
}

}  // namespace ho
