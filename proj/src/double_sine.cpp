#include "ho/double_sine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "ho/errors.hpp"
#include "ho/quadrature.hpp"

namespace ho {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// e^t - 1 for complex t without cancellation near 0.
Complex cexpm1(Complex t) {
    const double a = t.real();
    const double b = t.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// Is d = m*big + k*small for some m, k >= 0 (within tol)?
bool on_cone(double d, double big, double small, double tol) {
    if (d < -tol) return false;
    const int m_max = static_cast<int>(std::floor((d + tol) / big));
    for (int m = 0; m <= m_max; ++m) {
        const double rest = d - m * big;
        const double k = std::round(rest / small);
        if (k >= 0.0 && std::fabs(rest - k * small) <= tol) return true;
    }
    return false;
}

// log(2 sin(pi z / w))
Complex log_two_sin(Complex z, double w) {
    const Complex u = z / w;
    if (sin_pi(u) == Complex(0.0, 0.0)) {
        throw PoleError("double sine: shift relation hit a zero of sin");
    }
    return std::log(2.0) + log_sin_pi(u);
}

QuadSpec s2_spec() {
    QuadSpec q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-14;
    q.max_depth = 40;
    return q;
}

// Contour integral of e^{zt}/((e^{w1 t}-1)(e^{w2 t}-1)) dt/t over R + i0,
// for z inside the fundamental strip.
Complex s2_integral(Complex z, const Periods& w) {
    const double S = w.sum();
    const double r = 0.5 * std::min(1.0 / w.w1, 1.0 / w.w2);
    const double freq = std::fabs(z.imag()) / (2.0 * kPi);
    const QuadSpec spec = s2_spec();

    auto pos = [&](double t) {
        const double den = std::expm1(-w.w1 * t) * std::expm1(-w.w2 * t) * t;
        return std::exp((z - S) * t) / den;
    };
    auto neg = [&](double t) {
        const double den = std::expm1(w.w1 * t) * std::expm1(w.w2 * t) * t;
        return std::exp(z * t) / den;
    };
    // t = r e^{i theta} from theta = pi down to 0, dt/t = i dtheta
    auto arc = [&](double th) {
        const Complex t = std::polar(r, th);
        return std::exp(z * t) / (cexpm1(w.w1 * t) * cexpm1(w.w2 * t));
    };
    const EvalResult a = integrate_1d(pos, Domain::from(r, S - z.real(), freq), spec);
    const EvalResult b = integrate_1d(neg, Domain::until(-r, z.real(), freq), spec);
    const EvalResult c = integrate_1d(arc, Domain::interval(0.0, kPi), spec);
    return a.value + b.value - kI * c.value;
}

void check_lattice(Complex z, const Periods& w) {
    if (std::fabs(z.imag()) > kS2LatticeTolerance) return;
    const double big = std::max(w.w1, w.w2);
    const double small = std::min(w.w1, w.w2);
    if (on_cone(-z.real(), big, small, kS2LatticeTolerance)) {
        throw ZeroError("double sine vanishes at z = " + std::to_string(z.real()));
    }
    if (on_cone(z.real() - w.sum(), big, small, kS2LatticeTolerance)) {
        throw PoleError("double sine has a pole at z = " + std::to_string(z.real()));
    }
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

LimitRecord make_record(const std::string& q, Complex p, double w2, Complex lhs, Complex rhs) {
    const double ae = std::abs(lhs - rhs);
    const double scale = std::abs(rhs);
    return {q, p, w2, lhs, rhs, ae, scale > 0.0 ? ae / scale : ae};
}

// Orders per (quantity, point) group and the monotonic-decrease test.
void finish_report(LimitReport& rep) {
    std::map<std::pair<std::string, std::pair<double, double>>, std::vector<const LimitRecord*>> groups;
    std::vector<std::pair<std::string, std::pair<double, double>>> order;
    for (const auto& r : rep.records) {
        const auto key = std::make_pair(r.quantity, std::make_pair(r.point.real(), r.point.imag()));
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&r);
    }
    for (const auto& key : order) {
        const auto& g = groups[key];
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i]->rel_err > 1e-12) {
                lx.push_back(std::log(g[i]->omega2));
                ly.push_back(std::log(g[i]->rel_err));
            }
            if (i >= 2 && g[i - 1]->rel_err > 1e-12 && !(g[i]->rel_err < g[i - 1]->rel_err)) {
                throw NonConvergence("limit of " + key.first + " at point " + std::to_string(key.second.first) +
                                     " stops converging at omega2 = " + std::to_string(g[i]->omega2));
            }
        }
        const double slope = lx.size() >= 2 ? fit_slope(lx, ly) : std::nan("");
        rep.orders.push_back({key.first, Complex(key.second.first, key.second.second), slope});
    }
}

}  // namespace

Periods::Periods(double omega1, double omega2) : w1(omega1), w2(omega2) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0) || !std::isfinite(omega1) || !std::isfinite(omega2)) {
        throw DomainError("double sine periods must be positive reals");
    }
}

Complex bernoulli_B22(Complex z, const Periods& w) {
    const Complex d = z - 0.5 * w.sum();
    return (d * d - (w.w1 * w.w1 + w.w2 * w.w2) / 12.0) / (w.w1 * w.w2);
}

Complex log_s2(Complex z, const Periods& w) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("log_s2: non-finite z");
    check_lattice(z, w);
    const double S = w.sum();
    const double lo = 0.25 * S;
    const double hi = 0.75 * S;
    const double big = std::max(w.w1, w.w2);
    const double small = std::min(w.w1, w.w2);
    // Shifting by one period multiplies by 2 sin(pi z / other period).
    Complex acc(0.0, 0.0);
    while (z.real() < lo) {
        const double step = (z.real() + big <= hi) ? big : small;
        const double other = (step == w.w1) ? w.w2 : w.w1;
        acc += log_two_sin(z, other);
        z += step;
    }
    while (z.real() > hi) {
        const double step = (z.real() - big >= lo) ? big : small;
        const double other = (step == w.w1) ? w.w2 : w.w1;
        z -= step;
        acc -= log_two_sin(z, other);
    }
    return acc + kI * (0.5 * kPi) * bernoulli_B22(z, w) + s2_integral(z, w);
}

Complex s2(Complex z, const Periods& w) { return std::exp(log_s2(z, w)); }

Complex kernel_KR(double x, const Periods& w, double gR) {
    const double half = 0.5 * (w.sum() - gR);
    return std::exp(-log_s2(Complex(half, x), w) - log_s2(Complex(half, -x), w));
}

Complex weight_wR(double x, const Periods& w, double gR) {
    Complex num;
    try {
        num = log_s2(Complex(0.0, x), w);
    } catch (const ZeroError&) {
        return {0.0, 0.0};
    }
    return std::exp(num - log_s2(Complex(gR, x), w));
}

Complex measure_muR(double x, const Periods& w, double gR) {
    return weight_wR(x, w, gR) * weight_wR(-x, w, gR);
}

Complex dual_weight_whatR(Complex lambda, double omega2, double g) {
    const Periods p(1.0, 1.0 / omega2);
    Complex num;
    try {
        num = log_s2(kI * lambda, p);
    } catch (const ZeroError&) {
        return {0.0, 0.0};
    }
    return std::exp(num + log_s2(-kI * lambda + g, p));
}

Complex dual_kernel_KhatR(Complex lambda, double omega2, double g) {
    const Periods p(1.0, 1.0 / omega2);
    return std::exp(-log_s2(kI * lambda + 0.5 * g, p) - log_s2(-kI * lambda + 0.5 * g, p));
}

LimitReport limit_check_pointwise(const std::vector<double>& x_grid,
                                  const std::vector<double>& omega2_seq, double g) {
    const Coupling c(g);
    for (std::size_t i = 1; i < omega2_seq.size(); ++i) {
        if (!(omega2_seq[i] < omega2_seq[i - 1])) throw DomainError("omega2 sequence must decrease");
    }
    LimitReport rep;
    for (double x : x_grid) {
        for (double w2 : omega2_seq) {
            const Periods p(1.0, w2);
            rep.records.push_back(make_record("K", x, w2, kernel_KR(x, p, g * w2), kernel_K(x, c)));
        }
        for (double w2 : omega2_seq) {
            const Periods p(1.0, w2);
            rep.records.push_back(make_record("mu", x, w2, measure_muR(x, p, g * w2), measure_mu(x, c)));
        }
    }
    finish_report(rep);
    return rep;
}

LimitReport gamma_limit_check(const std::vector<Complex>& z_grid, double omega1,
                              const std::vector<double>& omega2_seq, double g,
                              const std::vector<double>& lambdas) {
    const Coupling c(g);
    LimitReport rep;
    const double log_root_2pi = 0.5 * std::log(2.0 * kPi);
    for (Complex z : z_grid) {
        for (double w2 : omega2_seq) {
            const Periods p(1.0 / omega1, 1.0 / w2);
            const Complex lhs = std::exp(log_s2(z, p) + (0.5 - omega1 * z) * std::log(omega1 / (2 * kPi * w2)) -
                                         log_root_2pi);
            rep.records.push_back(make_record("S2-gamma", z, w2, lhs, rgamma(omega1 * z)));
        }
    }
    for (double l : lambdas) {
        for (double w2 : omega2_seq) {
            const double scale = std::pow(2 * kPi * w2, g - 1.0) / (2 * kPi);
            rep.records.push_back(
                make_record("whatR", l, w2, dual_weight_whatR(l, w2, g) * scale, dual_weight_what(l, c)));
        }
        for (double w2 : omega2_seq) {
            const double scale = std::pow(2 * kPi * w2, g - 1.0) / (2 * kPi);
            rep.records.push_back(
                make_record("KhatR", l, w2, dual_kernel_KhatR(l, w2, g) / scale, dual_kernel_Khat(l, c)));
        }
    }
    finish_report(rep);
    return rep;
}

BoundReport bound_check_uniform(const std::vector<double>& x_grid,
                                const std::vector<double>& omega2_grid, double g) {
    const Coupling c(g);
    BoundReport rep{{}, 0.0, 0.0, 0.0};
    for (double w2 : omega2_grid) {
        const Periods p(1.0, w2);
        BoundRow row{w2, 0.0, 0.0, 0.0, 0.0};
        for (double x : x_grid) {
            const double k = std::abs(kernel_KR(x, p, g * w2)) * std::exp(kPi * g * std::fabs(x));
            const double m = std::abs(measure_muR(x, p, g * w2)) * std::exp(-2 * kPi * g * std::fabs(x));
            if (k > row.sup_K) {
                row.sup_K = k;
                row.argmax_K = x;
            }
            if (m > row.sup_mu) {
                row.sup_mu = m;
                row.argmax_mu = x;
            }
        }
        rep.rows.push_back(row);
    }
    for (double x : x_grid) {
        rep.limit_sup_K = std::max(rep.limit_sup_K, kernel_K(x, c) * std::exp(kPi * g * std::fabs(x)));
        const double m = measure_mu(x, c) * std::exp(-2 * kPi * g * std::fabs(x));
        if (m > rep.limit_sup_mu) {
            rep.limit_sup_mu = m;
            rep.limit_argmax_mu = x;
        }
    }
    return rep;
}

}  // namespace ho
