#include "ho/verification.hpp"

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
constexpr double kDegenerate = 1e-9;

Complex cexp_i2pi(Complex a) { return std::exp(2.0 * kPi * kI * a); }

Complex checked_ratio(Complex num, Complex den, const char* who) {
    if (std::abs(den) < kDegenerate) throw DegenerateInput(std::string(who) + ": vanishing denominator");
    return num / den;
}

void require_separated(const std::vector<Complex>& a, const std::vector<Complex>& b, const char* who) {
    for (const Complex& v : a) {
        if (!(v.real() > 0.0)) throw DomainError(std::string(who) + ": need Re alpha_k > 0");
    }
    for (const Complex& v : b) {
        if (!(v.real() < 0.0)) throw DomainError(std::string(who) + ": need Re beta_k < 0");
    }
}

// prod_k Gamma(a_k - i t) Gamma(i t - b_k)
Complex gamma_pairs(const std::vector<Complex>& a, const std::vector<Complex>& b, double t) {
    Complex v = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) v *= gamma(a[k] - kI * t) * gamma(kI * t - b[k]);
    return v;
}

double contour_center(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double s = 0.0;
    for (const Complex& v : a) s += v.imag();
    for (const Complex& v : b) s += v.imag();
    return s / static_cast<double>(a.size() + b.size());
}

Complex pochhammer(Complex a, int k) {
    Complex v = 1.0;
    for (int i = 0; i < k; ++i) v *= a + double(i);
    return v;
}

Complex sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

// Q(z; lambda) for the cosh kernels (hat = false) or the gamma kernels (hat = true)
Complex q_integral(int n, const std::vector<double>& z, Complex lambda, Coupling g, bool hat, const QuadSpec& spec) {
    const double gv = g;
    auto kern = [&](double t) {
        double v = 1.0;
        for (double za : z) v *= hat ? detail::khat_real(za - t, gv) : kernel_K(za - t, g);
        return v;
    };
    double zc = 0.0, z_min = z[0];
    for (double v : z) {
        zc += v;
        z_min = std::min(z_min, v);
    }
    zc /= static_cast<double>(z.size());
    const double margin = hat ? 1.0 : gv;
    const double decay = (hat ? 0.8 : 0.9) * 2.0 * kPi * (margin - std::fabs(lambda.imag()));
    const double freq = std::fabs(lambda.real()) + 1.0;
    // the kernels make Q tiny; an absolute floor of spec size would swamp it
    QuadSpec s = spec;
    s.abs_tol = spec.abs_tol * std::min(1.0, std::pow(kern(zc), n));
    if (n == 1) {
        auto f = [&](double t) { return cexp_i2pi(lambda * t) * kern(t); };
        return integrate_1d(f, Domain::line(zc, decay, freq), s).value;
    }
    // t1 > t2 by symmetry, which cancels the 1/2 from the unordered plane
    std::array<NestedLevel, 2> levels;
    levels[0].domain = [&](std::span<const double>) { return Domain::line(zc, decay, freq); };
    levels[0].factor = [&](std::span<const double> t) { return cexp_i2pi(lambda * t[0]) * kern(t[0]); };
    levels[1].domain = [&](std::span<const double> t) {
        Domain d = Domain::until(t[0], decay, freq);
        d.center = std::min(t[0], z_min);
        return d;
    };
    levels[1].factor = [&](std::span<const double> t) {
        const double m = hat ? detail::muhat_real(t[0] - t[1], gv) : measure_mu(t[0] - t[1], g);
        return cexp_i2pi(lambda * t[1]) * kern(t[1]) * m;
    };
    return 2.0 * integrate_nested(levels, s).value;
}

// first derivative along one axis of f(p), p = (x1, x2, y1, y2)
template <class F>
Complex first_diff(F&& f, std::array<double, 4> p, int axis, const FDStencil& s) {
    const double h = s.h;
    const double c = p[axis];
    auto at = [&](double d) {
        p[axis] = c + d;
        return f(p);
    };
    if (s.order == 3) return (at(h) - at(-h)) / (2.0 * h);
    return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}

std::vector<Complex> as_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

}  // namespace

void IdentityReport::add(IdentityCase c) {
    if (!(c.rel_diff <= tolerance)) pass = false;
    cases.push_back(std::move(c));
}

IdentityCase make_case(std::vector<std::pair<std::string, std::vector<Complex>>> inputs, Complex lhs,
                       Complex rhs) {
    IdentityCase c;
    c.inputs = std::move(inputs);
    c.lhs = lhs;
    c.rhs = rhs;
    c.abs_diff = std::abs(lhs - rhs);
    c.rel_diff = c.abs_diff / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return c;
}

IdentityReport barnes_check(Complex a1, Complex a2, Complex b1, Complex b2, const QuadSpec& spec,
                            double tolerance) {
    const std::vector<Complex> a{a1, a2}, b{b1, b2};
    require_separated(a, b, "barnes_check");
    auto f = [&](double t) { return gamma_pairs(a, b, t); };
    const Complex lhs =
        integrate_1d(f, Domain::line(contour_center(a, b), 0.8 * 2.0 * kPi), spec).value / (2.0 * kPi);
    Complex rhs = 1.0;
    for (const Complex& ai : a) {
        for (const Complex& bk : b) rhs *= gamma(ai - bk);
    }
    rhs /= gamma(a1 + a2 - b1 - b2);
    IdentityReport rep{"barnes", {}, true, tolerance};
    rep.add(make_case({{"alpha", a}, {"beta", b}}, lhs, rhs));
    return rep;
}

IdentityReport gustafson_check(int n, const std::vector<Complex>& a, const std::vector<Complex>& b,
                               const QuadSpec& spec, double tolerance) {
    if (n != 1 && n != 2) throw DomainError("gustafson_check: n must be 1 or 2");
    if (static_cast<int>(a.size()) != n + 1 || b.size() != a.size()) {
        throw DomainError("gustafson_check: alpha and beta need n + 1 entries");
    }
    require_separated(a, b, "gustafson_check");
    const double c = contour_center(a, b);
    const double decay = 0.8 * 2.0 * kPi;
    Complex lhs;
    if (n == 1) {
        lhs = integrate_1d([&](double t) { return gamma_pairs(a, b, t); }, Domain::line(c, decay), spec).value /
              (2.0 * kPi);
    } else {
        std::array<NestedLevel, 2> levels;
        levels[0].domain = [&](std::span<const double>) { return Domain::line(c, decay); };
        levels[0].factor = [&](std::span<const double> t) { return gamma_pairs(a, b, t[0]); };
        levels[1].domain = [&](std::span<const double>) { return Domain::line(c, decay); };
        levels[1].factor = [&](std::span<const double> t) {
            const double u = t[0] - t[1];
            return gamma_pairs(a, b, t[1]) * rgamma(kI * u) * rgamma(-kI * u);
        };
        lhs = integrate_nested(levels, spec).value / (4.0 * kPi * kPi);
    }
    Complex rhs = n == 1 ? 1.0 : 2.0;
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += a[j] - b[j];
        for (const Complex& bk : b) rhs *= gamma(a[j] - bk);
    }
    rhs /= gamma(s);
    IdentityReport rep{"gustafson", {}, true, tolerance};
    rep.add(make_case({{"n", {double(n)}}, {"alpha", a}, {"beta", b}}, lhs, rhs));
    return rep;
}

IdentityReport kernel_identity_check(int n, int r, const std::vector<Complex>& z, const std::vector<Complex>& y,
                                     Complex alpha, double tolerance) {
    if (n < 1 || n > 4) throw DomainError("kernel_identity_check: need 1 <= n <= 4");
    if (r < 0 || r > n) throw DomainError("kernel_identity_check: need 0 <= r <= n");
    if (static_cast<int>(z.size()) != n || static_cast<int>(y.size()) != n) {
        throw DomainError("kernel_identity_check: z and y need n entries");
    }
    // one side of the identity; the other is obtained by z <-> y, alpha -> -alpha
    auto side = [&](const std::vector<Complex>& u, const std::vector<Complex>& v, Complex a) {
        Complex total = 0.0;
        for (unsigned I = 0; I < (1u << n); ++I) {
            if (std::popcount(I) != r) continue;
            Complex t = 1.0;
            for (int i = 0; i < n; ++i) {
                if (!(I >> i & 1u)) continue;
                for (int j = 0; j < n; ++j) {
                    if (I >> j & 1u) continue;
                    t *= checked_ratio(u[i] - u[j] - a, u[i] - u[j], "kernel_identity_check");
                }
                for (int b = 0; b < n; ++b) t *= checked_ratio(u[i] - v[b] + a, u[i] - v[b], "kernel_identity_check");
            }
            total += t;
        }
        return total;
    };
    IdentityReport rep{"kernel-identity", {}, true, tolerance};
    rep.add(make_case({{"n", {double(n)}}, {"r", {double(r)}}, {"z", z}, {"y", y}, {"alpha", {alpha}}},
                      side(z, y, alpha), side(y, z, -alpha)));
    return rep;
}

std::vector<std::vector<int>> compositions(int n, int K) {
    std::vector<std::vector<int>> out;
    if (n < 1 || K < 0) return out;
    std::vector<int> k(n, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n - 1) {
            k[pos] = left;
            out.push_back(k);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            k[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, K);
    return out;
}

IdentityReport rational_hypergeom_check(int n, int K, const std::vector<Complex>& x,
                                        const std::vector<Complex>& y, Complex alpha, double tolerance) {
    if (n < 1 || n > 3) throw DomainError("rational_hypergeom_check: need 1 <= n <= 3");
    if (K < 0 || K > 4) throw DomainError("rational_hypergeom_check: need 0 <= K <= 4");
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
        throw DomainError("rational_hypergeom_check: x and y need n entries");
    }
    const char* who = "rational_hypergeom_check";
    Complex lhs = 0.0, rhs = 0.0;
    for (const auto& k : compositions(n, K)) {
        Complex t = 1.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Complex d = x[i] - x[j] - double(k[j]);
                t *= checked_ratio(pochhammer(d - alpha, k[i]), pochhammer(d, k[i]), who);
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int j = 0; j < n; ++j) {
                t *= checked_ratio(pochhammer(x[j] - y[a] + alpha, k[j]), pochhammer(x[j] - y[a], k[j]), who);
            }
        }
        lhs += t;
        Complex u = 1.0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const Complex d = y[a] - y[b] - double(k[a]);
                u *= checked_ratio(pochhammer(d - alpha, k[b]), pochhammer(d, k[b]), who);
            }
        }
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < n; ++a) {
                u *= checked_ratio(pochhammer(x[j] - y[a] + alpha, k[a]), pochhammer(x[j] - y[a], k[a]), who);
            }
        }
        rhs += u;
    }
    IdentityReport rep{"hypergeom-identity", {}, true, tolerance};
    rep.add(make_case({{"n", {double(n)}}, {"K", {double(K)}}, {"x", x}, {"y", y}, {"alpha", {alpha}}}, lhs, rhs));
    return rep;
}

IdentityReport baxter_commutativity_check(int n, const std::vector<double>& z, Complex lambda_c, Coupling g,
                                          const QuadSpec& spec, double tolerance) {
    if (n != 1 && n != 2) throw DomainError("baxter_commutativity_check: n must be 1 or 2");
    if (static_cast<int>(z.size()) != 2 * n) throw DomainError("baxter_commutativity_check: z needs 2n entries");
    if (!(std::fabs(lambda_c.imag()) < double(g))) {
        throw DomainError("baxter_commutativity_check: need |Im lambda| < g");
    }
    IdentityReport rep{"commutativity", {}, true, tolerance};
    const Complex phase = cexp_i2pi(lambda_c * sum(z));
    const std::vector<Complex> zc = as_complex(z);
    rep.add(make_case({{"kernel", {0.0}}, {"z", zc}, {"lambda", {lambda_c}}}, q_integral(n, z, lambda_c, g, false, spec),
                      phase * q_integral(n, z, -lambda_c, g, false, spec)));
    if (std::fabs(lambda_c.imag()) < 1.0) {
        rep.add(make_case({{"kernel", {1.0}}, {"z", zc}, {"lambda", {lambda_c}}}, q_integral(n, z, lambda_c, g, true, spec),
                          phase * q_integral(n, z, -lambda_c, g, true, spec)));
    }
    return rep;
}

IdentityReport kernel_function_identity_check(int k, const std::vector<double>& x, const std::vector<double>& y,
                                              Coupling g, const FDStencil& stencil, double tolerance) {
    if (k != 1 && k != 2) throw DomainError("kernel_function_identity_check: k must be 1 or 2");
    if (x.size() != 2 || y.size() != 2) throw DomainError("kernel_function_identity_check: n = 2 only");
    if (x[0] == x[1] || y[0] == y[1]) throw DomainError("kernel_function_identity_check: points on a diagonal");
    stencil.validate();
    auto kxy = [&](const std::array<double, 4>& p) -> Complex {
        double v = 1.0;
        for (int i = 0; i < 2; ++i) {
            for (int a = 2; a < 4; ++a) v *= kernel_K(p[i] - p[a], g);
        }
        return v;
    };
    const std::array<double, 4> p{x[0], x[1], y[0], y[1]};
    Complex lhs, rhs;
    if (k == 1) {
        lhs = first_diff(kxy, p, 0, stencil) + first_diff(kxy, p, 1, stencil);
        rhs = -(first_diff(kxy, p, 2, stencil) + first_diff(kxy, p, 3, stencil));
    } else {
        auto conj = [&](bool on_x) {
            auto f = [&](const PositionPoint& u) {
                std::array<double, 4> q = p;
                q[on_x ? 0 : 2] = u[0];
                q[on_x ? 1 : 3] = u[1];
                return weight_w(u[0] - u[1], g) * kxy(q);
            };
            const PositionPoint at = on_x ? x : y;
            return apply_cs_operator(f, at, g, stencil) / weight_w(at[0] - at[1], g);
        };
        lhs = conj(true);
        rhs = conj(false);
    }
    IdentityReport rep{"kernel-function-identity", {}, true, tolerance};
    rep.add(make_case({{"k", {double(k)}}, {"x", as_complex(x)}, {"y", as_complex(y)}}, lhs, rhs));
    return rep;
}

}  // namespace ho
