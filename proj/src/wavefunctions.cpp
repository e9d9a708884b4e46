#include "ho/wavefunctions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ho/errors.hpp"

namespace ho {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);
constexpr double kCoincide = 1e-9;

void check_sizes(const SpectralPoint& lambda, const PositionPoint& x, const char* who) {
    if (lambda.empty() || lambda.size() != x.size()) {
        throw DomainError(std::string(who) + ": lambda and x must have equal nonzero length");
    }
}

void check_distinct(const SpectralPoint& lambda, const char* who) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) {
            if (std::abs(lambda[i] - lambda[j]) < kCoincide) {
                throw PoleError(std::string(who) + ": coincident spectral parameters");
            }
        }
    }
}

void check_descending(const PositionPoint& x, const char* who) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i] > x[i + 1])) throw DomainError(std::string(who) + ": x must be strictly descending");
    }
}

Complex sum(const SpectralPoint& v) { return std::accumulate(v.begin(), v.end(), Complex(0.0, 0.0)); }
double sum(const PositionPoint& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

Complex cexp_i2pi(Complex a) { return std::exp(2.0 * kPi * kI * a); }

double im_spread(const SpectralPoint& lambda) {
    double lo = lambda[0].imag(), hi = lo;
    for (const Complex& l : lambda) {
        lo = std::min(lo, l.imag());
        hi = std::max(hi, l.imag());
    }
    return hi - lo;
}

double mean(const PositionPoint& x) { return sum(x) / static_cast<double>(x.size()); }

// 1/what(u) = Gamma(iu) Gamma(g - iu)
Complex inv_what(Complex u, double g) { return gamma(kI * u) * gamma(g - kI * u); }

// Khat on a real argument through the fast path, otherwise the complex one.
Complex khat(Complex u, const Coupling& g) {
    if (u.imag() == 0.0) return detail::khat_real(u.real(), g);
    return dual_kernel_Khat(u, g);
}

template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    do {
        fn(s);
    } while (std::next_permutation(s.begin(), s.end()));
}

// All strictly-lower-triangular index matrices of total degree k.
template <class Fn>
void for_each_matrix(int n, int k, Fn&& fn) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 2; i <= n; ++i) {
        for (int j = 1; j < i; ++j) slots.emplace_back(i, j);
    }
    HCIndexMatrix M(n);
    if (slots.empty()) {
        if (k == 0) fn(M);
        return;
    }
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos + 1 == slots.size()) {
            M.set(slots[pos].first, slots[pos].second, left);
            fn(M);
            return;
        }
        for (int m = 0; m <= left; ++m) {
            M.set(slots[pos].first, slots[pos].second, m);
            self(self, pos + 1, left - m);
        }
    };
    rec(rec, 0, k);
}

}  // namespace

HCIndexMatrix::HCIndexMatrix(int n) : n_(n), m_(static_cast<std::size_t>(n * n), 0) {
    if (n < 1) throw DomainError("HCIndexMatrix: n must be positive");
}

int HCIndexMatrix::operator()(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) throw DomainError("HCIndexMatrix: index out of range");
    if (j >= i) return 0;
    return m_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))];
}

void HCIndexMatrix::set(int i, int j, int value) {
    if (i < 1 || j < 1 || i > n_ || j >= i) throw DomainError("HCIndexMatrix: need 1 <= j < i <= n");
    if (value < 0) throw DomainError("HCIndexMatrix: entries must be nonnegative");
    m_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))] = value;
}

int HCIndexMatrix::degree() const { return std::accumulate(m_.begin(), m_.end(), 0); }

int HCIndexMatrix::p(int i, int j) const {
    int s = 0;
    for (int k = i; k <= n_; ++k) s += (*this)(k, j);
    return s;
}

Rep parse_rep(const std::string& name) {
    if (name == "euler") return Rep::Euler;
    if (name == "mb" || name == "mellin-barnes") return Rep::MellinBarnes;
    if (name == "series") return Rep::Series;
    if (name == "asymptotic") return Rep::Asymptotic;
    if (name == "zero") return Rep::Zero;
    throw DomainError("unknown representation '" + name + "'");
}

std::string rep_name(Rep rep) {
    switch (rep) {
        case Rep::Euler: return "euler";
        case Rep::MellinBarnes: return "mb";
        case Rep::Series: return "series";
        case Rep::Asymptotic: return "asymptotic";
        case Rep::Zero: return "zero";
    }
    return "?";
}

EvalResult euler_psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                     const QuadSpec& spec) {
    check_sizes(lambda, x, "euler_psi");
    spec.validate();
    const std::size_t n = lambda.size();
    if (n > 3) throw DomainError("euler_psi: only n <= 3 is supported");
    if (n == 1) return {cexp_i2pi(lambda[0] * x[0]), 0.0, 1};
    const double spread = im_spread(lambda);
    if (spread >= g - 0.1) {
        throw DomainError("euler_psi: spread of Im lambda must stay below g - 0.1");
    }
    const double gv = g;
    const double c = 2.0 * kPi * gamma(gv).real();
    const double decay = 0.9 * 2.0 * kPi * (gv - spread);
    const double xc = mean(x);

    if (n == 2) {
        const Complex l12 = lambda[0] - lambda[1];
        auto f = [&](double y) {
            return cexp_i2pi(l12 * y) * (kernel_K(x[0] - y, g) * kernel_K(x[1] - y, g));
        };
        Domain d = Domain::line(xc, decay, std::fabs(l12.real()));
        if (x[0] != x[1]) d.breakpoints = {std::min(x[0], x[1]), std::max(x[0], x[1])};
        QuadSpec q = spec;
        const Complex pre = c * cexp_i2pi(lambda[1] * (x[0] + x[1]));
        q.abs_tol = spec.abs_tol / std::abs(pre);
        EvalResult r = integrate_1d(f, d, q);
        r.value *= pre;
        r.abs_err *= std::abs(pre);
        return r;
    }

    // n = 3: y21 > y22 by symmetry (the factor 2 cancels 1/2!)
    const Complex l12 = lambda[0] - lambda[1];
    const Complex l23 = lambda[1] - lambda[2];
    auto outer_K = [&](double y) {
        return kernel_K(x[0] - y, g) * kernel_K(x[1] - y, g) * kernel_K(x[2] - y, g);
    };
    const double f_out = std::fabs(l23.real()) + std::fabs(l12.real());
    std::array<NestedLevel, 3> levels;
    levels[0].domain = [&](std::span<const double>) { return Domain::line(xc, decay, f_out); };
    levels[0].factor = [&](std::span<const double> y) { return outer_K(y[0]) * cexp_i2pi(l23 * y[0]); };
    // the mass of the y22 integrand sits near the particles, not at y21
    const double x_min = *std::min_element(x.begin(), x.end());
    levels[1].domain = [&](std::span<const double> y) {
        Domain d = Domain::until(y[0], decay, f_out);
        d.center = std::min(y[0], x_min);
        return d;
    };
    levels[1].factor = [&](std::span<const double> y) {
        return outer_K(y[1]) * measure_mu(y[0] - y[1], g) * cexp_i2pi(l23 * y[1]);
    };
    levels[2].domain = [&](std::span<const double> y) {
        Domain d = Domain::line(0.5 * (y[0] + y[1]), 0.9 * 2.0 * kPi * (gv - std::fabs(l12.imag())),
                                std::fabs(l12.real()));
        if (y[0] != y[1]) d.breakpoints = {y[1], y[0]};
        return d;
    };
    levels[2].factor = [&](std::span<const double> y) {
        return kernel_K(y[0] - y[2], g) * kernel_K(y[1] - y[2], g) * cexp_i2pi(l12 * y[2]);
    };
    const Complex pre = c * c * c * cexp_i2pi(lambda[2] * sum(x));
    QuadSpec q = spec;
    q.abs_tol = spec.abs_tol / std::abs(pre);
    EvalResult r = integrate_nested(levels, q);
    r.value *= pre;
    r.abs_err *= std::abs(pre);
    return r;
}

EvalResult mb_psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                  const QuadSpec& spec) {
    check_sizes(lambda, x, "mb_psi");
    spec.validate();
    const std::size_t n = lambda.size();
    if (n > 3) throw DomainError("mb_psi: only n <= 3 is supported");
    if (n == 1) return {cexp_i2pi(lambda[0] * x[0]), 0.0, 1};
    g.require_above_one("mb_psi");
    const double gv = g;
    for (const Complex& l : lambda) {
        if (std::fabs(l.imag()) >= 0.5 * gv) throw DomainError("mb_psi: need |Im lambda_i| < g/2");
    }
    const double c = 1.0 / (2.0 * kPi * gamma(gv).real());
    const double decay = 0.85 * 2.0 * kPi;
    double lc = 0.0;
    for (const Complex& l : lambda) lc += l.real();
    lc /= static_cast<double>(n);

    if (n == 2) {
        const double x12 = x[0] - x[1];
        auto f = [&](double t) {
            return cexp_i2pi(x12 * t) * (khat(lambda[0] - t, g) * khat(lambda[1] - t, g));
        };
        const Complex pre = c * cexp_i2pi(x[1] * sum(lambda));
        QuadSpec q = spec;
        q.abs_tol = spec.abs_tol / std::abs(pre);
        EvalResult r = integrate_1d(f, Domain::line(lc, decay, std::fabs(x12)), q);
        r.value *= pre;
        r.abs_err *= std::abs(pre);
        return r;
    }

    const double x12 = x[0] - x[1];
    const double x23 = x[1] - x[2];
    auto outer_K = [&](double t) {
        return khat(lambda[0] - t, g) * khat(lambda[1] - t, g) * khat(lambda[2] - t, g);
    };
    const double f_out = std::fabs(x12) + std::fabs(x23);
    std::array<NestedLevel, 3> levels;
    levels[0].domain = [&](std::span<const double>) { return Domain::line(lc, decay, f_out); };
    levels[0].factor = [&](std::span<const double> t) { return outer_K(t[0]) * cexp_i2pi(x23 * t[0]); };
    double l_min = lambda[0].real();
    for (const Complex& l : lambda) l_min = std::min(l_min, l.real());
    levels[1].domain = [&](std::span<const double> t) {
        Domain d = Domain::until(t[0], decay, f_out);
        d.center = std::min(t[0], l_min);
        return d;
    };
    levels[1].factor = [&](std::span<const double> t) {
        return outer_K(t[1]) * detail::muhat_real(t[0] - t[1], gv) * cexp_i2pi(x23 * t[1]);
    };
    levels[2].domain = [&](std::span<const double> t) {
        return Domain::line(0.5 * (t[0] + t[1]), decay, std::fabs(x12));
    };
    levels[2].factor = [&](std::span<const double> t) {
        return detail::khat_real(t[0] - t[2], gv) * detail::khat_real(t[1] - t[2], gv) *
               cexp_i2pi(x12 * t[2]);
    };
    const Complex pre = c * c * c * cexp_i2pi(x[2] * sum(lambda));
    QuadSpec q = spec;
    q.abs_tol = spec.abs_tol / std::abs(pre);
    EvalResult r = integrate_nested(levels, q);
    r.value *= pre;
    r.abs_err *= std::abs(pre);
    return r;
}

namespace {

// prod over entries of (-1)^m Gamma(g+m) / (m! Gamma(g))
double hc_prefactor(const HCIndexMatrix& M, double g) {
    double c = 1.0;
    for (int i = 2; i <= M.n(); ++i) {
        for (int j = 1; j < i; ++j) {
            const int m = M(i, j);
            double t = 1.0;
            for (int k = 0; k < m; ++k) t *= -(g + k) / (k + 1.0);
            c *= t;
        }
    }
    return c;
}

// Visits the arguments of the numerator and denominator what-products.
template <class Num, class Den>
void hc_arguments(const HCIndexMatrix& M, const SpectralPoint& l, Num&& num, Den&& den) {
    const int n = M.n();
    auto p = [&](int i, int j) { return i > n ? 0 : M.p(i, j); };
    for (int k = 3; k <= n; ++k) {
        for (int s = 1; s < k; ++s) {
            for (int t = 1; t < k; ++t) {
                if (t != s) num(l[s - 1] - l[t - 1] + kI * double(p(k, s) - p(k, t)));
            }
        }
    }
    for (int k = 2; k <= n; ++k) {
        for (int s = 1; s < k; ++s) {
            for (int t = 1; t <= k; ++t) {
                if (t != s) den(l[s - 1] - l[t - 1] + kI * double(p(k, s) - p(k + 1, t)));
            }
        }
    }
}

void check_coeff_args(const HCIndexMatrix& M, const SpectralPoint& lambda) {
    if (static_cast<int>(lambda.size()) != M.n()) throw DomainError("hc_coeff: size mismatch");
    check_distinct(lambda, "hc_coeff");
}

}  // namespace

Complex hc_coeff(const HCIndexMatrix& M, const SpectralPoint& lambda, Coupling g) {
    check_coeff_args(M, lambda);
    const double gv = g;
    Complex c = hc_prefactor(M, gv);
    hc_arguments(
        M, lambda, [&](Complex u) { c *= rgamma(kI * u) * rgamma(gv - kI * u); },
        [&](Complex u) { c *= inv_what(u, gv); });
    return c;
}

Complex hc_coeff_what_form(const HCIndexMatrix& M, const SpectralPoint& lambda, Coupling g) {
    check_coeff_args(M, lambda);
    Complex num = hc_prefactor(M, g), den = 1.0;
    hc_arguments(
        M, lambda, [&](Complex u) { num *= dual_weight_what(u, g); },
        [&](Complex u) { den *= dual_weight_what(u, g); });
    if (den == Complex(0.0, 0.0)) throw PoleError("hc_coeff: denominator vanishes");
    return num / den;
}

double x_dot_rho(const PositionPoint& x) {
    const double n = static_cast<double>(x.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * (0.5 * (n - 1) - static_cast<double>(i));
    return s;
}

double min_gap(const PositionPoint& x) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) m = std::min(m, x[i] - x[i + 1]);
    return m;
}

SeriesResult hc_psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                    const SeriesOptions& opts) {
    check_sizes(lambda, x, "hc_psi");
    check_descending(x, "hc_psi");
    check_distinct(lambda, "hc_psi");
    const int n = static_cast<int>(lambda.size());
    Complex phase = 0.0;
    for (int i = 0; i < n; ++i) phase += x[i] * lambda[i];
    const Complex pre = std::exp(2.0 * kPi * (kI * phase - double(g) * x_dot_rho(x)));

    SeriesResult out;
    Complex total = 0.0;
    const bool fixed = opts.k_max >= 0;
    const int k_end = fixed ? opts.k_max : opts.k_limit;
    int quiet = 0;
    for (int k = 0; k <= k_end; ++k) {
        Complex shell = 0.0;
        long count = 0;
        for_each_matrix(n, k, [&](const HCIndexMatrix& M) {
            double e = 0.0;
            for (int i = 2; i <= n; ++i) {
                for (int j = 1; j < i; ++j) e += M(i, j) * (x[i - 1] - x[j - 1]);
            }
            shell += hc_coeff(M, lambda, g) * std::exp(2.0 * kPi * e);
            ++count;
        });
        if (!std::isfinite(shell.real()) || !std::isfinite(shell.imag())) {
            throw NonFinite("hc_psi: non-finite shell");
        }
        total += shell;
        out.result.n_evals += count;
        out.shell_norms.push_back(std::abs(shell));
        out.k_used = k;
        if (fixed) continue;
        quiet = std::abs(shell) <= opts.rel_tol * std::abs(total) ? quiet + 1 : 0;
        if (k >= 2 && quiet >= 2) break;
        if (k == k_end) throw Divergence("hc_psi: series did not settle within k_limit shells");
    }
    out.result.value = pre * total;
    out.result.abs_err = std::abs(pre) * out.shell_norms.back();
    return out;
}

SeriesResult hc_psi_symmetrized(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                const SeriesOptions& opts) {
    check_sizes(lambda, x, "hc_psi_symmetrized");
    SeriesResult out;
    for_each_permutation(static_cast<int>(lambda.size()), [&](const std::vector<int>& s) {
        SpectralPoint ls;
        for (int i : s) ls.push_back(lambda[i]);
        const SeriesResult r = hc_psi(ls, x, g, opts);
        out.result.value += r.result.value;
        out.result.abs_err += r.result.abs_err;
        out.result.n_evals += r.result.n_evals;
        out.k_used = std::max(out.k_used, r.k_used);
        if (out.shell_norms.size() < r.shell_norms.size()) out.shell_norms.resize(r.shell_norms.size(), 0.0);
        for (std::size_t k = 0; k < r.shell_norms.size(); ++k) out.shell_norms[k] += r.shell_norms[k];
    });
    return out;
}

Complex psi_zero(const SpectralPoint& lambda, Coupling g) {
    const int n = static_cast<int>(lambda.size());
    if (n == 0) throw DomainError("psi_zero: empty lambda");
    Complex v = 1.0 / alpha_n(n, g);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) v *= gamma(kI * (lambda[i] - lambda[j]) + double(g));
        }
    }
    return v;
}

Complex psi_asymptotic(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                       Chamber chamber) {
    check_sizes(lambda, x, "psi_asymptotic");
    check_distinct(lambda, "psi_asymptotic");
    const int n = static_cast<int>(lambda.size());
    if (chamber == Chamber::Descending) {
        check_descending(x, "psi_asymptotic");
    } else {
        PositionPoint r(x.rbegin(), x.rend());
        check_descending(r, "psi_asymptotic");
    }
    const double sign = chamber == Chamber::Descending ? -1.0 : 1.0;
    Complex s = 0.0;
    for_each_permutation(n, [&](const std::vector<int>& p) {
        Complex phase = 0.0, c = 1.0;
        for (int i = 0; i < n; ++i) phase += x[i] * lambda[p[i]];
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const Complex u = chamber == Chamber::Descending ? lambda[p[i]] - lambda[p[j]]
                                                                  : lambda[p[j]] - lambda[p[i]];
                c *= inv_what(u, g);
            }
        }
        s += cexp_i2pi(phase) * c;
    });
    return std::exp(sign * 2.0 * kPi * double(g) * x_dot_rho(x)) * s;
}

Complex ho_normalization(const SpectralPoint& lambda, Coupling g) {
    const int n = static_cast<int>(lambda.size());
    Complex v = alpha_n(n, g);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) v *= rgamma(kI * (lambda[i] - lambda[j]) + double(g));
        }
    }
    return v;
}

EvalResult psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g, Rep rep,
               const QuadSpec& spec) {
    check_sizes(lambda, x, "psi");
    switch (rep) {
        case Rep::Euler: return euler_psi(lambda, x, g, spec);
        case Rep::MellinBarnes: return mb_psi(lambda, x, g, spec);
        case Rep::Series: {
            PositionPoint xs = x;
            std::sort(xs.begin(), xs.end(), std::greater<>());
            SeriesOptions o;
            o.rel_tol = std::min(spec.rel_tol, 1e-6);
            return hc_psi_symmetrized(lambda, xs, g, o).result;
        }
        case Rep::Asymptotic: {
            PositionPoint xs = x;
            std::sort(xs.begin(), xs.end(), std::greater<>());
            return {psi_asymptotic(lambda, xs, g, Chamber::Descending), 0.0, 1};
        }
        case Rep::Zero:
            for (double v : x) {
                if (v != 0.0) throw DomainError("zero representation needs x = 0");
            }
            return {psi_zero(lambda, g), 0.0, 1};
    }
    throw DomainError("psi: unknown representation");
}

EvalResult ho_F(const SpectralPoint& lambda, const PositionPoint& x, Coupling g, Rep rep,
                const QuadSpec& spec) {
    EvalResult r = psi(lambda, x, g, rep, spec);
    const Complex c = ho_normalization(lambda, g);
    r.value *= c;
    r.abs_err *= std::abs(c);
    return r;
}

Complex what_product(const SpectralPoint& lambda, Coupling g) {
    Complex v = 1.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) v *= dual_weight_what(lambda[i] - lambda[j], g);
    }
    return v;
}

EvalResult phi_renormalized(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                            const QuadSpec& spec, Rep rep) {
    EvalResult r = psi(lambda, x, g, rep, spec);
    const Complex c = what_product(lambda, g);
    r.value *= c;
    r.abs_err *= std::abs(c);
    return r;
}

EvalResult phi_check(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                     const QuadSpec& spec, Rep rep) {
    EvalResult r = phi_renormalized(lambda, x, g, spec, rep);
    double s = 0.0;
    for (double v : x) s += std::fabs(v - x.back());
    const double e = std::exp(kPi * double(g) * s);
    r.value *= e;
    r.abs_err *= e;
    return r;
}

Complex phi_asymptotic(const SpectralPoint& lambda, const PositionPoint& x, Coupling g) {
    check_sizes(lambda, x, "phi_asymptotic");
    check_descending(x, "phi_asymptotic");
    check_distinct(lambda, "phi_asymptotic");
    const int n = static_cast<int>(lambda.size());
    Complex s = 0.0;
    for_each_permutation(n, [&](const std::vector<int>& p) {
        Complex phase = 0.0, c = 1.0;
        for (int i = 0; i < n; ++i) phase += x[i] * lambda[p[i]];
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (p[i] > p[j]) {
                    c *= dual_weight_what(lambda[p[j]] - lambda[p[i]], g) /
                         dual_weight_what(lambda[p[i]] - lambda[p[j]], g);
                }
            }
        }
        s += cexp_i2pi(phase) * c;
    });
    return std::exp(-2.0 * kPi * double(g) * x_dot_rho(x)) * s;
}

double lattice_gap(const SpectralPoint& lambda) {
    double d = 1.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j) d *= 1.0 + std::abs(lambda[i] - lambda[j]);
    }
    return d;
}

double bound_exponent(int n, double g) {
    const double q = std::pow(4.0, n - 2);
    return q * g - (q - 1.0) * (g - 2.0) / 3.0;
}

}  // namespace ho
