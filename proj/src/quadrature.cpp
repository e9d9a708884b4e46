#include "ho/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "ho/errors.hpp"

namespace ho {

namespace {

// Gauss-Kronrod 7/15 nodes on [-1,1] (nonnegative half) and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on the odd Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = 2.220446049250313e-16;

struct Sample {
    Complex value;
    double side;  // error carried in from inner integrations
};

struct Panel {
    double a, b;
    Complex value;
    double err;
    double resabs;
    double side;
    int depth;
};

struct Worse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.a > q.a;
    }
};

// Neumaier-compensated complex accumulator.
class Accum {
public:
    void add(Complex v) {
        add1(re_, cre_, v.real());
        add1(im_, cim_, v.imag());
    }
    Complex sum() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void add1(double& s, double& c, double x) {
        const double t = s + x;
        if (std::fabs(s) >= std::fabs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

template <class F>
Sample checked(const F& f, double x) {
    Sample s = f(x);
    if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag())) {
        throw NonFinite("integrand is not finite at y = " + std::to_string(x));
    }
    return s;
}

template <class F>
Panel gk15(const F& f, double a, double b, int depth, long& n_evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const Sample fc = checked(f, c);
    Complex kron = fc.value * kWgk[7];
    Complex gauss = fc.value * kWg[3];
    double resabs = std::abs(fc.value) * kWgk[7];
    double side = fc.side * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const Sample f1 = checked(f, c - dx);
        const Sample f2 = checked(f, c + dx);
        kron += kWgk[j] * (f1.value + f2.value);
        resabs += kWgk[j] * (std::abs(f1.value) + std::abs(f2.value));
        side += kWgk[j] * (f1.side + f2.side);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1.value + f2.value);
    }
    n_evals += 15;
    return {a, b, kron * h, std::abs((kron - gauss) * h), resabs * std::fabs(h),
            side * std::fabs(h), depth};
}

double tolerance(const QuadSpec& spec, double magnitude) {
    return std::max(spec.abs_tol, spec.rel_tol * magnitude);
}

// Largest |f(origin + dir t)| e^{decay t} over a few probe points.
template <class F>
double probe_prefactor(const F& f, double origin, double dir, double decay, long& n_evals) {
    static constexpr std::array<double, 6> kProbe = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    double p = 0.0;
    for (double s : kProbe) {
        const double t = s / decay;
        const double v = std::abs(checked(f, origin + dir * t).value);
        ++n_evals;
        p = std::max(p, v * std::exp(decay * t));
    }
    return p;
}

struct Tail {
    double end;
    double bound;
};

// Cut [origin, origin + dir*inf) at a radius where the tail bound p e^{-decay r}/decay
// drops below target.
template <class F>
Tail truncate_tail(const F& f, double origin, double dir, double decay, double p, double target,
                   long& n_evals) {
    if (p == 0.0) return {origin + dir * 8.0 / decay, 0.0};
    double r = std::max(0.0, std::log(p / (decay * target)) / decay);
    // The probed prefactor can be optimistic; extend until the endpoint agrees.
    for (int k = 0; k < 8; ++k) {
        const double v = std::abs(checked(f, origin + dir * r).value);
        ++n_evals;
        if (v <= 10.0 * p * std::exp(-decay * r) + 1e-300) break;
        r = r * 1.5 + 1.0 / decay;
    }
    return {origin + dir * r, p * std::exp(-decay * r) / decay};
}

template <class F>
EvalResult adaptive(const F& f, const Domain& domain, const QuadSpec& spec, int level) {
    spec.validate();
    long n_evals = 0;
    double lo = domain.lower;
    double hi = domain.upper;
    double tail_err = 0.0;
    if (domain.lower_infinite() || domain.upper_infinite()) {
        const double decay = domain.tail_decay > 0 ? domain.tail_decay : spec.tail_decay;
        if (!(decay > 0)) throw DomainError("infinite integration domain needs tail_decay > 0");
        double origin_lo = domain.lower_infinite() ? domain.center : domain.lower;
        double origin_hi = domain.upper_infinite() ? domain.center : domain.upper;
        if (domain.lower_infinite() && domain.upper_infinite()) origin_lo = origin_hi = domain.center;
        const double p_lo =
            domain.lower_infinite() ? probe_prefactor(f, origin_lo, -1.0, decay, n_evals) : 0.0;
        const double p_hi =
            domain.upper_infinite() ? probe_prefactor(f, origin_hi, 1.0, decay, n_evals) : 0.0;
        // Magnitude scale for the relative part of the tail target.
        double scale =
            std::abs(checked(f, domain.lower_infinite() ? origin_hi : origin_lo).value) / decay;
        ++n_evals;
        if (scale == 0.0) scale = std::max(p_lo, p_hi) / decay;
        const double target = std::max(spec.tail_safety * tolerance(spec, scale), 1e-300);
        if (domain.lower_infinite()) {
            const Tail t = truncate_tail(f, origin_lo, -1.0, decay, p_lo, target, n_evals);
            lo = t.end;
            tail_err += t.bound;
        }
        if (domain.upper_infinite()) {
            const Tail t = truncate_tail(f, origin_hi, 1.0, decay, p_hi, target, n_evals);
            hi = t.end;
            tail_err += t.bound;
        }
    }
    if (!(lo < hi)) {
        if (lo == hi) return {Complex(0.0, 0.0), 0.0, std::max(n_evals, 1L)};
        throw DomainError("integration domain has lower > upper");
    }

    std::vector<double> cuts{lo};
    for (double p : domain.breakpoints) {
        if (p > lo && p < hi) cuts.push_back(p);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double width = std::min(1.0, 1.0 / (1.0 + std::fabs(domain.frequency)));
    std::priority_queue<Panel, std::vector<Panel>, Worse> heap;
    std::vector<Panel> frozen;
    Complex total(0.0, 0.0);
    double total_err = 0.0;
    double total_abs = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double len = cuts[s + 1] - cuts[s];
        const int pieces = std::max(1, static_cast<int>(std::ceil(len / width - 1e-9)));
        for (int k = 0; k < pieces; ++k) {
            const double a = cuts[s] + len * k / pieces;
            const double b = (k + 1 == pieces) ? cuts[s + 1] : cuts[s] + len * (k + 1) / pieces;
            Panel p = gk15(f, a, b, 0, n_evals);
            total += p.value;
            total_err += p.err;
            total_abs += p.resabs;
            heap.push(p);
        }
    }

    auto finish = [&](bool ok) {
        std::vector<Panel> all = frozen;
        while (!heap.empty()) {
            all.push_back(heap.top());
            heap.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
        Accum acc;
        double err = 0.0;
        double side = 0.0;
        for (const Panel& p : all) {
            acc.add(p.value);
            err += p.err;
            side += p.side;
        }
        EvalResult r{acc.sum(), err + tail_err + side, n_evals};
        if (!ok) {
            throw DepthExceeded("adaptive quadrature did not reach tolerance (level " +
                                    std::to_string(level) + ", error " + std::to_string(r.abs_err) + ")",
                                level, r.value.real(), r.value.imag(), r.abs_err);
        }
        return r;
    };

    while (true) {
        const double tol = tolerance(spec, std::abs(total));
        if (total_err <= tol) return finish(true);
        if (total_err <= 50.0 * kEps * total_abs) return finish(true);  // roundoff floor
        if (heap.empty()) return finish(false);
        if (static_cast<int>(heap.size() + frozen.size()) >= spec.max_panels) return finish(false);
        const Panel worst = heap.top();
        heap.pop();
        if (worst.depth >= spec.max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gk15(f, worst.a, mid, worst.depth + 1, n_evals);
        const Panel right = gk15(f, mid, worst.b, worst.depth + 1, n_evals);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_abs += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
    }
}

struct NestedRun {
    std::span<const NestedLevel> levels;
    std::array<double, 3> y{};
    std::array<std::map<std::array<double, 3>, EvalResult>, 3> memo;
    long n_evals = 0;

    // Integral over levels[k..] with y[0..k-1] fixed.
    EvalResult inner(std::size_t k, const QuadSpec& spec) {
        const std::span<const double> outer(y.data(), k);
        const Domain dom = levels[k].domain(outer);
        auto sampler = [&](double t) -> Sample {
            y[k] = t;
            const Complex fac = levels[k].factor(std::span<const double>(y.data(), k + 1));
            if (k + 1 == levels.size() || fac == Complex(0.0, 0.0)) return {fac, 0.0};
            std::array<double, 3> key{};
            std::copy(y.begin(), y.begin() + k + 1, key.begin());
            auto it = memo[k + 1].find(key);
            EvalResult sub;
            if (it != memo[k + 1].end()) {
                sub = it->second;
            } else {
                QuadSpec child = spec.tightened(10.0);
                child.abs_tol = child.abs_tol / std::abs(fac);
                const std::array<double, 3> saved = y;
                sub = inner(k + 1, child);
                y = saved;
                memo[k + 1].emplace(key, sub);
            }
            return {fac * sub.value, std::abs(fac) * sub.abs_err};
        };
        EvalResult r = adaptive(sampler, dom, spec, static_cast<int>(k));
        n_evals += r.n_evals;
        return r;
    }
};

}  // namespace

void QuadSpec::validate() const {
    if (!(abs_tol > 0.0 || rel_tol > 0.0)) throw DomainError("QuadSpec needs abs_tol > 0 or rel_tol > 0");
    if (abs_tol < 0.0 || rel_tol < 0.0) throw DomainError("QuadSpec tolerances must be nonnegative");
    if (max_depth < 1) throw DomainError("QuadSpec max_depth must be >= 1");
    if (!(tail_safety > 0.0)) throw DomainError("QuadSpec tail_safety must be positive");
}

QuadSpec QuadSpec::tightened(double factor) const {
    QuadSpec s = *this;
    s.abs_tol /= factor;
    s.rel_tol /= factor;
    return s;
}

Domain Domain::interval(double a, double b) {
    Domain d;
    d.lower = a;
    d.upper = b;
    d.center = 0.5 * (a + b);
    return d;
}

Domain Domain::line(double center, double tail_decay, double frequency) {
    Domain d;
    d.center = center;
    d.tail_decay = tail_decay;
    d.frequency = frequency;
    return d;
}

Domain Domain::from(double a, double tail_decay, double frequency) {
    Domain d;
    d.lower = a;
    d.center = a;
    d.tail_decay = tail_decay;
    d.frequency = frequency;
    return d;
}

Domain Domain::until(double b, double tail_decay, double frequency) {
    Domain d;
    d.upper = b;
    d.center = b;
    d.tail_decay = tail_decay;
    d.frequency = frequency;
    return d;
}

EvalResult integrate_1d(const Integrand& f, const Domain& domain, const QuadSpec& spec) {
    return adaptive([&f](double x) { return Sample{f(x), 0.0}; }, domain, spec, 0);
}

double truncation_radius(double tail_decay, double tail_prefactor, const QuadSpec& spec) {
    if (!(tail_decay > 0.0)) throw DomainError("truncation_radius needs tail_decay > 0");
    const double target = spec.abs_tol * spec.tail_safety;
    if (!(target > 0.0)) throw DomainError("truncation_radius needs abs_tol > 0");
    return std::max(0.0, std::log(tail_prefactor / (tail_decay * target)) / tail_decay);
}

EvalResult integrate_nested(std::span<const NestedLevel> levels, const QuadSpec& spec) {
    if (levels.empty() || levels.size() > 3) {
        throw DomainError("integrate_nested supports 1 to 3 dimensions");
    }
    spec.validate();
    NestedRun run;
    run.levels = levels;
    EvalResult r = run.inner(0, spec);
    r.n_evals = run.n_evals;
    return r;
}

EvalResult integrate_nested(const std::function<Complex(std::span<const double>)>& f,
                            std::span<const Domain> domains, const QuadSpec& spec) {
    std::vector<NestedLevel> levels;
    const std::size_t d = domains.size();
    for (std::size_t k = 0; k < d; ++k) {
        NestedLevel lv;
        const Domain dom = domains[k];
        lv.domain = [dom](std::span<const double>) { return dom; };
        if (k + 1 == d) {
            lv.factor = f;
        } else {
            lv.factor = [](std::span<const double>) { return Complex(1.0, 0.0); };
        }
        levels.push_back(std::move(lv));
    }
    return integrate_nested(levels, spec);
}

}  // namespace ho
