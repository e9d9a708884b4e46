#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ho/special_fn.hpp"

namespace ho {

/// Accuracy policy for the adaptive integrators.
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Maximum number of bisections applied to any initial panel.
    int max_depth = 30;
    /// Coefficient c in a tail bound C e^{-c|y|}; used when a Domain
    /// does not carry its own.
    double tail_decay = 0.0;
    /// The truncated tail may contribute at most tail_safety * tolerance.
    double tail_safety = 0.01;
    /// Hard cap on live panels of one 1-D integration.
    int max_panels = 20000;

    void validate() const;
    /// Tolerances divided by `factor` (used one nesting level down).
    QuadSpec tightened(double factor) const;
};

struct EvalResult {
    Complex value{0.0, 0.0};
    double abs_err = 0.0;
    long n_evals = 0;
};

/// Integration range. Infinite ends are truncated using the tail decay rate.
struct Domain {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    /// Origin from which tails are measured on the full line.
    double center = 0.0;
    /// Decay rate of the integrand envelope; 0 means "use QuadSpec::tail_decay".
    double tail_decay = 0.0;
    /// Largest oscillation frequency (cycles per unit length), sets panel width.
    double frequency = 0.0;
    /// Interior points where the integrand is not smooth.
    std::vector<double> breakpoints;

    static Domain interval(double a, double b);
    static Domain line(double center, double tail_decay, double frequency = 0.0);
    static Domain from(double a, double tail_decay, double frequency = 0.0);  // [a, inf)
    static Domain until(double b, double tail_decay, double frequency = 0.0); // (-inf, b]

    bool lower_infinite() const { return lower == -std::numeric_limits<double>::infinity(); }
    bool upper_infinite() const { return upper == std::numeric_limits<double>::infinity(); }
};

using Integrand = std::function<Complex(double)>;

/// Adaptive Gauss-Kronrod (7/15) integration with global bisection of the
/// worst panel. Throws DepthExceeded or NonFinite.
EvalResult integrate_1d(const Integrand& f, const Domain& domain, const QuadSpec& spec);

/// Radius R with prefactor * e^{-decay R} / decay <= abs_tol * tail_safety.
double truncation_radius(double tail_decay, double tail_prefactor, const QuadSpec& spec);

/// One level of an iterated integral. `domain` may depend on the outer
/// coordinates y[0..k-1]; `factor` receives y[0..k].
struct NestedLevel {
    std::function<Domain(std::span<const double>)> domain;
    std::function<Complex(std::span<const double>)> factor;
};

/// Iterated integral
///   int dy0 f0(y0) int dy1 f1(y0,y1) ... int dy_{d-1} f_{d-1}(y0..y_{d-1}),
/// outermost level first, d <= 3. Level k runs at tolerance spec / 10^k,
/// scaled by the outer factor. Inner results are memoized per outer abscissa.
EvalResult integrate_nested(std::span<const NestedLevel> levels, const QuadSpec& spec);

/// Convenience form with a single integrand of all coordinates.
EvalResult integrate_nested(const std::function<Complex(std::span<const double>)>& f,
                            std::span<const Domain> domains, const QuadSpec& spec);

}  // namespace ho
