#pragma once

#include <string>
#include <vector>

#include "ho/quadrature.hpp"
#include "ho/special_fn.hpp"

namespace ho {

using SpectralPoint = std::vector<Complex>;
using PositionPoint = std::vector<double>;

/// Strictly lower-triangular matrix of nonnegative integers indexing one
/// term of the Harish-Chandra series. Indices are 1-based as in m_{ij}.
class HCIndexMatrix {
public:
    explicit HCIndexMatrix(int n);

    int n() const { return n_; }
    int operator()(int i, int j) const;
    void set(int i, int j, int value);
    int degree() const;
    /// p_{ij} = m_{ij} + m_{i+1,j} + ... + m_{nj}; p_{n+1,j} = 0.
    int p(int i, int j) const;

private:
    int n_;
    std::vector<int> m_;
};

enum class Rep { Euler, MellinBarnes, Series, Asymptotic, Zero };

Rep parse_rep(const std::string& name);
std::string rep_name(Rep rep);

/// Psi_lambda(x) from the Euler integral (nested over the real-space
/// variables, dimension n(n-1)/2). Complex lambda allowed while the spread of
/// Im lambda stays below g - 0.1.
EvalResult euler_psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                     const QuadSpec& spec);

/// Psi_lambda(x) from the Mellin-Barnes integral on the real contour.
/// Needs g > 1 and |Im lambda_i| < g/2.
EvalResult mb_psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                  const QuadSpec& spec);

/// Series coefficient c_M(lambda), written with gamma functions.
Complex hc_coeff(const HCIndexMatrix& M, const SpectralPoint& lambda, Coupling g);
/// The same coefficient written with what(.) factors.
Complex hc_coeff_what_form(const HCIndexMatrix& M, const SpectralPoint& lambda, Coupling g);

struct SeriesOptions {
    /// Fixed truncation degree; negative selects the shell rule.
    int k_max = -1;
    double rel_tol = 1e-13;
    int k_limit = 400;
};

struct SeriesResult {
    EvalResult result;
    int k_used = 0;
    std::vector<double> shell_norms;
};

/// Unsymmetrized series psi_lambda(x) (x strictly descending).
SeriesResult hc_psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                    const SeriesOptions& opts);

/// Sum of hc_psi over all orderings of lambda; equals Psi for x1 > ... > xn.
SeriesResult hc_psi_symmetrized(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                const SeriesOptions& opts);

/// Closed-form Psi_lambda(0).
Complex psi_zero(const SpectralPoint& lambda, Coupling g);

enum class Chamber { Descending, Ascending };

/// Leading asymptotics of Psi in the chosen ordered chamber.
Complex psi_asymptotic(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                       Chamber chamber);

/// prod_{i != j} 1/Gamma(i(lambda_i - lambda_j) + g) * alpha_n.
Complex ho_normalization(const SpectralPoint& lambda, Coupling g);

/// Heckman-Opdam function F = alpha_n prod 1/Gamma(i lambda_ij + g) Psi.
EvalResult ho_F(const SpectralPoint& lambda, const PositionPoint& x, Coupling g, Rep rep,
                const QuadSpec& spec);

/// Any representation of Psi behind one switch (Asymptotic uses the chamber of x).
EvalResult psi(const SpectralPoint& lambda, const PositionPoint& x, Coupling g, Rep rep,
               const QuadSpec& spec);

/// what(lambda_n) = prod_{i<j} what(lambda_i - lambda_j).
Complex what_product(const SpectralPoint& lambda, Coupling g);

/// Phi = what(lambda_n) Psi, with Psi from `rep` (Mellin-Barnes by default).
EvalResult phi_renormalized(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                            const QuadSpec& spec, Rep rep = Rep::MellinBarnes);
/// Phi-check = e^{pi g sum_i |x_i - x_n|} Phi.
EvalResult phi_check(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                     const QuadSpec& spec, Rep rep = Rep::MellinBarnes);
/// Asymptotic form of Phi in the descending chamber.
Complex phi_asymptotic(const SpectralPoint& lambda, const PositionPoint& x, Coupling g);

/// Delta-hat(lambda) = prod_{i<j} (1 + |lambda_i - lambda_j|).
double lattice_gap(const SpectralPoint& lambda);
/// N(g) = 4^{n-2} g - (4^{n-2} - 1)(g - 2)/3.
double bound_exponent(int n, double g);
/// (x, rho_n) with rho_n = ((n-1)/2, ..., (1-n)/2).
double x_dot_rho(const PositionPoint& x);
/// m_n(x) = min_i (x_i - x_{i+1}).
double min_gap(const PositionPoint& x);

}  // namespace ho
