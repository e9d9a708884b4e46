#pragma once

#include <functional>

#include "ho/quadrature.hpp"
#include "ho/wavefunctions.hpp"

namespace ho {

/// Central finite-difference stencil for second derivatives.
struct FDStencil {
    int order = 5;  // 3 or 5 points per axis
    double h = 1e-3;

    void validate() const;
};

struct EigenResidual {
    Complex lhs;
    Complex rhs;
    double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1e-30)
};

EigenResidual make_residual(Complex lhs, Complex rhs);

/// sum_{i<j} 2 pi^2 g(g-1) / sh^2(pi (x_i - x_j)).
double cs_potential(const PositionPoint& x, Coupling g);

/// (-sum d^2/dx_i^2 + cs_potential) f at x, by central differences.
Complex apply_cs_operator(const std::function<Complex(const PositionPoint&)>& f, const PositionPoint& x,
                          Coupling g, const FDStencil& stencil);

/// Differential eigen-equation for h = w Psi against sum (2 pi lambda_j)^2 h.
/// Throws StepTooLarge when the h and 2h results disagree by more than 10%.
EigenResidual apply_cs_hamiltonian(const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                   const FDStencil& stencil, const QuadSpec& spec);

/// e_r(z_1, ..., z_n).
Complex elementary_symmetric(int r, const std::vector<Complex>& z);

/// Rational Macdonald operator M_r (shifts lambda_i -> lambda_i - i) applied to
/// Psi through the Euler form, against e_r(e^{2 pi x}) Psi.
EigenResidual apply_macdonald_rational(int r, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                       const QuadSpec& spec);

/// The same with reflected coupling and no sign, acting on F.
EigenResidual apply_dual_difference_Hr(int r, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                       const QuadSpec& spec);

/// Baxter operator Q_n(lambda_B) on Psi(.) against prod Khat(lambda_B - lambda_j) Psi.
EigenResidual apply_baxter(Complex lambda_B, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                           const QuadSpec& spec);

/// Dual Baxter operator in lambda against prod K(x_B - x_j) Psi.
EigenResidual apply_dual_baxter(double x_B, const SpectralPoint& lambda, const PositionPoint& x, Coupling g,
                                const QuadSpec& spec);

}  // namespace ho
