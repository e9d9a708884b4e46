#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ho/operators.hpp"
#include "ho/quadrature.hpp"
#include "ho/special_fn.hpp"

namespace ho {

struct IdentityCase {
    /// Named input values, recorded so a report is self-describing.
    std::vector<std::pair<std::string, std::vector<Complex>>> inputs;
    Complex lhs;
    Complex rhs;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
};

struct IdentityReport {
    std::string name;
    std::vector<IdentityCase> cases;
    bool pass = true;
    double tolerance = 0.0;

    /// Appends a case and updates `pass` (rel_diff <= tolerance).
    void add(IdentityCase c);
};

IdentityCase make_case(std::vector<std::pair<std::string, std::vector<Complex>>> inputs, Complex lhs,
                       Complex rhs);

/// int prod_k Gamma(a_k - i t) Gamma(i t - b_k) dt / 2 pi = prod Gamma(a_i - b_k) / Gamma(sum a - sum b).
IdentityReport barnes_check(Complex a1, Complex a2, Complex b1, Complex b2, const QuadSpec& spec,
                            double tolerance = 1e-8);

/// Gustafson's A-type integral in n = 1 or 2 variables (a, b of length n + 1).
IdentityReport gustafson_check(int n, const std::vector<Complex>& a, const std::vector<Complex>& b,
                               const QuadSpec& spec, double tolerance = 1e-5);

/// Rational kernel-function identity: sum over r-subsets in z against the same in y.
IdentityReport kernel_identity_check(int n, int r, const std::vector<Complex>& z, const std::vector<Complex>& y,
                                     Complex alpha, double tolerance = 1e-12);

/// Pochhammer identity summed over all compositions of K into n parts.
IdentityReport rational_hypergeom_check(int n, int K, const std::vector<Complex>& x,
                                        const std::vector<Complex>& y, Complex alpha, double tolerance = 1e-10);

/// All compositions of K into n nonnegative parts, lexicographic.
std::vector<std::vector<int>> compositions(int n, int K);

/// Q(z; lambda) = e^{2 pi i lambda sum z} Q(z; -lambda) for the cosh kernels and,
/// when |Im lambda| < 1, for the gamma kernels.
IdentityReport baxter_commutativity_check(int n, const std::vector<double>& z, Complex lambda_c, Coupling g,
                                          const QuadSpec& spec, double tolerance);

/// Kernel-function identity for K(x, y) with two particles on each side.
/// k = 1: sum of x-derivatives against minus the y-derivatives; k = 2: the
/// Hamiltonian conjugated by w on each side.
IdentityReport kernel_function_identity_check(int k, const std::vector<double>& x, const std::vector<double>& y,
                                              Coupling g, const FDStencil& stencil, double tolerance = 1e-5);

}  // namespace ho
