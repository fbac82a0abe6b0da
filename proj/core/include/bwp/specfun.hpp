#pragma once

// Special functions for the Poisson bipolar moment formulas: log-gamma (real
// and complex), the Gauss hypergeometric function 2F1(a, b; c; z) for complex a,
// real b in (0, 1], real c >= 1 and z in [0, 1], and the interference constants.

#include <complex>

namespace bwp::specfun {

using Complex = std::complex<double>;

/// Accuracy and work budget shared by the series and quadrature paths.
struct EvalControl {
    double rel_tol = 1e-10;  // in (0, 1e-6]
    int max_terms = 4096;    // series cap, >= 64
    int quad_points = 2000;  // max adaptive Gauss-Kronrod panels, >= 64

    /// Throws DomainError if any field is out of range.
    void validate() const;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Principal branch of ln Gamma(z) for Re z > 0.
Complex log_gamma_complex(Complex z);

/// ln Gamma(w + shift) - ln Gamma(w) without cancellation at large |w|;
/// needs Re w > 0 and Re(w + shift) > 0.
Complex log_gamma_ratio(Complex w, double shift);

/// 2F1(a, b; c; z). Dispatches to the Gauss sum at z = 1, the Maclaurin
/// series when |a| * (-ln(1 - z)) is small, and the Euler integral otherwise.
Complex hyp2f1(Complex a, double b, double c, double z, const EvalControl& ctl = {});

/// Maclaurin series; accurate only while the terms do not cancel heavily.
Complex hyp2f1_series(Complex a, double b, double c, double z, const EvalControl& ctl = {});

/// Euler integral Gamma(c)/(Gamma(b)Gamma(c-b)) * int_0^1 u^(b-1)(1-u)^(c-b-1)(1-zu)^(-a) du
/// for z in [0, 1). Large |Im a| moves the path into the half plane where
/// (1 - zu)^(-a) decays; otherwise the real segment is used.
Complex hyp2f1_euler(Complex a, double b, double c, double z, const EvalControl& ctl = {});

/// Gauss summation Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)); needs Re(c-a-b) > 0.
Complex hyp2f1_unit(Complex a, double b, double c);

/// C = pi Gamma(1 - delta) Gamma(1 + delta), delta in (0, 1).
double constant_C(double delta);

/// C_delta = (pi delta Gamma(1 - delta))^(1/(1-delta)) / (delta / (1 - delta)), delta in (0, 1).
double constant_C_delta(double delta);

}  // namespace bwp::specfun
