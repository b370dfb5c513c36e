#pragma once

#include "singscat/mat2.hpp"

#include <array>

// Shared vocabulary for u'' + k u = 0 and the singular potential family
// U(x) = c * delta^m(x). The spectral parameter k multiplies psi directly, so
// the wavenumber of a propagating state is sqrt(k); all quantities are
// dimensionless.

namespace singscat {

/// Exponent m > 0 and coupling c of U = c * delta^m.
struct PotentialSpec {
    double m = 1.0;
    double c = 0.0;

    /// Throws Error{InvalidExponent} unless m > 0 and both values are finite.
    void validate() const;
};

/// Same family concentrated on the sphere r = a.
struct ShellPotentialSpec {
    PotentialSpec base;
    double a = 1.0;

    void validate() const;
};

/// Uniform fundamental system of u'' + k u = 0 at a point x:
/// C(0)=1, C'(0)=0, S(0)=0, S'(0)=1.
struct FundamentalPair {
    double C = 1.0;
    double S = 0.0;
    double dC = 0.0;
    double dS = 1.0;
};

/// Valid for every real k: trigonometric for k > 0, hyperbolic for k < 0 and a
/// truncated series near |k| x^2 = 0 so k -> 0 is continuous.
FundamentalPair fundamental_pair(double k, double x);

/// S(k, x) / x, finite as x -> 0 (limit 1).
double sinc_s(double k, double x);

/// Propagates (psi, psi') across a potential-free interval of signed length h.
Mat2 free_transfer(double k, double h);

/// psi(x) = alpha * C(k, x) + beta * S(k, x); (alpha, beta) are the value and
/// derivative at x = 0.
struct BasisCoeffs {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Piecewise free solution with a junction at x = 0: right = junction * left.
struct PiecewiseSolution {
    double k = 0.0;
    BasisCoeffs left;
    BasisCoeffs right;
    Mat2 junction;
};

PiecewiseSolution make_piecewise(const Mat2& junction, double k, BasisCoeffs left);

}  // namespace singscat
