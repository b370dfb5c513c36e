#include "singscat/fundamental.hpp"
#include "singscat/error.hpp"

#include <cmath>
#include <string>

namespace singscat {

namespace {

// Below this value of |k| x^2 the closed forms lose digits to cancellation in
// sin(wx)/w; the series is accurate to ~1e-20 relative there.
constexpr double kSeriesThreshold = 1e-4;

}  // namespace

void PotentialSpec::validate() const {
    if (!std::isfinite(m) || m <= 0.0) {
        throw Error(ErrorCode::InvalidExponent,
                    "exponent m must be a finite positive number, got " + std::to_string(m));
    }
    if (!std::isfinite(c)) {
        throw Error(ErrorCode::InvalidArgument, "coupling c must be finite");
    }
}

void ShellPotentialSpec::validate() const {
    base.validate();
    if (!std::isfinite(a) || a <= 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "shell radius a must be positive, got " + std::to_string(a));
    }
}

FundamentalPair fundamental_pair(double k, double x) {
    FundamentalPair f;
    const double z = k * x * x;
    if (std::abs(z) < kSeriesThreshold) {
        f.C = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
        f.S = x * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    } else if (k > 0.0) {
        const double w = std::sqrt(k);
        f.C = std::cos(w * x);
        f.S = std::sin(w * x) / w;
    } else {
        const double q = std::sqrt(-k);
        f.C = std::cosh(q * x);
        f.S = std::sinh(q * x) / q;
    }
    f.dC = -k * f.S;
    f.dS = f.C;
    return f;
}

double sinc_s(double k, double x) {
    const double z = k * x * x;
    if (std::abs(z) < kSeriesThreshold) {
        return 1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0;
    }
    return fundamental_pair(k, x).S / x;
}

Mat2 free_transfer(double k, double h) {
    const auto f = fundamental_pair(k, h);
    return {f.C, f.S, f.dC, f.dS};
}

PiecewiseSolution make_piecewise(const Mat2& junction, double k, BasisCoeffs left) {
    const auto right = junction.apply({left.alpha, left.beta});
    return {k, left, {right[0], right[1]}, junction};
}

}  // namespace singscat
