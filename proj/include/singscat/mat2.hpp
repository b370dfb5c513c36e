#pragma once

#include <array>
#include <iosfwd>

namespace singscat {

/// Real 2x2 matrix acting on the state vector (psi, dpsi/dx).
struct Mat2 {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    constexpr double det() const { return m11 * m22 - m12 * m21; }
    constexpr double trace() const { return m11 + m22; }

    /// Inverse via the adjugate; caller guarantees det() != 0.
    Mat2 inverse() const;

    bool is_finite() const;
    double max_abs() const;

    /// Applies the matrix to (value, derivative).
    constexpr std::array<double, 2> apply(std::array<double, 2> v) const {
        return {m11 * v[0] + m12 * v[1], m21 * v[0] + m22 * v[1]};
    }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Mat2 mat2_mul(const Mat2& a, const Mat2& b);

/// Largest entry-wise absolute difference.
double max_abs_diff(const Mat2& a, const Mat2& b);

std::ostream& operator<<(std::ostream& os, const Mat2& m);

}  // namespace singscat
