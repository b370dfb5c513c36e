#include "singscat/mat2.hpp"
#include "singscat/error.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace singscat {

std::string_view error_tag(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::InvalidExponent: return "invalid_exponent";
        case ErrorCode::UndefinedRegime: return "undefined_regime";
        case ErrorCode::MissingChoice: return "missing_choice";
        case ErrorCode::NonPositiveEnergy: return "non_positive_energy";
        case ErrorCode::NoScatteringState: return "no_scattering_state";
        case ErrorCode::ChainOrder: return "chain_order";
        case ErrorCode::NoConvergence: return "no_convergence";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::InsufficientData: return "insufficient_data";
        case ErrorCode::BracketError: return "bracket_error";
    }
    return "unknown";
}

Mat2 Mat2::inverse() const {
    const double d = det();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

bool Mat2::is_finite() const {
    return std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) && std::isfinite(m22);
}

double Mat2::max_abs() const {
    return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

Mat2 mat2_mul(const Mat2& a, const Mat2& b) { return a * b; }

double max_abs_diff(const Mat2& a, const Mat2& b) {
    return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12),
                     std::abs(a.m21 - b.m21), std::abs(a.m22 - b.m22)});
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.m11 << ", " << m.m12 << "], [" << m.m21 << ", " << m.m22 << "]]";
}

}  // namespace singscat
