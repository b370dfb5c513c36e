#include "singscat/junction.hpp"
#include "singscat/error.hpp"

#include <cmath>
#include <numbers>

namespace singscat {

std::string_view regime_tag(const Regime& r) {
    struct Visitor {
        std::string_view operator()(const regime::NoEffect&) const { return "no_effect"; }
        std::string_view operator()(const regime::StandardDelta&) const { return "standard_delta"; }
        std::string_view operator()(const regime::ResonantSquare&) const { return "resonant_square"; }
        std::string_view operator()(const regime::Indeterminate&) const { return "indeterminate"; }
        std::string_view operator()(const regime::Undefined&) const { return "undefined"; }
    };
    return std::visit(Visitor{}, r);
}

IvChoice::IvChoice(int a, double b) : a_(a), b_(b) {
    if (a != 1 && a != -1) {
        throw Error(ErrorCode::InvalidArgument, "case IV parameter a must be +1 or -1");
    }
    if (!std::isfinite(b)) {
        throw Error(ErrorCode::InvalidArgument, "case IV parameter b must be finite");
    }
}

Regime classify_regime(const PotentialSpec& p, double resonance_tol) {
    p.validate();
    if (!(resonance_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "resonance tolerance must be positive");
    }

    if (std::abs(p.m - 1.0) <= kExponentTol) {
        return regime::StandardDelta{};
    }
    if (p.m < 1.0) {
        return regime::NoEffect{};
    }
    if (std::abs(p.m - 2.0) <= kExponentTol) {
        if (p.c > 0.0) {
            return regime::Undefined{"m = 2 requires c = -(n pi)^2; got positive c"};
        }
        const double nu = std::sqrt(-p.c) / std::numbers::pi;
        const double n = std::round(nu);
        // Relative window on nu, absolute for the n = 0 level.
        if (std::abs(nu - n) <= resonance_tol * std::max(1.0, n)) {
            return regime::ResonantSquare{static_cast<int>(n)};
        }
        return regime::Undefined{"m = 2 with c off the resonant levels -(n pi)^2"};
    }
    if (p.m > 2.0) {
        if (p.c < 0.0) {
            return regime::Indeterminate{};
        }
        return regime::Undefined{"m > 2 requires c < 0"};
    }
    return regime::Undefined{"1 < m < 2 admits no well determined junction"};
}

Mat2 junction_matrix(const PotentialSpec& p, const std::optional<IvChoice>& choice,
                     double resonance_tol) {
    const Regime r = classify_regime(p, resonance_tol);
    if (const auto* u = std::get_if<regime::Undefined>(&r)) {
        throw Error(ErrorCode::UndefinedRegime, u->reason);
    }
    if (std::holds_alternative<regime::NoEffect>(r)) {
        return Mat2::identity();
    }
    if (std::holds_alternative<regime::StandardDelta>(r)) {
        return {1.0, 0.0, p.c, 1.0};
    }
    if (const auto* res = std::get_if<regime::ResonantSquare>(&r)) {
        const double s = (res->n % 2 == 0) ? 1.0 : -1.0;
        return {s, 0.0, 0.0, s};
    }
    if (!choice) {
        throw Error(ErrorCode::MissingChoice,
                    "indeterminate regime (m > 2, c < 0) needs an explicit choice of a = +-1 and b");
    }
    return {static_cast<double>(choice->a()), 0.0, choice->b(), 1.0};
}

std::vector<ResonantCoupling> resonant_couplings(int n_max) {
    if (n_max < 0) {
        throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
    }
    std::vector<ResonantCoupling> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double q = n * std::numbers::pi;
        out.push_back({n, n == 0 ? 0.0 : -(q * q)});
    }
    return out;
}

}  // namespace singscat
