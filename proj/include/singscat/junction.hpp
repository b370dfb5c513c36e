#pragma once

#include "singscat/fundamental.hpp"
#include "singscat/mat2.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace singscat {

inline constexpr double kDefaultResonanceTol = 1e-9;
/// Absolute tolerance used when testing m == 1 and m == 2.
inline constexpr double kExponentTol = 1e-12;

namespace regime {

struct NoEffect {};
struct StandardDelta {};
struct ResonantSquare {
    int n = 0;
};
struct Indeterminate {};
struct Undefined {
    std::string reason;
};

}  // namespace regime

using Regime = std::variant<regime::NoEffect, regime::StandardDelta, regime::ResonantSquare,
                            regime::Indeterminate, regime::Undefined>;

/// "no_effect", "standard_delta", "resonant_square", "indeterminate", "undefined".
std::string_view regime_tag(const Regime& r);

/// Free constants of the indeterminate case: J = [[a, 0], [b, 1]] with a = +-1.
class IvChoice {
public:
    IvChoice(int a, double b);

    int a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

private:
    int a_;
    double b_;
};

Regime classify_regime(const PotentialSpec& p, double resonance_tol = kDefaultResonanceTol);

/// Junction matrix relating (psi, psi') just right of the singular point to the
/// values just left of it. Energy independent.
///
/// Throws UndefinedRegime for parameters outside the four cases and
/// MissingChoice for the indeterminate case without an IvChoice. The choice is
/// ignored for every other regime.
Mat2 junction_matrix(const PotentialSpec& p, const std::optional<IvChoice>& choice = std::nullopt,
                     double resonance_tol = kDefaultResonanceTol);

struct ResonantCoupling {
    int n = 0;
    double c = 0.0;
};

/// c_n = -(n pi)^2 for n = 0..n_max.
std::vector<ResonantCoupling> resonant_couplings(int n_max);

}  // namespace singscat
