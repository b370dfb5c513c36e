#pragma once

#include "singscat/error.hpp"
#include "singscat/fundamental.hpp"
#include "singscat/mat2.hpp"
#include "singscat/radial.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Numerical cross-examination of the junction matrices. delta is replaced by
// delta_eps(x) = phi(x/eps)/eps for a unit-mass bump phi, so c delta^m becomes
// U_eps(x) = c eps^{-m} phi(x/eps)^m on [-s eps, s eps]. Transfer matrices across
// the support are built from exact constant-cell propagators.

namespace singscat {

inline constexpr double kDefaultIntegratorTol = 1e-10;
inline constexpr long kInitialCells = 64;
inline constexpr long kMaxCells = 1L << 22;

enum class ShapeKind { TopHat, Triangle, Cosine, Gaussian };

class MollifierShape {
public:
    explicit MollifierShape(ShapeKind kind);

    ShapeKind kind() const noexcept { return kind_; }
    /// phi vanishes outside [-s, s].
    double half_support() const noexcept { return half_support_; }
    double operator()(double y) const noexcept;

    /// "tophat", "triangle", "cosine", "gauss"
    std::string_view name() const noexcept;

private:
    ShapeKind kind_;
    double half_support_;
};

inline const MollifierShape kAllShapes[] = {
    MollifierShape(ShapeKind::TopHat), MollifierShape(ShapeKind::Triangle),
    MollifierShape(ShapeKind::Cosine), MollifierShape(ShapeKind::Gaussian)};

/// Throws InvalidArgument for an unknown name.
MollifierShape parse_shape(std::string_view name);

/// Integral of phi^power over its support by adaptive Gauss-Kronrod.
double shape_moment(const MollifierShape& shape, double power = 1.0);

/// Checks unit mass of every shape to 1e-10, once per process; throws on failure.
void verify_shapes();

class RegularizedPotential {
public:
    RegularizedPotential(PotentialSpec p, MollifierShape shape, double eps);

    const PotentialSpec& spec() const noexcept { return p_; }
    const MollifierShape& shape() const noexcept { return shape_; }
    double eps() const noexcept { return eps_; }
    double half_width() const noexcept { return shape_.half_support() * eps_; }

    double operator()(double x) const;

    /// Mean of U over [x0, x1]: exact for the triangle, whose edges make
    /// midpoint sampling converge slowly when m < 1; the midpoint value otherwise.
    double cell_mean(double x0, double x1) const;

    /// c eps^{1-m} * integral(phi^m)
    double expected_integral() const;

private:
    PotentialSpec p_;
    MollifierShape shape_;
    double eps_;
    double scale_;
};

/// Transfer matrix of u'' + (k - U) u = 0 across [lo, hi] with U frozen at cell
/// midpoints. Cells double from kInitialCells until successive products agree to
/// tol_rel (relative to max(1, largest entry)). Throws NoConvergence at kMaxCells
/// and Overflow when the product leaves the representable range. With
/// extrapolate set, successive Richardson values M_2N + (M_2N - M_N)/3 (the h^2
/// term of the midpoint rule cancelled, valid for smooth U) are compared and
/// returned instead.
Mat2 propagate_profile(const std::function<double(double)>& U, double k, double lo, double hi,
                       double tol_rel = kDefaultIntegratorTol, bool extrapolate = false);

/// propagate_profile across the support with cell means and extrapolation.
Mat2 numeric_transfer(const RegularizedPotential& U, double k, double tol_rel = kDefaultIntegratorTol);

/// numeric_transfer with the free propagation over each half of the support
/// stripped, so the result is directly comparable to a junction matrix at 0.
Mat2 effective_junction(const RegularizedPotential& U, double k, double tol_rel = kDefaultIntegratorTol);

struct ConvergenceRow {
    double eps = 0.0;
    std::optional<Mat2> effective;
    /// max-abs entry difference from the reference; NaN without one.
    double deviation = 0.0;
    /// |det M - 1|
    double det_err = 0.0;
    std::optional<ErrorCode> error;

    bool ok() const noexcept { return effective.has_value(); }
};

/// One row per eps (strictly decreasing, positive). Rows are never dropped; a
/// failed row carries its error code.
std::vector<ConvergenceRow> convergence_sweep(const PotentialSpec& p, const MollifierShape& shape,
                                              std::span<const double> eps_list, double k,
                                              const std::optional<Mat2>& reference,
                                              double tol_rel = kDefaultIntegratorTol);

struct ResonanceResult {
    int n = 0;
    double c = 0.0;
    int parity = 1;
};

struct CouplingBracket {
    double lo = 0.0;  // most negative coupling
    double hi = 0.0;
};

/// n-th zero-energy resonance of w'' = c phi(y)^2 w on [-s, s], counted by |c|:
/// the coupling for which w with (w, w')(-s) = (1, 0) also has w'(s) = 0.
/// Without a bracket the search widens from c = 0 until the n-th sign change of
/// w'(s) is found. A supplied bracket must contain exactly n sign changes.
/// Throws BracketError otherwise.
ResonanceResult resonant_search(const MollifierShape& shape, int n,
                                const std::optional<CouplingBracket>& bracket = std::nullopt);

/// s-wave phase shift of a mollified shell c delta_eps^m(r - a) from cell
/// propagation of u = r R. Requires s eps < a.
RadialResult mollified_s_wave(const ShellPotentialSpec& shell, const MollifierShape& shape, double eps,
                              double k, double tol_rel = kDefaultIntegratorTol);

}  // namespace singscat
