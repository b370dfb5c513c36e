#pragma once

#include "singscat/fundamental.hpp"
#include "singscat/junction.hpp"
#include "singscat/scatter.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

// s-wave scattering off a delta^m shell at r = a. With u = r R the radial
// equation becomes u'' + (k - U) u = 0 on r > 0 with u(0) = 0, so the shell is
// the one-dimensional junction problem with the interior playing the left side.

namespace singscat {

struct RadialSolution {
    double k = 0.0;
    ShellPotentialSpec shell;
    Mat2 junction;
    /// u(r) = A sin(sqrt(k) r) for r < a.
    double interior_amplitude = 1.0;
    /// u(r) = alpha C(k, r - a) + beta S(k, r - a) for r > a.
    BasisCoeffs exterior;
};

struct RadialResult {
    double k = 0.0;
    double a = 0.0;
    /// Principal branch, (-pi/2, pi/2].
    double delta0 = 0.0;
    /// (4 pi / k) sin^2(delta0)
    double sigma0 = 0.0;
    double interior_amplitude = 1.0;
};

RadialSolution radial_solution(const ShellPotentialSpec& shell, double k,
                               const std::optional<IvChoice>& choice = std::nullopt,
                               double resonance_tol = kDefaultResonanceTol,
                               double interior_amplitude = 1.0);

RadialResult s_wave_solve(const ShellPotentialSpec& shell, double k,
                          const std::optional<IvChoice>& choice = std::nullopt,
                          double resonance_tol = kDefaultResonanceTol);

/// Phase shift of a free exterior solution from its value and slope at r:
/// tan(sqrt(k) r + delta) = sqrt(k) u / u'. Reduced to (-pi/2, pi/2].
double phase_shift_at(double k, double r, double u, double du);

double reduce_phase(double delta);

struct RadialSample {
    double r = 0.0;
    Side side = Side::Left;  // Left = interior
    double R = 0.0;
    double u = 0.0;
    double du = 0.0;
};

/// r = a yields both one-sided limits. Throws InvalidArgument for r <= 0.
std::vector<RadialSample> radial_wavefunction(const RadialSolution& sol, std::span<const double> rs);

/// (R, R') at radius r.
struct RadialState {
    double r = 0.0;
    double R = 0.0;
    double dR = 0.0;
};

/// Classical RK4 on R'' + (2/r) R' + (k - U(r)) R = 0, without the u = r R
/// substitution. nodes must be increasing with nodes[0] == start.r > 0; each
/// interval between nodes is integrated with uniform steps no longer than
/// max_step, so potential discontinuities belong in nodes. Returns the state
/// at every node.
std::vector<RadialState> integrate_radial_direct(const std::function<double(double)>& U, double k,
                                                 RadialState start, std::span<const double> nodes,
                                                 double max_step);

}  // namespace singscat
