#include "singscat/radial.hpp"
#include "singscat/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace singscat {

namespace {

void require_positive_energy(double k) {
    if (!(k > 0.0)) {
        throw Error(ErrorCode::NonPositiveEnergy, "s-wave scattering needs k > 0, got " + std::to_string(k));
    }
}

}  // namespace

double reduce_phase(double delta) {
    constexpr double pi = std::numbers::pi;
    double d = delta - pi * std::round(delta / pi);
    if (d <= -pi / 2) d += pi;
    if (d > pi / 2) d -= pi;
    return d;
}

double phase_shift_at(double k, double r, double u, double du) {
    const double w = std::sqrt(k);
    return reduce_phase(std::atan2(w * u, du) - w * r);
}

RadialSolution radial_solution(const ShellPotentialSpec& shell, double k,
                               const std::optional<IvChoice>& choice, double resonance_tol,
                               double interior_amplitude) {
    shell.validate();
    require_positive_energy(k);

    RadialSolution sol;
    sol.k = k;
    sol.shell = shell;
    sol.junction = junction_matrix(shell.base, choice, resonance_tol);
    sol.interior_amplitude = interior_amplitude;

    const double w = std::sqrt(k);
    const auto f = fundamental_pair(k, shell.a);
    const auto ext = sol.junction.apply({interior_amplitude * w * f.S, interior_amplitude * w * f.C});
    sol.exterior = {ext[0], ext[1]};
    return sol;
}

RadialResult s_wave_solve(const ShellPotentialSpec& shell, double k,
                          const std::optional<IvChoice>& choice, double resonance_tol) {
    const RadialSolution sol = radial_solution(shell, k, choice, resonance_tol);
    RadialResult out;
    out.k = k;
    out.a = shell.a;
    out.interior_amplitude = sol.interior_amplitude;
    // Angle from the interior phase vector (u', w u) to the exterior one, so
    // J = +-I gives exactly zero.
    const double w = std::sqrt(k);
    const auto f = fundamental_pair(k, shell.a);
    const double x0 = sol.interior_amplitude * w * f.C;
    const double y0 = w * (sol.interior_amplitude * w * f.S);
    const double x1 = sol.exterior.beta, y1 = w * sol.exterior.alpha;
    out.delta0 = reduce_phase(std::atan2(x0 * y1 - y0 * x1, x0 * x1 + y0 * y1));
    const double s = std::sin(out.delta0);
    out.sigma0 = 4.0 * std::numbers::pi / k * s * s;
    return out;
}

std::vector<RadialSample> radial_wavefunction(const RadialSolution& sol, std::span<const double> rs) {
    const double a = sol.shell.a;
    const double w = std::sqrt(sol.k);
    const double amp = sol.interior_amplitude;

    std::vector<RadialSample> out;
    out.reserve(rs.size() + 1);
    auto interior = [&](double r) {
        const auto f = fundamental_pair(sol.k, r);
        // R = u / r through S/r so the origin limit A sqrt(k) is exact.
        out.push_back({r, Side::Left, amp * w * sinc_s(sol.k, r), amp * w * f.S, amp * w * f.C});
    };
    auto exterior = [&](double r) {
        const auto f = fundamental_pair(sol.k, r - a);
        const double u = sol.exterior.alpha * f.C + sol.exterior.beta * f.S;
        const double du = sol.exterior.alpha * f.dC + sol.exterior.beta * f.dS;
        out.push_back({r, Side::Right, u / r, u, du});
    };
    for (double r : rs) {
        if (!(r > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "radial samples need r > 0");
        }
        if (r < a) {
            interior(r);
        } else if (r > a) {
            exterior(r);
        } else {
            interior(r);
            exterior(r);
        }
    }
    return out;
}

std::vector<RadialState> integrate_radial_direct(const std::function<double(double)>& U, double k,
                                                 RadialState start, std::span<const double> nodes,
                                                 double max_step) {
    if (nodes.empty() || nodes.front() != start.r || !(start.r > 0.0) || !(max_step > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "direct radial integration needs nodes starting at r0 > 0");
    }
    // y = (R, R'), y' = (R', -(2/r) R' - (k - U) R). U is sampled strictly
    // inside the current interval so a jump sitting on a node is one-sided.
    double lo = 0.0, hi = 0.0;
    auto rhs = [&](double r, double R, double dR) {
        const double pad = 1e-9 * (hi - lo);
        const double v = U(std::clamp(r, lo + pad, hi - pad));
        return std::array<double, 2>{dR, -2.0 / r * dR - (k - v) * R};
    };

    std::vector<RadialState> out;
    out.reserve(nodes.size());
    out.push_back(start);
    RadialState s = start;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double len = nodes[i] - nodes[i - 1];
        if (!(len > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "direct radial integration nodes must increase");
        }
        const auto steps = static_cast<long>(std::ceil(len / max_step));
        const double h = len / static_cast<double>(steps);
        const double r0 = nodes[i - 1];
        lo = r0;
        hi = nodes[i];
        for (long j = 0; j < steps; ++j) {
            const double r = r0 + static_cast<double>(j) * h;
            const auto k1 = rhs(r, s.R, s.dR);
            const auto k2 = rhs(r + h / 2, s.R + h / 2 * k1[0], s.dR + h / 2 * k1[1]);
            const auto k3 = rhs(r + h / 2, s.R + h / 2 * k2[0], s.dR + h / 2 * k2[1]);
            const auto k4 = rhs(r + h, s.R + h * k3[0], s.dR + h * k3[1]);
            s.R += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
            s.dR += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        }
        s.r = nodes[i];
        out.push_back(s);
    }
    return out;
}

}  // namespace singscat
