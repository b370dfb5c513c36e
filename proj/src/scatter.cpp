#include "singscat/scatter.hpp"
#include "singscat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace singscat {

ScatteringResult scattering_amplitudes(const Mat2& J, double k) {
    if (!(k > 0.0)) {
        throw Error(ErrorCode::NonPositiveEnergy,
                    "scattering needs k > 0, got " + std::to_string(k));
    }
    if (!J.is_finite()) {
        throw Error(ErrorCode::InvalidArgument, "junction matrix has non-finite entries");
    }
    using cplx = std::complex<double>;
    const double w = std::sqrt(k);
    const cplx iw{0.0, w};

    // Boundary data at 0: left (1 + r, iw(1 - r)), right (t, iw t). Eliminating
    // t from (right) = J (left) leaves det * r = numerator.
    const cplx det = iw * (J.m11 + J.m22) + w * w * J.m12 - J.m21;
    const double scale =
        w * (std::abs(J.m11) + std::abs(J.m22)) + w * w * std::abs(J.m12) + std::abs(J.m21);
    if (std::abs(det) <= 64.0 * std::numeric_limits<double>::epsilon() * scale || scale == 0.0) {
        throw Error(ErrorCode::NoScatteringState,
                    "junction admits no left-incident scattering state at k = " + std::to_string(k));
    }

    ScatteringResult out;
    out.k = k;
    out.det_j = J.det();
    out.r = (J.m21 + iw * (J.m22 - J.m11) + w * w * J.m12) / det;
    out.t = 2.0 * iw * out.det_j / det;
    out.reflect_prob = std::norm(out.r);
    out.transmit_prob = std::norm(out.t);
    out.flux_residual = out.transmit_prob + out.det_j * out.reflect_prob - out.det_j;
    return out;
}

std::vector<ScatteringRow> transmission_curve(const Mat2& J, std::span<const double> k_grid) {
    return parallel_map<ScatteringRow>(k_grid.size(), [&](std::size_t i) {
        ScatteringRow row;
        row.k = k_grid[i];
        try {
            row.result = scattering_amplitudes(J, row.k);
        } catch (const Error& e) {
            row.error = e.code();
        }
        return row;
    });
}

BoundSpectrum bound_states(const Mat2& J) {
    const double qa = J.m12;
    const double qb = J.m11 + J.m22;
    const double qc = J.m21;
    const double tol = 1e-14 * std::max(1.0, J.max_abs());

    if (std::abs(qa) <= tol && std::abs(qb) <= tol && std::abs(qc) <= tol) {
        return spectrum::ContinuumDegenerate{};
    }

    std::vector<double> roots;
    if (std::abs(qa) <= tol) {
        if (std::abs(qb) > tol) roots.push_back(-qc / qb);
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            // Cancellation-free pair of roots.
            const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
            if (q != 0.0) {
                roots.push_back(q / qa);
                roots.push_back(qc / q);
            } else {
                roots.push_back(0.0);
            }
        }
    }

    spectrum::Discrete d;
    std::sort(roots.begin(), roots.end(), std::greater<>());
    for (double kappa : roots) {
        if (!(kappa > 0.0) || !std::isfinite(kappa)) continue;
        if (!d.levels.empty() && std::abs(d.levels.back().kappa - kappa) <= tol * kappa) continue;
        d.levels.push_back({kappa, -kappa * kappa});
    }
    if (d.levels.empty()) return spectrum::Empty{};
    return d;
}

Mat2 compose_chain(std::span<const ChainLink> chain, double k) {
    Mat2 total = Mat2::identity();
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i > 0) {
            const double gap = chain[i].x - chain[i - 1].x;
            if (!(gap > 0.0)) {
                throw Error(ErrorCode::ChainOrder, "chain positions must be strictly increasing");
            }
            total = free_transfer(k, gap) * total;
        }
        total = chain[i].junction * total;
    }
    return total;
}

std::vector<SolutionSample> evaluate_solution(const PiecewiseSolution& sol,
                                              std::span<const double> xs) {
    std::vector<SolutionSample> out;
    out.reserve(xs.size() + 1);
    auto sample = [&](double x, Side side) {
        const BasisCoeffs& co = (side == Side::Left) ? sol.left : sol.right;
        const auto f = fundamental_pair(sol.k, x);
        out.push_back({x, side, co.alpha * f.C + co.beta * f.S, co.alpha * f.dC + co.beta * f.dS});
    };
    for (double x : xs) {
        if (x < 0.0) {
            sample(x, Side::Left);
        } else if (x > 0.0) {
            sample(x, Side::Right);
        } else {
            sample(0.0, Side::Left);
            sample(0.0, Side::Right);
        }
    }
    return out;
}

}  // namespace singscat
