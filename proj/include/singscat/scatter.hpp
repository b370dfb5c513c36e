#pragma once

#include "singscat/error.hpp"
#include "singscat/fundamental.hpp"
#include "singscat/mat2.hpp"

#include <complex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace singscat {

/// Left-incident unit plane wave: psi_- = e^{iwx} + r e^{-iwx}, psi_+ = t e^{iwx},
/// with w = sqrt(k).
struct ScatteringResult {
    double k = 0.0;
    std::complex<double> r;
    std::complex<double> t;
    double reflect_prob = 0.0;
    double transmit_prob = 0.0;
    double det_j = 1.0;
    /// |t|^2 + det J |r|^2 - det J; zero for an exact solve.
    double flux_residual = 0.0;
};

ScatteringResult scattering_amplitudes(const Mat2& J, double k);

/// One sweep point. Failed points carry the error instead of aborting the sweep.
struct ScatteringRow {
    double k = 0.0;
    std::optional<ScatteringResult> result;
    std::optional<ErrorCode> error;
};

std::vector<ScatteringRow> transmission_curve(const Mat2& J, std::span<const double> k_grid);

namespace spectrum {
struct Empty {};
struct Level {
    double kappa = 0.0;
    double energy = 0.0;
};
struct Discrete {
    std::vector<Level> levels;  // most deeply bound first
};
struct ContinuumDegenerate {};
}  // namespace spectrum

using BoundSpectrum = std::variant<spectrum::Empty, spectrum::Discrete, spectrum::ContinuumDegenerate>;

/// Decaying solutions e^{kappa x} | e^{-kappa x} matched through J:
/// J12 kappa^2 + (J11 + J22) kappa + J21 = 0, kappa > 0.
BoundSpectrum bound_states(const Mat2& J);

struct ChainLink {
    double x = 0.0;
    Mat2 junction;
};

/// Ordered singular points; positions must be strictly increasing.
using SingularChain = std::vector<ChainLink>;

/// Transfer from just left of the first point to just right of the last:
/// J_N F(x_N - x_{N-1}) ... J_2 F(x_2 - x_1) J_1. An empty chain is the identity.
Mat2 compose_chain(std::span<const ChainLink> chain, double k);

enum class Side { Left, Right };

struct SolutionSample {
    double x = 0.0;
    Side side = Side::Left;
    double psi = 0.0;
    double dpsi = 0.0;
};

/// Samples the piecewise solution; x = 0 yields both one-sided limits.
std::vector<SolutionSample> evaluate_solution(const PiecewiseSolution& sol,
                                              std::span<const double> xs);

}  // namespace singscat
