#pragma once

#include "singscat/mollifier.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace singscat {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

/// Least-squares line through (log x, log y). Pairs with a non-positive or
/// non-finite coordinate are skipped; fewer than 3 usable pairs throw
/// InsufficientData.
LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

/// Slope of log(deviation) against log(eps): positive is the convergence order,
/// negative the divergence rate.
LogLogFit estimate_order(std::span<const ConvergenceRow> rows);

enum class Verdict { Converging, NonConvergent, Inconclusive };

std::string_view verdict_tag(Verdict v);

struct Certification {
    Verdict verdict = Verdict::Inconclusive;
    LogLogFit fit;
    /// Largest max/min ratio of the metric inside any one decade of eps.
    double decade_ratio = 1.0;
};

/// Judges a sweep by its deviation column or, for rows without a reference, by
/// the distance of the effective matrix from the identity. Non-convergent when
/// the fitted slope is <= -0.2, or when r^2 < 0.5 and the metric varies by more
/// than a factor 5 within a decade of eps.
Certification certify_sweep(std::span<const ConvergenceRow> rows);

/// max - min of a sequence; 0 when empty.
double spread(std::span<const double> values);

}  // namespace singscat
