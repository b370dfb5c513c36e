#include "singscat/convergence.hpp"

#include <algorithm>
#include <cmath>

namespace singscat {

LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
    std::vector<double> lx, ly;
    const std::size_t n = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0 && std::isfinite(xs[i]) && std::isfinite(ys[i])) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    if (lx.size() < 3) {
        throw Error(ErrorCode::InsufficientData, "log-log fit needs at least 3 positive points");
    }
    const double m = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        throw Error(ErrorCode::InsufficientData, "log-log fit needs distinct abscissae");
    }
    LogLogFit fit;
    fit.points = lx.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

LogLogFit estimate_order(std::span<const ConvergenceRow> rows) {
    std::vector<double> eps, dev;
    for (const auto& r : rows) {
        if (!r.ok()) continue;
        eps.push_back(r.eps);
        dev.push_back(r.deviation);
    }
    return fit_loglog(eps, dev);
}

std::string_view verdict_tag(Verdict v) {
    switch (v) {
        case Verdict::Converging: return "converging";
        case Verdict::NonConvergent: return "non_convergent";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Certification certify_sweep(std::span<const ConvergenceRow> rows) {
    std::vector<double> eps, metric;
    for (const auto& r : rows) {
        if (!r.ok()) continue;
        eps.push_back(r.eps);
        metric.push_back(std::isnan(r.deviation) ? max_abs_diff(*r.effective, Mat2::identity())
                                                 : r.deviation);
    }

    Certification cert;
    cert.fit = fit_loglog(eps, metric);

    // eps is strictly decreasing, so a decade window is a contiguous run.
    for (std::size_t i = 0; i < eps.size(); ++i) {
        double lo = metric[i], hi = metric[i];
        for (std::size_t j = i + 1; j < eps.size() && eps[j] >= eps[i] / 10.0 * (1.0 - 1e-12); ++j) {
            lo = std::min(lo, metric[j]);
            hi = std::max(hi, metric[j]);
        }
        if (lo > 0.0) cert.decade_ratio = std::max(cert.decade_ratio, hi / lo);
    }

    if (cert.fit.slope <= -0.2 || (cert.fit.r2 < 0.5 && cert.decade_ratio > 5.0)) {
        cert.verdict = Verdict::NonConvergent;
    } else if (cert.fit.slope > 0.0) {
        cert.verdict = Verdict::Converging;
    }
    return cert;
}

double spread(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

}  // namespace singscat
