#include "singscat/mollifier.hpp"
#include "singscat/parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

namespace singscat {

namespace {

constexpr double kGaussCut = 8.0;
const double kGaussNorm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * std::erf(kGaussCut / std::numbers::sqrt2));

double half_support_of(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::TopHat: return 0.5;
        case ShapeKind::Triangle: return 1.0;
        case ShapeKind::Cosine: return 1.0;
        case ShapeKind::Gaussian: return kGaussCut;
    }
    return 1.0;
}

}  // namespace

MollifierShape::MollifierShape(ShapeKind kind) : kind_(kind), half_support_(half_support_of(kind)) {}

double MollifierShape::operator()(double y) const noexcept {
    const double ay = std::abs(y);
    if (ay > half_support_) return 0.0;
    switch (kind_) {
        case ShapeKind::TopHat: return 1.0;
        case ShapeKind::Triangle: return 1.0 - ay;
        case ShapeKind::Cosine: return 0.5 * (1.0 + std::cos(std::numbers::pi * y));
        case ShapeKind::Gaussian: return kGaussNorm * std::exp(-0.5 * y * y);
    }
    return 0.0;
}

std::string_view MollifierShape::name() const noexcept {
    switch (kind_) {
        case ShapeKind::TopHat: return "tophat";
        case ShapeKind::Triangle: return "triangle";
        case ShapeKind::Cosine: return "cosine";
        case ShapeKind::Gaussian: return "gauss";
    }
    return "unknown";
}

MollifierShape parse_shape(std::string_view name) {
    for (const auto& s : kAllShapes) {
        if (s.name() == name) return s;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown mollifier shape '" + std::string(name) + "'");
}

double shape_moment(const MollifierShape& shape, double power) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double y) { return std::pow(shape(y), power); };
    const double s = shape.half_support();
    // Split at the origin: the triangle has its kink there.
    return gauss_kronrod<double, 61>::integrate(f, -s, 0.0, 15, 1e-14) +
           gauss_kronrod<double, 61>::integrate(f, 0.0, s, 15, 1e-14);
}

void verify_shapes() {
    static std::once_flag once;
    std::call_once(once, [] {
        for (const auto& s : kAllShapes) {
            const double mass = shape_moment(s);
            if (std::abs(mass - 1.0) > 1e-10) {
                throw Error(ErrorCode::InvalidArgument,
                            "mollifier '" + std::string(s.name()) + "' has mass " + std::to_string(mass));
            }
        }
    });
}

RegularizedPotential::RegularizedPotential(PotentialSpec p, MollifierShape shape, double eps)
    : p_(p), shape_(shape), eps_(eps) {
    p_.validate();
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    scale_ = p_.c * std::pow(eps_, -p_.m);
}

double RegularizedPotential::operator()(double x) const {
    const double phi = shape_(x / eps_);
    if (phi <= 0.0) return 0.0;
    return scale_ * std::pow(phi, p_.m);
}

namespace {

// Integral of (1 - y)^m over [y0, y1] inside [0, 1], free of cancellation for thin cells.
double triangle_side_integral(double y0, double y1, double m) {
    const double top = 1.0 - y0;
    if (!(top > 0.0) || !(y1 > y0)) return 0.0;
    const double ratio_log = std::log1p(-(y1 - y0) / top);
    return -std::pow(top, m + 1.0) * std::expm1((m + 1.0) * ratio_log) / (m + 1.0);
}

}  // namespace

double RegularizedPotential::cell_mean(double x0, double x1) const {
    if (shape_.kind() != ShapeKind::Triangle || !(x1 > x0)) return (*this)(0.5 * (x0 + x1));
    const double y0 = std::clamp(x0 / eps_, -1.0, 1.0);
    const double y1 = std::clamp(x1 / eps_, -1.0, 1.0);
    double integral = 0.0;
    if (y1 > 0.0) integral += triangle_side_integral(std::max(y0, 0.0), y1, p_.m);
    if (y0 < 0.0) integral += triangle_side_integral(std::max(-y1, 0.0), -y0, p_.m);
    return scale_ * integral * eps_ / (x1 - x0);
}

double RegularizedPotential::expected_integral() const {
    return p_.c * std::pow(eps_, 1.0 - p_.m) * shape_moment(shape_, p_.m);
}

namespace {

// Cells double until converged; mean(a, b) is the constant potential of cell [a, b].
Mat2 propagate_cells(const std::function<double(double, double)>& mean, double k, double lo, double hi,
                     double tol_rel, bool extrapolate) {
    if (!(hi > lo) || !(tol_rel > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "propagation needs lo < hi and tol_rel > 0");
    }
    auto product = [&](long cells) {
        const double h = (hi - lo) / static_cast<double>(cells);
        Mat2 m = Mat2::identity();
        for (long i = 0; i < cells; ++i) {
            const double a = lo + static_cast<double>(i) * h;
            m = free_transfer(k - mean(a, a + h), h) * m;
        }
        if (!m.is_finite()) {
            throw Error(ErrorCode::Overflow,
                        "transfer matrix overflowed with " + std::to_string(cells) + " cells");
        }
        return m;
    };

    auto richardson = [](const Mat2& fine, const Mat2& coarse) {
        return Mat2{fine.m11 + (fine.m11 - coarse.m11) / 3.0, fine.m12 + (fine.m12 - coarse.m12) / 3.0,
                    fine.m21 + (fine.m21 - coarse.m21) / 3.0, fine.m22 + (fine.m22 - coarse.m22) / 3.0};
    };

    Mat2 prev = product(kInitialCells);
    std::optional<Mat2> prev_extrap;
    for (long cells = 2 * kInitialCells; cells <= kMaxCells; cells *= 2) {
        const Mat2 cur = product(cells);
        if (!extrapolate) {
            if (max_abs_diff(cur, prev) <= tol_rel * std::max(1.0, cur.max_abs())) return cur;
        } else {
            const Mat2 ex = richardson(cur, prev);
            if (prev_extrap && max_abs_diff(ex, *prev_extrap) <= tol_rel * std::max(1.0, ex.max_abs())) {
                return ex;
            }
            prev_extrap = ex;
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << "cell propagation did not converge at " << kMaxCells << " cells; last two iterates "
        << prev << " and " << product(kMaxCells / 2);
    throw Error(ErrorCode::NoConvergence, msg.str());
}

}  // namespace

Mat2 propagate_profile(const std::function<double(double)>& U, double k, double lo, double hi,
                       double tol_rel, bool extrapolate) {
    return propagate_cells([&](double a, double b) { return U(0.5 * (a + b)); }, k, lo, hi, tol_rel, extrapolate);
}

Mat2 numeric_transfer(const RegularizedPotential& U, double k, double tol_rel) {
    const double h = U.half_width();
    return propagate_cells([&](double a, double b) { return U.cell_mean(a, b); }, k, -h, h, tol_rel, true);
}

Mat2 effective_junction(const RegularizedPotential& U, double k, double tol_rel) {
    const Mat2 back = free_transfer(k, -U.half_width());
    return back * numeric_transfer(U, k, tol_rel) * back;
}

std::vector<ConvergenceRow> convergence_sweep(const PotentialSpec& p, const MollifierShape& shape,
                                              std::span<const double> eps_list, double k,
                                              const std::optional<Mat2>& reference, double tol_rel) {
    p.validate();
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || (i > 0 && !(eps_list[i] < eps_list[i - 1]))) {
            throw Error(ErrorCode::InvalidArgument, "eps list must be positive and strictly decreasing");
        }
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return parallel_map<ConvergenceRow>(eps_list.size(), [&](std::size_t i) {
        ConvergenceRow row;
        row.eps = eps_list[i];
        row.deviation = nan;
        row.det_err = nan;
        try {
            const Mat2 m = effective_junction(RegularizedPotential(p, shape, row.eps), k, tol_rel);
            row.effective = m;
            row.det_err = std::abs(m.det() - 1.0);
            if (reference) row.deviation = max_abs_diff(m, *reference);
        } catch (const Error& e) {
            row.error = e.code();
        }
        return row;
    });
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

ResonanceResult resonant_search(const MollifierShape& shape, int n,
                                const std::optional<CouplingBracket>& bracket) {
    if (n < 0) {
        throw Error(ErrorCode::InvalidArgument, "resonance index must be nonnegative");
    }
    if (n == 0) return {0, 0.0, 1};

    const double s = shape.half_support();
    // q = sqrt(-c); levels are spaced roughly pi apart in q for every unit-mass shape.
    auto shoot = [&](double q) {
        const double c = -q * q;
        return propagate_profile([&](double y) { const double phi = shape(y); return c * phi * phi; },
                                 0.0, -s, s, 1e-10, true);
    };
    auto slope_at_exit = [&](double q) { return shoot(q).m21; };

    double q_lo = 0.0;
    double q_hi = (n + 2) * std::numbers::pi;
    if (bracket) {
        if (!(bracket->lo < bracket->hi) || bracket->hi > 0.0) {
            throw Error(ErrorCode::BracketError, "coupling bracket must satisfy lo < hi <= 0");
        }
        q_lo = std::sqrt(-bracket->hi);
        q_hi = std::sqrt(-bracket->lo);
    }
    const double q_limit = bracket ? q_hi : 64.0 * (n + 2) * std::numbers::pi;
    const double dq = std::min(std::numbers::pi / 32.0, (q_hi - q_lo) / 64.0);

    // w'(s) ~ c * int(phi^2) near c = 0, so start just off the trivial root.
    double qa = q_lo > 0.0 ? q_lo : dq / 4.0;
    double fa = slope_at_exit(qa);
    int count = 0;
    double root_lo = 0.0, root_hi = 0.0;
    while (qa < q_hi) {
        const double qb = std::min(qa + dq, q_hi);
        const double fb = slope_at_exit(qb);
        if (sign_of(fb) == 0 || (sign_of(fa) != 0 && sign_of(fa) != sign_of(fb))) {
            ++count;
            root_lo = qa;
            root_hi = qb;
            if (!bracket && count == n) break;
        }
        qa = qb;
        fa = fb;
        if (!bracket && qa >= q_hi && q_hi < q_limit) q_hi = std::min(2.0 * q_hi, q_limit);
    }
    if (count != n) {
        std::ostringstream msg;
        msg << "bracket holds " << count << " resonances, expected exactly " << n;
        throw Error(ErrorCode::BracketError, msg.str());
    }

    double flo = slope_at_exit(root_lo);
    for (int it = 0; it < 200 && root_hi - root_lo > 2.0 * std::numeric_limits<double>::epsilon() * root_hi; ++it) {
        const double mid = 0.5 * (root_lo + root_hi);
        const double fm = slope_at_exit(mid);
        if (fm == 0.0) {
            root_lo = root_hi = mid;
            break;
        }
        if (sign_of(fm) == sign_of(flo)) {
            root_lo = mid;
            flo = fm;
        } else {
            root_hi = mid;
        }
    }
    const double q = 0.5 * (root_lo + root_hi);
    const Mat2 m = shoot(q);
    return {n, -q * q, m.m11 >= 0.0 ? 1 : -1};
}

RadialResult mollified_s_wave(const ShellPotentialSpec& shell, const MollifierShape& shape, double eps,
                              double k, double tol_rel) {
    shell.validate();
    if (!(k > 0.0)) {
        throw Error(ErrorCode::NonPositiveEnergy, "s-wave scattering needs k > 0");
    }
    const RegularizedPotential U(shell.base, shape, eps);
    const double r_in = shell.a - U.half_width();
    const double r_out = shell.a + U.half_width();
    if (!(r_in > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "mollified shell support reaches the origin");
    }
    // u = sin(sqrt(k) r) / sqrt(k) = S(k, r) below the shell.
    const auto f = fundamental_pair(k, r_in);
    const Mat2 T = propagate_profile([&](double r) { return U(r - shell.a); }, k, r_in, r_out, tol_rel);
    const auto out = T.apply({f.S, f.C});

    RadialResult res;
    res.k = k;
    res.a = shell.a;
    res.interior_amplitude = 1.0 / std::sqrt(k);
    res.delta0 = phase_shift_at(k, r_out, out[0], out[1]);
    const double sd = std::sin(res.delta0);
    res.sigma0 = 4.0 * std::numbers::pi / k * sd * sd;
    return res;
}

}  // namespace singscat
