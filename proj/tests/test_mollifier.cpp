#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "singscat/convergence.hpp"
#include "singscat/junction.hpp"
#include "singscat/mollifier.hpp"
#include "singscat/scatter.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace singscat;

namespace {

constexpr double pi = std::numbers::pi;
const std::vector<double> kDecades = {1e-1, 1e-2, 1e-3, 1e-4};

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

void check_mat(const Mat2& got, const Mat2& want, double tol) {
    INFO("got " << got << " want " << want);
    CHECK(max_abs_diff(got, want) <= tol);
}

}  // namespace

TEST_CASE("mollifier shapes") {
    CHECK_NOTHROW(verify_shapes());
    for (const auto& s : kAllShapes) {
        CHECK(shape_moment(s) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(parse_shape(s.name()).kind() == s.kind());
        for (double y : {0.0, 0.1, 0.3, 0.49, 0.7, 0.99, 2.0, 7.9}) {
            CHECK(s(y) == s(-y));
            CHECK(s(y) >= 0.0);
        }
        CHECK(s(s.half_support() * 1.0001) == 0.0);
    }
    CHECK(parse_shape("tophat").half_support() == 0.5);
    CHECK(parse_shape("gauss").half_support() == 8.0);
    CHECK(code_of([] { parse_shape("lorentz"); }) == ErrorCode::InvalidArgument);

    // Closed-form moments: triangle 2/(m+1), tophat 1.
    for (double m : {0.5, 1.0, 2.0, 3.0}) {
        CHECK(shape_moment(parse_shape("triangle"), m) == doctest::Approx(2.0 / (m + 1.0)).epsilon(1e-12));
        CHECK(shape_moment(parse_shape("tophat"), m) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(shape_moment(parse_shape("cosine"), 2.0) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("regularized potential integrates to c eps^(1-m) int phi^m") {
    using boost::math::quadrature::gauss_kronrod;
    for (const auto& s : kAllShapes) {
        for (auto [m, c, eps] : std::vector<std::array<double, 3>>{{1.0, -1.0, 1e-2}, {0.5, 3.0, 1e-3}, {2.0, -2.0, 0.1}}) {
            const RegularizedPotential U({m, c}, s, eps);
            const double h = U.half_width();
            const double q = gauss_kronrod<double, 61>::integrate([&](double x) { return U(x); }, -h, 0.0, 15, 1e-13) +
                             gauss_kronrod<double, 61>::integrate([&](double x) { return U(x); }, 0.0, h, 15, 1e-13);
            CHECK(q == doctest::Approx(U.expected_integral()).epsilon(1e-9));
        }
    }
    const RegularizedPotential tri({2.0, -3.0}, parse_shape("triangle"), 0.01);
    CHECK(tri.expected_integral() == doctest::Approx(-3.0 * std::pow(0.01, -1.0) * 2.0 / 3.0));
    CHECK(tri(0.0) == doctest::Approx(-3.0 / (0.01 * 0.01)));
    CHECK(tri(0.02) == 0.0);

    CHECK(code_of([] { RegularizedPotential({1.0, 1.0}, MollifierShape(ShapeKind::TopHat), 0.0); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([] { RegularizedPotential({0.0, 1.0}, MollifierShape(ShapeKind::TopHat), 0.1); }) ==
          ErrorCode::InvalidExponent);
}

TEST_CASE("numeric transfer examples") {
    for (const auto& s : kAllShapes) {
        const RegularizedPotential zero({1.0, 0.0}, s, 0.3);
        for (double k : {-2.0, 0.0, 1.0, 9.0}) {
            const Mat2 want = free_transfer(k, 2 * zero.half_width());
            check_mat(numeric_transfer(zero, k), want, 1e-12 * std::max(1.0, want.max_abs()));
        }
    }

    // A top-hat is one constant cell of depth c / eps and width eps.
    const RegularizedPotential well({1.0, -1.0}, parse_shape("tophat"), 1e-2);
    check_mat(numeric_transfer(well, 1.0), free_transfer(1.0 + 1.0 / 1e-2, 1e-2), 1e-12);

    const RegularizedPotential tri({1.0, 2.0}, parse_shape("triangle"), 1e-2);
    const Mat2 t = numeric_transfer(tri, 1.0);
    CHECK(std::abs(t.det() - 1.0) <= 1e-10);
    check_mat(numeric_transfer(tri, 1.0, 1e-11), t, 1e-9);
}

TEST_CASE("top-hat transfer equals the one-cell closed form for every resolution") {
    for (auto [m, c, eps, k] : std::vector<std::array<double, 4>>{
             {1.0, -1.0, 1e-3, 1.0}, {0.5, 4.0, 1e-2, 2.0}, {2.0, -pi * pi, 1e-2, 0.5}, {3.0, -1.0, 1e-3, 1.0}, {1.0, 5.0, 0.2, -3.0}}) {
        const RegularizedPotential U({m, c}, parse_shape("tophat"), eps);
        const Mat2 closed = free_transfer(k - c * std::pow(eps, -m), eps);
        const double scale = std::max(1.0, closed.max_abs());
        for (double tol : {1e-6, 1e-10, 1e-13}) {
            check_mat(numeric_transfer(U, k, tol), closed, 1e-12 * scale);
        }
        for (long cells : {1L, 7L, 64L, 1000L}) {
            const double h = eps / static_cast<double>(cells);
            Mat2 prod = Mat2::identity();
            for (long i = 0; i < cells; ++i) prod = free_transfer(k - c * std::pow(eps, -m), h) * prod;
            check_mat(prod, closed, 1e-12 * scale);
        }
    }
}

TEST_CASE("numeric transfer failures") {
    // Barrier of height eps^-3 over width eps: cosh(1000) overflows.
    const RegularizedPotential barrier({3.0, 1.0}, parse_shape("tophat"), 1e-6);
    CHECK(code_of([&] { numeric_transfer(barrier, 1.0); }) == ErrorCode::Overflow);

    const RegularizedPotential tri({1.0, -1.0}, parse_shape("triangle"), 0.1);
    CHECK(code_of([&] { numeric_transfer(tri, 1.0, 1e-17); }) == ErrorCode::NoConvergence);
    try {
        numeric_transfer(tri, 1.0, 1e-17);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("last two iterates") != std::string::npos);
    }
}

TEST_CASE("effective junction examples") {
    const Mat2 delta{1.0, 0.0, -1.0, 1.0};
    const RegularizedPotential small({1.0, -1.0}, parse_shape("tophat"), 1e-4);
    CHECK(max_abs_diff(effective_junction(small, 1.0), delta) <= 1e-4);

    // m = 2 at the first level: -I plus O(eps). Before the free propagation is
    // stripped the (2,1) entry is k eps / 2; stripping over eps/2 on each side
    // subtracts k eps.
    const double eps = 1e-3, k = 1.0;
    const RegularizedPotential res({2.0, -pi * pi}, parse_shape("tophat"), eps);
    const Mat2 m = effective_junction(res, k);
    CHECK(max_abs_diff(m, {-1.0, 0.0, 0.0, -1.0}) <= 2 * eps);
    CHECK(numeric_transfer(res, k).m21 == doctest::Approx(k * eps / 2).epsilon(1e-2));
    CHECK(m.m21 == doctest::Approx(-k * eps / 2).epsilon(1e-2));
    CHECK(m.m12 == doctest::Approx(eps).epsilon(1e-2));

    for (const auto& s : kAllShapes) {
        check_mat(effective_junction(RegularizedPotential({1.5, 0.0}, s, 0.01), 2.0), Mat2::identity(), 1e-12);
    }
}

TEST_CASE("convergence sweep rows") {
    const auto rows = convergence_sweep({1.0, -1.0}, parse_shape("tophat"), kDecades, 1.0, Mat2{1, 0, -1, 1});
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].eps == kDecades[i]);
        CHECK(rows[i].ok());
        CHECK(rows[i].det_err <= 1e-8);
        if (i > 0) CHECK(rows[i].deviation < rows[i - 1].deviation);
    }

    const auto unreferenced = convergence_sweep({1.5, -1.0}, parse_shape("tophat"), kDecades, 1.0, std::nullopt);
    for (const auto& r : unreferenced) CHECK(std::isnan(r.deviation));

    // Failing rows are flagged, not dropped.
    const std::vector<double> mixed = {1e-2, 1e-6};
    const auto flagged = convergence_sweep({3.0, 1.0}, parse_shape("tophat"), mixed, 1.0, std::nullopt);
    REQUIRE(flagged.size() == 2);
    CHECK(flagged[0].ok());
    CHECK_FALSE(flagged[1].ok());
    CHECK(flagged[1].error == ErrorCode::Overflow);

    const std::vector<double> increasing = {1e-3, 1e-2};
    CHECK(code_of([&] { convergence_sweep({1.0, 1.0}, parse_shape("tophat"), increasing, 1.0, std::nullopt); }) ==
          ErrorCode::InvalidArgument);
    const std::vector<double> negative = {1e-2, -1e-3};
    CHECK(code_of([&] { convergence_sweep({1.0, 1.0}, parse_shape("tophat"), negative, 1.0, std::nullopt); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("effective matrices stay unimodular in every regime") {
    const std::vector<PotentialSpec> specs = {{0.5, -3.0}, {1.0, 2.0}, {1.5, -1.0}, {2.0, -pi * pi}, {3.0, -1.0}};
    for (const auto& p : specs) {
        for (const auto& s : {parse_shape("tophat"), parse_shape("cosine")}) {
            for (const auto& row : convergence_sweep(p, s, kDecades, 1.0, std::nullopt)) {
                if (!row.ok()) continue;  // cosine at m = 3 may exhaust the cell cap
                INFO("m=" << p.m << " c=" << p.c << " shape=" << s.name() << " eps=" << row.eps);
                CHECK(row.det_err <= 1e-8);
            }
        }
    }
}

TEST_CASE("defined regimes converge for every shape") {
    for (const auto& s : kAllShapes) {
        for (auto [m, c, order] : std::vector<std::array<double, 3>>{{1.0, -1.0, 1.0}, {0.5, -3.0, 0.5}, {1.0, 2.0, 1.0}}) {
            const Mat2 ref = junction_matrix({m, c});
            const auto rows = convergence_sweep({m, c}, s, kDecades, 1.0, ref);
            const auto fit = estimate_order(rows);
            INFO("shape=" << s.name() << " m=" << m << " c=" << c);
            CHECK(fit.slope > 0.0);
            CHECK(fit.slope == doctest::Approx(order).epsilon(0.1));
            CHECK(fit.r2 >= 0.98);
            CHECK(certify_sweep(rows).verdict == Verdict::Converging);
        }
    }
}

TEST_CASE("mollified amplitudes match the junction amplitudes") {
    // Case I converges like |c| eps^(1-m), so m stays well below 1 here.

    for (const auto& s : kAllShapes) {
        for (const PotentialSpec p : {PotentialSpec{0.25, -1.0}, PotentialSpec{0.25, 1.0}, PotentialSpec{1.0, -1.0}, PotentialSpec{1.0, 3.0}}) {
            const auto exact = scattering_amplitudes(junction_matrix(p), 1.0);
            const auto moll = scattering_amplitudes(effective_junction(RegularizedPotential(p, s, 1e-4), 1.0), 1.0);
            INFO("shape=" << s.name() << " m=" << p.m << " c=" << p.c);
            CHECK(std::abs(moll.r - exact.r) <= 5e-3);
            CHECK(std::abs(moll.t - exact.t) <= 5e-3);
        }
    }
}

TEST_CASE("undefined regimes are certified non-convergent") {
    const auto growth = convergence_sweep({1.5, -1.0}, parse_shape("tophat"), kDecades, 1.0, std::nullopt);
    std::vector<double> eps, m21;
    for (const auto& r : growth) {
        eps.push_back(r.eps);
        m21.push_back(std::abs(r.effective->m21));
    }
    CHECK(fit_loglog(eps, m21).slope == doctest::Approx(-0.5).epsilon(0.1));
    CHECK(certify_sweep(growth).verdict == Verdict::NonConvergent);

    const auto osc = convergence_sweep({3.0, -1.0}, parse_shape("tophat"), kDecades, 1.0, std::nullopt);
    CHECK(certify_sweep(osc).verdict == Verdict::NonConvergent);
}

TEST_CASE("resonant search reproduces -(n pi)^2 for the top-hat") {
    const auto tophat = parse_shape("tophat");
    for (int n = 1; n <= 4; ++n) {
        const auto r = resonant_search(tophat, n);
        CHECK(r.n == n);
        CHECK(r.c == doctest::Approx(-(n * pi) * (n * pi)).epsilon(1e-10));
        CHECK(r.parity == (n % 2 == 0 ? 1 : -1));
    }
    const auto zero = resonant_search(tophat, 0);
    CHECK(zero.c == 0.0);
    CHECK(zero.parity == 1);
}

TEST_CASE("resonant levels depend on the mollifier") {
    // Reference levels from an independent DOP853 shooting + Brent root solve.
    struct Level {
        const char* shape;
        int n;
        double c;
    };
    const Level levels[] = {
        {"triangle", 1, -16.1009534920899}, {"triangle", 2, -48.7485578723808},
        {"triangle", 3, -104.983087464463}, {"triangle", 4, -177.030237614011},
        {"cosine", 1, -15.3313853531735},   {"cosine", 2, -51.022563289623},
        {"cosine", 3, -106.589853804938},   {"cosine", 4, -181.965383937734},
        {"gauss", 1, -16.864098587088},     {"gauss", 2, -54.3438823537401},
        {"gauss", 3, -111.813677925535},    {"gauss", 4, -189.163339346291},
    };
    for (const auto& lv : levels) {
        const auto r = resonant_search(parse_shape(lv.shape), lv.n);
        INFO(lv.shape << " n=" << lv.n);
        CHECK(r.c == doctest::Approx(lv.c).epsilon(1e-9));
        CHECK(r.parity == (lv.n % 2 == 0 ? 1 : -1));
        CHECK(std::abs(r.c + lv.n * lv.n * pi * pi) > 1.0);
    }
}

TEST_CASE("resonant search brackets") {
    const auto tophat = parse_shape("tophat");
    const auto r = resonant_search(tophat, 1, CouplingBracket{-20.0, 0.0});
    CHECK(r.c == doctest::Approx(-pi * pi).epsilon(1e-10));
    CHECK(code_of([&] { resonant_search(tophat, 1, CouplingBracket{-5.0, 0.0}); }) == ErrorCode::BracketError);
    CHECK(code_of([&] { resonant_search(tophat, 1, CouplingBracket{-50.0, 0.0}); }) == ErrorCode::BracketError);
    CHECK(code_of([&] { resonant_search(tophat, 1, CouplingBracket{-5.0, 1.0}); }) == ErrorCode::BracketError);
    CHECK(code_of([&] { resonant_search(tophat, 1, CouplingBracket{-5.0, -6.0}); }) == ErrorCode::BracketError);
    CHECK(code_of([&] { resonant_search(tophat, -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("triangle cell means are exact averages") {
    // Antiderivative of c eps^-m (1 - |x|/eps)^m in long double.
    const long double m = 0.3L, c = -2.0L, eps = 0.5L;
    const auto F = [&](long double x) {
        const long double y = std::clamp(x / eps, -1.0L, 1.0L);
        const long double side = (1.0L - std::pow(1.0L - std::abs(y), m + 1.0L)) / (m + 1.0L);
        return c * std::pow(eps, -m) * eps * (y < 0 ? -side : side);
    };
    const RegularizedPotential U({0.3, -2.0}, parse_shape("triangle"), 0.5);
    for (auto [a, b] : std::vector<std::array<double, 2>>{{-0.5, -0.4}, {-0.1, 0.2}, {0.49, 0.5}, {0.3, 0.3 + 1e-6}, {0.45, 0.7}}) {
        const long double want = (F(b) - F(a)) / (static_cast<long double>(b) - a);
        CHECK(U.cell_mean(a, b) == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
    }
    const RegularizedPotential gauss({1.0, 1.0}, parse_shape("gauss"), 0.1);
    CHECK(gauss.cell_mean(0.1, 0.3) == gauss(0.2));
}
