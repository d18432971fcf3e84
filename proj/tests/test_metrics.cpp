#include "homlab/errors.hpp"
#include "homlab/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace homlab;

namespace {

std::vector<double> nodal(std::size_t n, double (*f)(double, double))
{
    std::vector<double> v((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= n; ++i) v[i + (n + 1) * j] = f(double(i) / n, double(j) / n);
    }
    return v;
}

double bump(double x, double y) { return x * (1 - x) * y * (1 - y) * 16; }

} // namespace

TEST_CASE("linear functions are interpolated exactly")
{
    const auto v = nodal(4, [](double x, double y) { return 3 * x - y + 2; });
    const auto r = restrict_to_reference(v, 4, 16);
    for (std::size_t j = 0; j <= 16; ++j) {
        for (std::size_t i = 0; i <= 16; ++i) {
            REQUIRE(r[i + 17 * j] == doctest::Approx(3.0 * i / 16 - double(j) / 16 + 2));
        }
    }
    CHECK(interpolate_p1(v, 4, 0.33, 0.71) == doctest::Approx(3 * 0.33 - 0.71 + 2));
    // non-aligned grids go through point interpolation
    const auto r3 = restrict_to_reference(nodal(3, [](double x, double y) { return x + y; }), 3, 8);
    CHECK(r3[5 + 9 * 2] == doctest::Approx(7.0 / 8));
}

TEST_CASE("same grid is the identity")
{
    const auto v = nodal(8, bump);
    CHECK(restrict_to_reference(v, 8, 8) == v);
}

TEST_CASE("hat function at the centre of a square on the diagonal")
{
    std::vector<double> v(9, 0.0);
    v[0] = 1.0; // hat at node (0, 0) of a 2 x 2 grid
    CHECK(interpolate_p1(v, 2, 0.25, 0.25) == doctest::Approx(0.5));
    v.assign(9, 0.0);
    v[1 + 3 * 1] = 1.0; // UR corner of square (0, 0)
    CHECK(interpolate_p1(v, 2, 0.25, 0.25) == doctest::Approx(0.5));
    v.assign(9, 0.0);
    v[1] = 1.0; // LR corner is off the diagonal
    CHECK(interpolate_p1(v, 2, 0.25, 0.25) == doctest::Approx(0.0));
}

TEST_CASE("grid transfer errors")
{
    CHECK_THROWS_AS(restrict_to_reference(std::vector<double>(81), 8, 4), GridMismatch);
    CHECK_THROWS_AS(restrict_to_reference(std::vector<double>(80), 8, 16), GridMismatch);
    CHECK_THROWS_AS(interpolate_p1(std::vector<double>(9), 2, 1.5, 0.5), QueryOutsideDomain);
}

TEST_CASE("relative errors: identity and homogeneity")
{
    const auto u = nodal(16, bump);
    const auto z = relative_errors(u, u, 16);
    CHECK(z.l2 == 0.0);
    CHECK(z.linf == 0.0);
    auto y = u;
    for (double& v : y) v *= 1.1;
    const auto e = relative_errors(y, u, 16);
    CHECK(e.l2 == doctest::Approx(0.1));
    CHECK(e.linf == doctest::Approx(0.1));
}

TEST_CASE("relative errors: a single spike")
{
    const std::size_t n = 64;
    const auto u = nodal(n, bump);
    auto y = u;
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    y[20 + (n + 1) * 30] += umax;
    const auto e = relative_errors(y, u, n);
    CHECK(e.linf == doctest::Approx(1.0));
    // weight h^2 on one node against ||u||_2 = 16/30
    CHECK(e.l2 == doctest::Approx((1.0 / n) / (16.0 / 30.0)).epsilon(0.01));
    CHECK(e.l2 < 0.05);
}

TEST_CASE("relative errors: scale invariance and triangle inequality")
{
    const std::size_t n = 16;
    std::mt19937_64 gen(1);
    std::normal_distribution<double> g;
    std::vector<double> u((n + 1) * (n + 1)), a(u.size()), b(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = g(gen);
        a[i] = u[i] + 0.1 * g(gen);
        b[i] = u[i] + 0.1 * g(gen);
    }
    auto su = u, sa = a;
    for (double& v : su) v *= -7.5;
    for (double& v : sa) v *= -7.5;
    const auto e = relative_errors(a, u, n);
    const auto es = relative_errors(sa, su, n);
    CHECK(es.l2 == doctest::Approx(e.l2));
    CHECK(es.linf == doctest::Approx(e.linf));
    // ||a - u|| <= ||a - b|| + ||b - u|| in the trapezoid norm
    const auto norm = [n](const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            for (std::size_t i = 0; i <= n; ++i) {
                const double w = (i == 0 || i == n ? 0.5 : 1.0) * (j == 0 || j == n ? 0.5 : 1.0);
                acc += w * v[i + (n + 1) * j] * v[i + (n + 1) * j];
            }
        }
        return std::sqrt(acc) / double(n);
    };
    const double nu = norm(u), nb = norm(b);
    CHECK(relative_errors(a, u, n).l2 * nu <=
          relative_errors(a, b, n).l2 * nb + relative_errors(b, u, n).l2 * nu + 1e-14);
}

TEST_CASE("zero reference is rejected")
{
    const std::vector<double> z(25, 0.0);
    CHECK_THROWS_AS(relative_errors(z, z, 4), ZeroReference);
    CHECK_THROWS_AS(relative_errors(std::vector<double>(24), z, 4), GridMismatch);
}

TEST_CASE("curve CSV")
{
    const std::vector<CurveRecord> r{{"exp", 0.125, CurveId::c2, NormId::linf, 0.5, "N_c=64"},
                                     {"exp", 0.0625, CurveId::c1, NormId::l2,
                                      std::numeric_limits<double>::quiet_NaN(), "noconv"}};
    CHECK(curves_to_csv(r) ==
          "experiment,h,curve,norm,value,meta\nexp,0.125,c2,Linf,0.5,N_c=64\nexp,0.0625,c1,L2,nan,noconv\n");
}

TEST_CASE("doubles print in shortest round-trip form")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5e-7}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.25) == "0.25");
}
