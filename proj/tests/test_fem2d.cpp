#include "homlab/errors.hpp"
#include "homlab/fem2d.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace homlab;

namespace {

double manufactured(double x, double y) { return x * (1 - x) * y * (1 - y); }
double manufactured_source(double x, double y) { return 2.0 * (x * (1 - x) + y * (1 - y)); }

double manufactured_error(std::size_t n)
{
    const CartesianP1Mesh mesh(n);
    const std::vector<Sym2> coeff(n * n, Sym2::scalar(1.0));
    const auto sys = assemble_dirichlet(mesh, coeff, manufactured_source);
    const auto u = solve_spd(sys, {1e-12, 0});
    return l2_error(mesh, u, manufactured);
}

} // namespace

TEST_CASE("identity coefficient: interior diagonal 4 and load 10 h^2")
{
    const CartesianP1Mesh mesh(2);
    const std::vector<Sym2> coeff(4, Sym2::scalar(1.0));
    const auto sys = assemble_dirichlet(mesh, coeff, 10.0);
    const std::size_t c = mesh.node(1, 1);
    CHECK(sys.matrix.entry(c, c) == doctest::Approx(4.0));
    CHECK(sys.rhs[c] == doctest::Approx(10.0 * mesh.h() * mesh.h()));
    // boundary rows are identity with zero data
    CHECK(sys.matrix.entry(0, 0) == 1.0);
    CHECK(sys.rhs[0] == 0.0);
    CHECK(sys.matrix.entry(c, 0) == 0.0);
}

TEST_CASE("identity coefficient reproduces the 5-point stencil")
{
    const CartesianP1Mesh mesh(6);
    const std::vector<Sym2> coeff(36, Sym2::scalar(1.0));
    const auto sys = assemble_dirichlet(mesh, coeff, 0.0);
    const std::size_t c = mesh.node(3, 3);
    CHECK(sys.matrix.entry(c, mesh.node(4, 3)) == doctest::Approx(-1.0));
    CHECK(sys.matrix.entry(c, mesh.node(3, 4)) == doctest::Approx(-1.0));
    CHECK(sys.matrix.entry(c, mesh.node(2, 3)) == doctest::Approx(-1.0));
    CHECK(sys.matrix.entry(c, mesh.node(4, 4)) == doctest::Approx(0.0).scale(1.0));
    CHECK(sys.matrix.entry(c, mesh.node(2, 2)) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("operator is symmetric for a random anisotropic field")
{
    const std::size_t n = 5;
    const CartesianP1Mesh mesh(n);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    std::vector<Sym2> coeff(n * n);
    for (auto& k : coeff) k = {u(gen), 0.3 * (u(gen) - 1.25), u(gen)};
    const auto sys = assemble_dirichlet(mesh, coeff, 1.0);
    for (std::size_t r = 0; r < mesh.node_count(); ++r) {
        for (std::size_t c = 0; c < mesh.node_count(); ++c) {
            REQUIRE(sys.matrix.entry(r, c) == doctest::Approx(sys.matrix.entry(c, r)).scale(1.0));
        }
    }
    // apply agrees with entry
    std::vector<double> x(mesh.node_count()), y(mesh.node_count());
    for (auto& v : x) v = u(gen);
    sys.matrix.apply(x, y);
    for (std::size_t r = 0; r < x.size(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < x.size(); ++c) acc += sys.matrix.entry(r, c) * x[c];
        REQUIRE(y[r] == doctest::Approx(acc));
    }
}

TEST_CASE("zero source gives zero solution")
{
    const CartesianP1Mesh mesh(8);
    const std::vector<Sym2> coeff(64, Sym2::scalar(3.0));
    const auto u = solve_dirichlet(mesh, coeff, 0.0);
    for (double v : u) CHECK(v == 0.0);
}

TEST_CASE("solution scales with 1/c")
{
    const CartesianP1Mesh mesh(16);
    const std::vector<Sym2> one(256, Sym2::scalar(1.0));
    const std::vector<Sym2> four(256, Sym2::scalar(4.0));
    const auto u1 = solve_dirichlet(mesh, one, 10.0);
    const auto u4 = solve_dirichlet(mesh, four, 10.0);
    for (std::size_t i = 0; i < u1.size(); ++i) {
        REQUIRE(u4[i] == doctest::Approx(u1[i] / 4.0).scale(1e-3).epsilon(1e-8));
    }
}

TEST_CASE("manufactured solution converges at second order")
{
    const double e16 = manufactured_error(16);
    const double e32 = manufactured_error(32);
    const double e64 = manufactured_error(64);
    CHECK(e16 / e32 >= 3.5);
    CHECK(e16 / e32 <= 4.5);
    CHECK(e32 / e64 >= 3.5);
    CHECK(e32 / e64 <= 4.5);
}

TEST_CASE("non-SPD tensor is rejected")
{
    const CartesianP1Mesh mesh(2);
    std::vector<Sym2> coeff(4, Sym2::scalar(1.0));
    coeff[2] = {1.0, 2.0, 1.0};
    CHECK_THROWS_AS(assemble_dirichlet(mesh, coeff, 1.0), NonSpdCoefficient);
    CHECK_THROWS_AS(assemble_dirichlet(mesh, std::vector<Sym2>(3), 1.0), GridMismatch);
    CHECK_THROWS_AS(CartesianP1Mesh(0), DegenerateGrid);
}

TEST_CASE("iteration cap raises NoConvergence")
{
    const CartesianP1Mesh mesh(64);
    const std::vector<Sym2> coeff(64 * 64, Sym2::scalar(1.0));
    const auto sys = assemble_dirichlet(mesh, coeff, 10.0);
    SolverOptions opts;
    opts.max_iterations = 3;
    CHECK_THROWS_AS(solve_spd(sys, opts), NoConvergence);
}

TEST_CASE("periodic operator: zero row sums, symmetric, zero-mean solution")
{
    const std::size_t n = 6;
    StencilMatrix m(n, Constraint::periodic_zero_mean);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::array<std::size_t, 4> corners{i + n * j, (i + 1) % n + n * j,
                                                     (i + 1) % n + n * ((j + 1) % n),
                                                     i + n * ((j + 1) % n)};
            add_square_stiffness(m, corners, {true, true, true, true}, Sym2::scalar(u(gen)));
        }
    }
    for (std::size_t r = 0; r < n * n; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < n * n; ++c) {
            sum += m.entry(r, c);
            REQUIRE(m.entry(r, c) == doctest::Approx(m.entry(c, r)).scale(1.0));
        }
        REQUIRE(std::abs(sum) < 1e-12);
    }
    std::vector<double> rhs(n * n);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = std::sin(0.7 * double(i));
    double mean = 0.0;
    for (double v : rhs) mean += v / double(rhs.size());
    for (double& v : rhs) v -= mean;
    const SparseSpdSystem sys{m, rhs};
    SolveStats stats;
    const auto x = solve_spd(sys, {}, &stats);
    double xm = 0.0;
    for (double v : x) xm += v;
    CHECK(std::abs(xm) < 1e-12);
    std::vector<double> ax(x.size());
    m.apply(x, ax);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(ax[i] == doctest::Approx(rhs[i]).scale(1.0));
    CHECK(stats.relative_residual <= 1e-10);
    CHECK_THROWS_AS(StencilMatrix(2, Constraint::periodic_zero_mean), DegenerateGrid);
}

TEST_CASE("eigenvalues of Sym2")
{
    const auto ev = Sym2{2.0, 1.0, 2.0}.eigenvalues();
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(3.0));
}
