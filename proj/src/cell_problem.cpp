#include "homlab/cell_problem.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homlab {

double EffectiveTensor::norm() const
{
    return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22);
}

namespace {

void check_samples(std::span<const double> samples, std::size_t n_c)
{
    if (n_c < 3) {
        throw DegenerateGrid("cell grid needs at least 3 squares per side");
    }
    if (samples.size() != n_c * n_c) {
        throw GridMismatch("cell samples need n_c * n_c values");
    }
    for (double a : samples) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw NonpositiveCoefficient("cell samples must be positive and finite");
        }
    }
}

std::array<std::size_t, 4> torus_corners(std::size_t i, std::size_t j, std::size_t n)
{
    const std::size_t ip = (i + 1) % n;
    const std::size_t jp = (j + 1) % n;
    return {i + n * j, ip + n * j, ip + n * jp, i + n * jp};
}

StencilMatrix assemble_cell_operator(std::span<const double> samples, std::size_t n)
{
    StencilMatrix m(n, Constraint::periodic_zero_mean);
    const std::array<bool, 4> all{true, true, true, true};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            add_square_stiffness(m, torus_corners(i, j, n), all, Sym2::scalar(samples[i + n * j]));
        }
    }
    return m;
}

/// -int_T a grad(phi_a) . e_j = -(h_c / 2) a g_a[j] for reference gradient g_a.
std::vector<double> assemble_cell_rhs(std::span<const double> samples, std::size_t n, int direction)
{
    const int d = direction - 1;
    const double hc = 1.0 / static_cast<double>(n);
    std::vector<double> rhs(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = torus_corners(i, j, n);
            const double s = -0.5 * hc * samples[i + n * j];
            // lower triangle (LL, LR, UR)
            rhs[c[0]] += s * kLowerTriangleGrad[0][d];
            rhs[c[1]] += s * kLowerTriangleGrad[1][d];
            rhs[c[2]] += s * kLowerTriangleGrad[2][d];
            // upper triangle (LL, UR, UL)
            rhs[c[0]] += s * kUpperTriangleGrad[0][d];
            rhs[c[2]] += s * kUpperTriangleGrad[1][d];
            rhs[c[3]] += s * kUpperTriangleGrad[2][d];
        }
    }
    return rhs;
}

void check_direction(int direction)
{
    if (direction != 1 && direction != 2) {
        throw Error("cell problem direction must be 1 or 2");
    }
}

} // namespace

SolverOptions cell_solver_options()
{
    SolverOptions o;
    o.tolerance = 1.0e-10;
    return o;
}

SparseSpdSystem assemble_cell(std::span<const double> samples, std::size_t n_c, int direction)
{
    check_direction(direction);
    check_samples(samples, n_c);
    return {assemble_cell_operator(samples, n_c), assemble_cell_rhs(samples, n_c, direction)};
}

std::vector<double> solve_cell(std::span<const double> samples, std::size_t n_c, int direction,
                               const SolverOptions& options, SolveStats* stats)
{
    return solve_spd(assemble_cell(samples, n_c, direction), options, stats);
}

CellSolutionPair solve_cell_pair(std::span<const double> samples, std::size_t n_c,
                                 const SolverOptions& options)
{
    check_samples(samples, n_c);
    SparseSpdSystem sys{assemble_cell_operator(samples, n_c), assemble_cell_rhs(samples, n_c, 1)};
    CellSolutionPair out;
    out.n_c = n_c;
    out.w1 = solve_spd(sys, options);
    sys.rhs = assemble_cell_rhs(samples, n_c, 2);
    out.w2 = solve_spd(sys, options);
    return out;
}

SampleMeans sample_means(std::span<const double> samples)
{
    double sum = 0.0;
    double inv = 0.0;
    for (double a : samples) {
        sum += a;
        inv += 1.0 / a;
    }
    const auto n = static_cast<double>(samples.size());
    return {n / inv, sum / n};
}

EffectiveTensor averaged_tensor(std::span<const double> samples, const CellSolutionPair& w,
                                double bound_tolerance)
{
    const std::size_t n = w.n_c;
    check_samples(samples, n);
    if (w.w1.size() != n * n || w.w2.size() != n * n) {
        throw GridMismatch("cell solutions do not match the sample grid");
    }
    const double hc = 1.0 / static_cast<double>(n);

    // grad_sum[i][j] = sum_T |T| a d_i w_j
    double grad_sum[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = torus_corners(i, j, n);
            const double a = samples[i + n * j];
            mean += a;
            for (int dir = 0; dir < 2; ++dir) {
                const auto& wv = dir == 0 ? w.w1 : w.w2;
                const double lo0 = wv[c[0]] * kLowerTriangleGrad[0][0] +
                                   wv[c[1]] * kLowerTriangleGrad[1][0] +
                                   wv[c[2]] * kLowerTriangleGrad[2][0];
                const double lo1 = wv[c[0]] * kLowerTriangleGrad[0][1] +
                                   wv[c[1]] * kLowerTriangleGrad[1][1] +
                                   wv[c[2]] * kLowerTriangleGrad[2][1];
                const double up0 = wv[c[0]] * kUpperTriangleGrad[0][0] +
                                   wv[c[2]] * kUpperTriangleGrad[1][0] +
                                   wv[c[3]] * kUpperTriangleGrad[2][0];
                const double up1 = wv[c[0]] * kUpperTriangleGrad[0][1] +
                                   wv[c[2]] * kUpperTriangleGrad[1][1] +
                                   wv[c[3]] * kUpperTriangleGrad[2][1];
                // |T| grad w = (h^2/2)(g/h) = (h/2) g
                grad_sum[0][dir] += 0.5 * hc * a * (lo0 + up0);
                grad_sum[1][dir] += 0.5 * hc * a * (lo1 + up1);
            }
        }
    }
    mean /= static_cast<double>(n * n);

    EffectiveTensor t;
    t.a11 = mean + grad_sum[0][0];
    t.a12 = grad_sum[0][1];
    t.a21 = grad_sum[1][0];
    t.a22 = mean + grad_sum[1][1];
    t.asymmetry = std::abs(t.a12 - t.a21);

    const SampleMeans means = sample_means(samples);
    const auto eig = t.symmetric().eigenvalues();
    if (eig[0] < means.harmonic * (1.0 - bound_tolerance) ||
        eig[1] > means.arithmetic * (1.0 + bound_tolerance)) {
        throw BoundsViolation("averaged tensor eigenvalues (" + std::to_string(eig[0]) + ", " +
                              std::to_string(eig[1]) + ") leave the bounds [" +
                              std::to_string(means.harmonic) + ", " +
                              std::to_string(means.arithmetic) + "]");
    }
    return t;
}

} // namespace homlab
