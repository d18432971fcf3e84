#include "homlab/stencil_matrix.hpp"

#include "homlab/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace homlab {

StencilMatrix::StencilMatrix(std::size_t side, Constraint constraint)
    : diag(side * side, 0.0),
      east(side * side, 0.0),
      north(side * side, 0.0),
      north_east(side * side, 0.0),
      side_(side),
      constraint_(constraint)
{
    if (constraint == Constraint::periodic_zero_mean && side < 3) {
        throw DegenerateGrid("periodic grid needs at least 3 cells per side");
    }
    if (constraint == Constraint::dirichlet && side < 2) {
        throw DegenerateGrid("Dirichlet grid needs at least 1 cell per side");
    }
}

void StencilMatrix::apply(std::span<const double> x, std::span<double> y) const
{
    if (x.size() != size() || y.size() != size()) {
        throw GridMismatch("stencil apply: vector size does not match the grid");
    }
    if (constraint_ == Constraint::dirichlet) {
        apply_dirichlet(x.data(), y.data());
    } else {
        apply_periodic(x.data(), y.data());
    }
}

void StencilMatrix::apply_dirichlet(const double* x, double* y) const
{
    const std::size_t w = side_;
    const double* d = diag.data();
    const double* e = east.data();
    const double* n = north.data();
    const double* ne = north_east.data();
    for (std::size_t i = 0; i < w; ++i) {
        y[i] = d[i] * x[i];
        y[i + w * (w - 1)] = d[i + w * (w - 1)] * x[i + w * (w - 1)];
    }
    for (std::size_t j = 1; j + 1 < w; ++j) {
        const std::size_t row = j * w;
        y[row] = d[row] * x[row];
        y[row + w - 1] = d[row + w - 1] * x[row + w - 1];
        for (std::size_t p = row + 1; p + 1 < row + w; ++p) {
            y[p] = d[p] * x[p] + e[p] * x[p + 1] + e[p - 1] * x[p - 1] + n[p] * x[p + w] +
                   n[p - w] * x[p - w] + ne[p] * x[p + w + 1] + ne[p - w - 1] * x[p - w - 1];
        }
    }
}

void StencilMatrix::apply_periodic(const double* x, double* y) const
{
    const std::size_t w = side_;
    const double* d = diag.data();
    const double* e = east.data();
    const double* n = north.data();
    const double* ne = north_east.data();
    for (std::size_t j = 0; j < w; ++j) {
        const std::size_t c = j * w;
        const std::size_t up = ((j + 1) % w) * w;
        const std::size_t dn = ((j + w - 1) % w) * w;
        auto node = [&](std::size_t i, std::size_t ie, std::size_t iw) {
            return d[c + i] * x[c + i] + e[c + i] * x[c + ie] + e[c + iw] * x[c + iw] +
                   n[c + i] * x[up + i] + n[dn + i] * x[dn + i] + ne[c + i] * x[up + ie] +
                   ne[dn + iw] * x[dn + iw];
        };
        y[c] = node(0, 1, w - 1);
        for (std::size_t i = 1; i + 1 < w; ++i) {
            y[c + i] = node(i, i + 1, i - 1);
        }
        y[c + w - 1] = node(w - 1, 0, w - 2);
    }
}

double StencilMatrix::entry(std::size_t row, std::size_t col) const
{
    std::vector<double> unit(size(), 0.0);
    std::vector<double> out(size(), 0.0);
    unit.at(col) = 1.0;
    apply(unit, out);
    return out.at(row);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    const std::size_t n = a.size();
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) {
        s0 += a[i] * b[i];
    }
    return (s0 + s1) + (s2 + s3);
}

void remove_mean(std::span<double> v)
{
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double& x : v) {
        x -= mean;
    }
}

} // namespace

std::vector<double> solve_spd(const SparseSpdSystem& system, const SolverOptions& options,
                              SolveStats* stats)
{
    const StencilMatrix& A = system.matrix;
    const std::size_t n = A.size();
    if (system.rhs.size() != n) {
        throw GridMismatch("right-hand side does not match the operator");
    }
    const bool periodic = A.constraint() == Constraint::periodic_zero_mean;
    const std::size_t max_it =
        options.max_iterations > 0 ? options.max_iterations : 50 * A.side();

    std::vector<double> b = system.rhs;
    if (periodic) {
        remove_mean(b);
    }
    std::vector<double> x(n, 0.0);
    const double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) {
        if (stats) *stats = {0, 0.0};
        return x;
    }

    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(A.diag[i] > 0.0)) {
            throw NonSpdCoefficient("operator has a non-positive diagonal entry");
        }
        inv_diag[i] = 1.0 / A.diag[i];
    }

    std::vector<double> r(n), z(n), p(n), q(n);
    std::size_t it = 0;
    double rel = 1.0;

    // Outer loop restarts from the true residual when the recurrence drifts.
    for (int restart = 0; restart < 8; ++restart) {
        A.apply(x, q);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = b[i] - q[i];
        }
        if (periodic) remove_mean(r);
        rel = std::sqrt(dot(r, r)) / bnorm;
        if (rel <= options.tolerance) {
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = inv_diag[i] * r[i];
        }
        if (periodic) remove_mean(z);
        p = z;
        double rz = dot(r, z);
        bool converged = false;
        while (it < max_it) {
            A.apply(p, q);
            const double pq = dot(p, q);
            if (!(pq > 0.0)) {
                throw NonSpdCoefficient("operator is not positive definite on the iterate space");
            }
            const double alpha = rz / pq;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            ++it;
            rel = std::sqrt(dot(r, r)) / bnorm;
            if (rel <= options.tolerance) {
                converged = true;
                break;
            }
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = inv_diag[i] * r[i];
            }
            if (periodic) remove_mean(z);
            const double rz_new = dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = z[i] + beta * p[i];
            }
        }
        if (periodic) remove_mean(x);
        if (!converged) {
            break;
        }
    }

    A.apply(x, q);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = b[i] - q[i];
    }
    if (periodic) remove_mean(r);
    rel = std::sqrt(dot(r, r)) / bnorm;
    if (stats) *stats = {it, rel};
    if (rel > options.tolerance) {
        throw NoConvergence("conjugate gradients stopped at relative residual " +
                                std::to_string(rel) + " after " + std::to_string(it) +
                                " iterations",
                            it, rel);
    }
    return x;
}

} // namespace homlab
