#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace homlab {

enum class Constraint { dirichlet, periodic_zero_mean };

/// Symmetric 7-point operator of P1 elements on a Cartesian grid whose squares
/// are all split by the lower-left to upper-right diagonal.
///
/// Node p couples to its east, north and north-east neighbours through
/// `east[p]`, `north[p]`, `north_east[p]`; the opposite couplings are read
/// from the neighbour. Dirichlet operators live on the full (N+1)^2 node grid
/// with identity rows on the boundary and no couplings into it. Periodic
/// operators live on the N^2 torus.
class StencilMatrix {
public:
    StencilMatrix(std::size_t side, Constraint constraint);

    std::size_t side() const noexcept { return side_; }
    std::size_t size() const noexcept { return side_ * side_; }
    Constraint constraint() const noexcept { return constraint_; }

    void apply(std::span<const double> x, std::span<double> y) const;

    /// Dense (i, j) entry; for tests on small grids.
    double entry(std::size_t row, std::size_t col) const;

    std::vector<double> diag;
    std::vector<double> east;
    std::vector<double> north;
    std::vector<double> north_east;

private:
    void apply_dirichlet(const double* x, double* y) const;
    void apply_periodic(const double* x, double* y) const;

    std::size_t side_;
    Constraint constraint_;
};

struct SparseSpdSystem {
    StencilMatrix matrix;
    std::vector<double> rhs;
};

struct SolverOptions {
    double tolerance = 1.0e-10;
    /// 0 selects 50 * (grid side).
    std::size_t max_iterations = 0;
};

struct SolveStats {
    std::size_t iterations = 0;
    double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients. For periodic systems the
/// constant null space is projected out of the residual and the iterates, and
/// the result has zero mean. Throws NoConvergence.
std::vector<double> solve_spd(const SparseSpdSystem& system, const SolverOptions& options = {},
                              SolveStats* stats = nullptr);

} // namespace homlab
