#pragma once

#include "homlab/stencil_matrix.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace homlab {

/// Symmetric 2x2 tensor.
struct Sym2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;

    static Sym2 scalar(double c) { return {c, 0.0, c}; }
    bool is_spd() const { return a11 > 0.0 && a22 > 0.0 && a11 * a22 - a12 * a12 > 0.0; }
    /// Eigenvalues, ascending.
    std::array<double, 2> eigenvalues() const;
};

/// Uniform N x N grid of squares on the unit square, each split by its
/// lower-left to upper-right diagonal into two positively oriented triangles.
class CartesianP1Mesh {
public:
    explicit CartesianP1Mesh(std::size_t cells_per_side);

    std::size_t cells() const noexcept { return n_; }
    std::size_t nodes_per_side() const noexcept { return n_ + 1; }
    std::size_t node_count() const noexcept { return (n_ + 1) * (n_ + 1); }
    std::size_t triangle_count() const noexcept { return 2 * n_ * n_; }
    double h() const noexcept { return 1.0 / static_cast<double>(n_); }
    std::size_t node(std::size_t i, std::size_t j) const noexcept { return i + (n_ + 1) * j; }

private:
    std::size_t n_;
};

/// Reference gradients (times the cell size) of the three barycentric
/// functions of the lower triangle (LL, LR, UR) and the upper triangle (LL, UR, UL).
inline constexpr std::array<std::array<double, 2>, 3> kLowerTriangleGrad{{{-1.0, 0.0}, {1.0, -1.0}, {0.0, 1.0}}};
inline constexpr std::array<std::array<double, 2>, 3> kUpperTriangleGrad{{{0.0, -1.0}, {1.0, 0.0}, {-1.0, 1.0}}};

/// Adds the stiffness of one square with constant tensor `k` into the
/// operator; corner indices are (LL, LR, UR, UL) in operator numbering, and
/// `active[c]` says whether the corner is an unknown.
void add_square_stiffness(StencilMatrix& m, const std::array<std::size_t, 4>& corners,
                          const std::array<bool, 4>& active, const Sym2& k);

using SourceFunction = std::function<double(double, double)>;

/// P1 Dirichlet problem -div(K grad u) = f, u = 0 on the boundary, with K
/// constant per square (`coeff` indexed i + N j). The load uses the centroid
/// value of f on each triangle.
SparseSpdSystem assemble_dirichlet(const CartesianP1Mesh& mesh, std::span<const Sym2> coeff,
                                   const SourceFunction& f);
SparseSpdSystem assemble_dirichlet(const CartesianP1Mesh& mesh, std::span<const Sym2> coeff,
                                   double f);
SparseSpdSystem assemble_dirichlet(const CartesianP1Mesh& mesh, std::span<const double> coeff,
                                   double f);

/// Per-square scalar samples at square centres promoted to tensors.
std::vector<Sym2> scalar_tensors(std::span<const double> coeff);

/// Solves a Dirichlet problem and returns the (N+1)^2 nodal values.
std::vector<double> solve_dirichlet(const CartesianP1Mesh& mesh, std::span<const Sym2> coeff,
                                    double f, const SolverOptions& options = {},
                                    SolveStats* stats = nullptr);

/// L2 norm of (u_h - u) using the P1 interpolant of u_h and a 3-point edge
/// midpoint rule per triangle.
double l2_error(const CartesianP1Mesh& mesh, std::span<const double> nodal,
                const SourceFunction& exact);

} // namespace homlab
