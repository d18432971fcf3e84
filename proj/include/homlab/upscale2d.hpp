#pragma once

#include "homlab/cell_problem.hpp"
#include "homlab/fem2d.hpp"
#include "homlab/problem_gen.hpp"
#include "homlab/stencil_matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace homlab {

/// D_k upscaling on the unit square: N x N macro cells of size h, each with
/// an averaging window of side epsbar = k h centred on the cell.
struct UpscaleConfig {
    std::size_t cells = 0; ///< N = 1/h
    int k = 2;
    std::size_t n_c = 64;  ///< cell-problem grid
    std::size_t n_cs = 64; ///< stored cell-solution grid (over the whole window)

    double h() const { return 1.0 / static_cast<double>(cells); }
    double epsbar() const { return k * h(); }

    /// Side (in nodes) of the stored block covering the macro cell.
    std::size_t block_side() const { return n_cs / static_cast<std::size_t>(k) + 1; }
    /// Window-grid node index where the stored block starts.
    std::size_t block_offset() const;

    void validate() const;
};

/// Piecewise-constant averaged tensor field with stored cell solutions.
class EffectiveField2D {
public:
    explicit EffectiveField2D(UpscaleConfig cfg);

    const UpscaleConfig& config() const noexcept { return cfg_; }
    std::size_t cells() const noexcept { return cfg_.cells; }

    std::span<const Sym2> tensors() const noexcept { return tensors_; }
    Sym2& tensor(std::size_t i1, std::size_t i2) { return tensors_[i1 + cfg_.cells * i2]; }
    const Sym2& tensor(std::size_t i1, std::size_t i2) const { return tensors_[i1 + cfg_.cells * i2]; }

    std::span<const double> asymmetry() const noexcept { return asymmetry_; }
    double& asymmetry(std::size_t cell) { return asymmetry_[cell]; }

    /// Stored block of w_direction for the cell (block_side^2 values, row by row).
    std::span<double> block(std::size_t cell, int direction);
    std::span<const double> block(std::size_t cell, int direction) const;

    /// w_direction of the macro cell at block coordinates (s1, s2) in
    /// [0, block_side - 1], bilinear between stored nodes.
    double corrector(std::size_t cell, int direction, double s1, double s2) const;

    /// Fills the stored blocks of a cell from a full cell solution.
    void store_cell_solution(std::size_t cell, const CellSolutionPair& w);

private:
    UpscaleConfig cfg_;
    std::vector<Sym2> tensors_;
    std::vector<double> asymmetry_;
    std::vector<double> store_;
};

/// Samples of `a` at the centres of the n_c x n_c squares of the window of macro cell (i1, i2).
std::vector<double> window_samples(const AnalyticCoeff2D& a, const UpscaleConfig& cfg,
                                   std::size_t i1, std::size_t i2);

/// Runs both cell problems on every window and assembles the field.
/// Throws NoConvergence naming the failing cell.
EffectiveField2D upscale_field(const AnalyticCoeff2D& a, const UpscaleConfig& cfg,
                               unsigned workers = 1,
                               const SolverOptions& options = cell_solver_options());

/// Averaged problem with f constant on the grid refined `refine` times per
/// macro cell (1 gives U_h, 4 gives U_{h,4}). Returns nodal values.
std::vector<double> solve_macro(const EffectiveField2D& field, std::size_t refine, double f = 10.0,
                                const SolverOptions& options = {}, SolveStats* stats = nullptr);

/// Corrected macro solution at the nodes of a reference grid.
struct CorrectedSolution {
    std::size_t n_ref = 0;
    std::vector<double> base;      ///< U interpolated at the reference nodes
    std::vector<double> corrected; ///< U + epsbar sum_j w_j dU/dx_j
};

/// Evaluates the first-order correction of `U` (nodal on an n_u grid, n_u a
/// multiple of N) at the (n_ref+1)^2 reference nodes. Gradients come from
/// central differences of U restricted to the h-grid at square centres,
/// bilinearly interpolated (constant beyond the outermost centres).
CorrectedSolution correct_2d(std::span<const double> U, std::size_t n_u,
                             const EffectiveField2D& field, std::size_t n_ref);
/// Same, with the gradient taken from a different nodal function `U_grad`
/// (e.g. U_h while correcting U_{h,4}).
CorrectedSolution correct_2d(std::span<const double> U, std::size_t n_u,
                             std::span<const double> U_grad, std::size_t n_grad,
                             const EffectiveField2D& field, std::size_t n_ref);

/// Gradient of a nodal h-grid function at (x, y): central differences at
/// square centres, bilinear in between.
std::array<double, 2> macro_gradient(std::span<const double> U_h, std::size_t n, double x, double y);

/// sup max(A11, A22) / inf min(A11, A22) over the cells.
double contrast_CA(std::span<const Sym2> tensors);
double contrast_CA(const EffectiveField2D& field);

/// Default cell-grid size: at least 64, enough for the fine grid N n_c / k to
/// put 16 points on the shortest wavelength, as a power of two capped at `cap`.
std::size_t default_cell_grid(const AnalyticCoeff2D& a, std::size_t cells, int k, std::size_t cap);

} // namespace homlab
