#pragma once

#include "homlab/fem2d.hpp"
#include "homlab/stencil_matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace homlab {

/// Zero-mean periodic P1 solutions w_1, w_2 on an n_c x n_c torus grid over
/// the unit cell. Node (i, j) is stored at i + n_c j; the face nodes i = n_c
/// and j = n_c are identified with i = 0 and j = 0.
struct CellSolutionPair {
    std::size_t n_c = 0;
    std::vector<double> w1;
    std::vector<double> w2;

    const std::vector<double>& w(int direction) const { return direction == 1 ? w1 : w2; }
};

/// Averaged tensor of a cell together with its pre-symmetrisation asymmetry.
struct EffectiveTensor {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;
    double asymmetry = 0.0; ///< |a12 - a21| before symmetrisation

    Sym2 symmetric() const { return {a11, 0.5 * (a12 + a21), a22}; }
    double norm() const;
};

/// Periodic operator and the two cell right-hand sides -int grad(phi)^T a e_j.
/// `samples` holds one positive value per cell square, indexed i + n_c j.
SparseSpdSystem assemble_cell(std::span<const double> samples, std::size_t n_c, int direction);

std::vector<double> solve_cell(std::span<const double> samples, std::size_t n_c, int direction,
                               const SolverOptions& options = {}, SolveStats* stats = nullptr);

/// Both directions sharing one operator.
CellSolutionPair solve_cell_pair(std::span<const double> samples, std::size_t n_c,
                                 const SolverOptions& options = {});

/// A_ij = sum_T |T| e_i^T a (grad w_j + e_j), symmetrised. Throws BoundsViolation
/// when an eigenvalue leaves [harmonic mean, arithmetic mean] of the samples
/// by more than `bound_tolerance` (relative).
EffectiveTensor averaged_tensor(std::span<const double> samples, const CellSolutionPair& w,
                                double bound_tolerance = 1.0e-6);

struct SampleMeans {
    double harmonic = 0.0;
    double arithmetic = 0.0;
};

SampleMeans sample_means(std::span<const double> samples);

/// Default cell-solver options: CG tolerance tight enough that the discrete
/// tensor stays symmetric to ~1e-8 relative.
SolverOptions cell_solver_options();

} // namespace homlab
