#pragma once

#include "homlab/problem_gen.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace homlab {

enum class ExtensionKind { C, D };

/// Averaging window rule in 1D: the window W_x has length `epsbar` and is
/// centred at x (C) or at the centre of the h-cell holding x, h = epsbar/k (D_k).
struct ExtensionSpec1D {
    ExtensionKind kind = ExtensionKind::C;
    double epsbar = 0.0;
    int k = 1;

    static ExtensionSpec1D continuous(double epsbar);
    static ExtensionSpec1D discrete(int k, double epsbar);
    /// Parses "C", "D1", "D2", ...
    static ExtensionSpec1D parse(std::string_view label, double epsbar);

    double cell_size() const { return epsbar / k; }
    std::string label() const;
    void validate() const;
};

/// Window centre for the point x.
double xhat(const ExtensionSpec1D& spec, double x);

/// Exact integrals of 1/a over a window, used by the averaged coefficient and
/// the corrector.
struct WindowIntegrals {
    double reciprocal = 0.0;    ///< int_{lo}^{hi} dz / a(z)
    double reciprocal_to = 0.0; ///< int_{lo}^{z} dz / a(z) for the probe z
    double primitive = 0.0;     ///< int_{lo}^{hi} int_{lo}^{t} dz / a(z) dt
};

WindowIntegrals window_integrals(const PiecewiseConstantCoeff1D& a, double lo, double hi,
                                 double probe);

/// Harmonic mean of `a` over the window of x.
double averaged_coeff_1d(const PiecewiseConstantCoeff1D& a, const ExtensionSpec1D& spec, double x);

/// Zero-mean periodic cell solution w(x, x/epsbar).
double cell_corrector_1d(const PiecewiseConstantCoeff1D& a, const ExtensionSpec1D& spec, double x);

/// Averaged coefficient A(.) of a 1D coefficient under a given extension,
/// with access to the cell corrector.
class EffectiveField1D {
public:
    EffectiveField1D(PiecewiseConstantCoeff1D a, ExtensionSpec1D spec);

    const ExtensionSpec1D& spec() const noexcept { return spec_; }
    const PiecewiseConstantCoeff1D& coefficient() const noexcept { return a_; }

    double A(double x) const;
    double corrector(double x) const;
    /// dw/dy at the window point z, for the window of x.
    double corrector_slope(double x, double z) const;

    /// int_{x0}^{x1} dx / A(x): exact across the h-cells for D_k, midpoint rule for C.
    double reciprocal_integral(double x0, double x1) const;

private:
    PiecewiseConstantCoeff1D a_;
    ExtensionSpec1D spec_;
    std::vector<double> cell_values_; // D_k only: A on h-cells 0..ceil(1/h)
};

/// Nodal solution of (a u')' = f on a uniform grid over [0, 1].
struct Grid1DSolution {
    std::size_t n_sol = 0;
    double step = 0.0;
    std::vector<double> u;  ///< n_sol nodal values
    std::vector<double> du; ///< n_sol - 1 derivative values at cell midpoints
    double flux_constant = 0.0;

    double node(std::size_t i) const { return static_cast<double>(i) * step; }
};

/// Integrals of 1/a over the n_sol - 1 grid cells, exact for a piecewise-constant a.
std::vector<double> cell_reciprocal_integrals(const PiecewiseConstantCoeff1D& a, std::size_t n_sol);
std::vector<double> cell_reciprocal_integrals(const EffectiveField1D& field, std::size_t n_sol);
/// Midpoint-rule integrals of 1/a over the grid cells.
std::vector<double> cell_reciprocal_integrals(const std::function<double(double)>& a,
                                              std::size_t n_sol);

/// Semi-analytic solution u = u_l + C int 1/a + int F/a, with C fixed by u(1) = u_r.
/// `cell_reciprocal[i]` is int 1/a over the i-th grid cell; F/a uses F at the midpoint.
Grid1DSolution solve_exact_1d(std::span<const double> cell_reciprocal, const Rhs1D& rhs,
                              double u_l, double u_r);
/// Same with midpoint-rule integrals of a pointwise coefficient.
Grid1DSolution solve_exact_1d(const std::function<double(double)>& a, const Rhs1D& rhs,
                              double u_l, double u_r, std::size_t n_sol);

/// First-order corrected nodal values U + epsbar U' w(x, x/epsbar).
std::vector<double> correct_1d(const Grid1DSolution& U, const EffectiveField1D& field);

struct Errors1D {
    double l2 = 0.0;
    double linf = 0.0;
};

/// Absolute L2 (trapezoid) and max-norm distances of nodal values on [0, 1].
Errors1D errors_1d(std::span<const double> v, std::span<const double> u);

} // namespace homlab
