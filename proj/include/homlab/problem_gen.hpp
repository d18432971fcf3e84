#pragma once

#include "homlab/byte_rng.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homlab {

// ---------------------------------------------------------------------------
// 1D coefficient
// ---------------------------------------------------------------------------

enum class Coeff1DCase { a1, a2, a3 };

/// Oscillation length scale for a 1D coefficient case.
double case_length_scale(Coeff1DCase c);
Coeff1DCase parse_coeff1d_case(std::string_view name);
std::string_view to_string(Coeff1DCase c);

/// Left end of the extended 1D domain.
inline constexpr double kDomain1DLo = -1.0;
/// Right end of the extended 1D domain.
inline constexpr double kDomain1DHi = 2.0;

/// Piecewise-constant coefficient on (-1, 2).
///
/// Takes `values[i]` on [breaks[i], breaks[i+1]) and `outer` everywhere else.
class PiecewiseConstantCoeff1D {
public:
    PiecewiseConstantCoeff1D(std::vector<double> breaks, std::vector<double> values,
                             double outer = 1.0);

    /// Constant field.
    static PiecewiseConstantCoeff1D constant(double value);

    double operator()(double x) const;

    std::span<const double> breaks() const noexcept { return breaks_; }
    std::span<const double> values() const noexcept { return values_; }
    double outer() const noexcept { return outer_; }

    /// Knots -1 = p_0 < p_1 < ... < p_n = 2 and the value on each [p_i, p_{i+1}).
    /// Used by exact segment-wise integration.
    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const double> knot_values() const noexcept { return knot_values_; }

    /// Index i of the knot segment [p_i, p_{i+1}) containing x.
    std::size_t segment_of(double x) const;

    double min_value() const noexcept;
    double max_value() const noexcept;

private:
    std::vector<double> breaks_;
    std::vector<double> values_;
    double outer_;
    std::vector<double> knots_;
    std::vector<double> knot_values_;
};

/// Builds the random 1D coefficient of a case from consecutive draws:
/// width from xi_{2i-1}, value 0.001 + xi_{2i}, starting at x = 1/4 and
/// stopping at the first break point >= 3/4.
PiecewiseConstantCoeff1D build_coeff_1d(Coeff1DCase c, ByteStreamRng& rng);

/// Upper bound on the number of draws build_coeff_1d can consume for a case.
std::size_t coeff_1d_draw_budget(Coeff1DCase c);

// ---------------------------------------------------------------------------
// 1D right-hand side
// ---------------------------------------------------------------------------

/// f1 oscillating, f2 constant, f3 discontinuous; zero is a test helper.
enum class RhsCase { f1, f2, f3, zero };

RhsCase parse_rhs_case(std::string_view name);
std::string_view to_string(RhsCase c);

class Rhs1D {
public:
    explicit Rhs1D(RhsCase c) : case_(c) {}

    RhsCase kind() const noexcept { return case_; }

    double f(double x) const;
    /// Exact antiderivative with F(0) = 0.
    double F(double x) const;

private:
    RhsCase case_;
};

// ---------------------------------------------------------------------------
// 2D coefficients
// ---------------------------------------------------------------------------

enum class Coeff2DKind { mingyue, random_sines, constant };

/// Tabulated approximate (min, max) of the sine sum S over the unit square.
struct SineSumRange {
    double min;
    double max;
};

/// Tabulated range for N_sin in {64, 128, 256, 512}; throws ConfigError otherwise.
SineSumRange tabulated_sine_range(std::size_t n_sin);

/// Smooth scalar coefficient defined on all of R^2.
///
/// random-sines: a(x) = 10^(beta * S(x)) with
///   S(x) = sum_i sin(pi i (x1 sin psi_i + x2 cos psi_i + phi_i)).
/// mingyue: five ratio terms with periods 1/5, 1/13, 1/17, 1/31, 1/65 plus a
/// smooth background.
class AnalyticCoeff2D {
public:
    static AnalyticCoeff2D mingyue();
    /// Draws psi_i = 2 pi xi_{2i-1}, phi_i = 2 xi_{2i} for i = 1..n_sin.
    static AnalyticCoeff2D random_sines(std::size_t n_sin, ByteStreamRng& rng,
                                        double contrast = 1.0e4);
    static AnalyticCoeff2D random_sines(std::vector<double> psi, std::vector<double> phi,
                                        SineSumRange range, double contrast = 1.0e4);
    static AnalyticCoeff2D constant(double value);

    Coeff2DKind kind() const noexcept { return kind_; }
    std::size_t n_sin() const noexcept { return psi_.size(); }
    double beta() const noexcept { return beta_; }
    double contrast() const noexcept { return contrast_; }
    std::span<const double> psi() const noexcept { return psi_; }
    std::span<const double> phi() const noexcept { return phi_; }

    double operator()(double x1, double x2) const;

    /// Sine sum S; only meaningful for random-sines.
    double sine_sum(double x1, double x2) const;
    std::array<double, 2> sine_sum_gradient(double x1, double x2) const;

    /// Values on the tensor grid (x0 + p dx, y0 + q dy), p < nx, q < ny,
    /// stored row by row (index p + nx q).
    std::vector<double> sample_grid(double x0, double y0, double dx, double dy, std::size_t nx,
                                    std::size_t ny) const;

    /// Shortest oscillation wavelength in the field.
    double shortest_wavelength() const;

    std::string describe() const;

private:
    AnalyticCoeff2D() = default;

    Coeff2DKind kind_ = Coeff2DKind::constant;
    double constant_ = 1.0;
    std::vector<double> psi_;
    std::vector<double> phi_;
    double beta_ = 0.0;
    double contrast_ = 1.0;
};

/// Min and max of S over the (n+1)^2 nodes of a uniform grid on the unit square.
std::pair<double, double> estimate_extrema_S(const AnalyticCoeff2D& c, std::size_t n);

} // namespace homlab
