#include "homlab/problem_gen.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace homlab {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

// ---------------------------------------------------------------------------
// 1D coefficient
// ---------------------------------------------------------------------------

double case_length_scale(Coeff1DCase c)
{
    switch (c) {
    case Coeff1DCase::a1: return 0.004;
    case Coeff1DCase::a2: return 0.001;
    case Coeff1DCase::a3: return 0.00025;
    }
    return 0.0;
}

Coeff1DCase parse_coeff1d_case(std::string_view name)
{
    if (name == "a1") return Coeff1DCase::a1;
    if (name == "a2") return Coeff1DCase::a2;
    if (name == "a3") return Coeff1DCase::a3;
    throw ConfigError("unknown 1D coefficient case: " + std::string(name));
}

std::string_view to_string(Coeff1DCase c)
{
    switch (c) {
    case Coeff1DCase::a1: return "a1";
    case Coeff1DCase::a2: return "a2";
    case Coeff1DCase::a3: return "a3";
    }
    return "?";
}

PiecewiseConstantCoeff1D::PiecewiseConstantCoeff1D(std::vector<double> breaks,
                                                   std::vector<double> values, double outer)
    : breaks_(std::move(breaks)), values_(std::move(values)), outer_(outer)
{
    if (!breaks_.empty() && values_.size() + 1 != breaks_.size()) {
        throw Error("piecewise coefficient needs one value per break interval");
    }
    if (breaks_.empty() && !values_.empty()) {
        throw Error("piecewise coefficient values given without break points");
    }
    if (!(outer_ > 0.0)) {
        throw NonpositiveCoefficient("outer coefficient value must be positive");
    }
    for (double v : values_) {
        if (!(v > 0.0)) {
            throw NonpositiveCoefficient("coefficient values must be positive");
        }
    }
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > kDomain1DLo && breaks_[i] < kDomain1DHi)) {
            throw OutOfDomain("break point outside (-1, 2)");
        }
        if (i > 0 && !(breaks_[i] > breaks_[i - 1])) {
            throw Error("break points must be strictly increasing");
        }
    }

    knots_.push_back(kDomain1DLo);
    knot_values_.push_back(outer_);
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        knots_.push_back(breaks_[i]);
        knot_values_.push_back(i < values_.size() ? values_[i] : outer_);
    }
    knots_.push_back(kDomain1DHi);
}

PiecewiseConstantCoeff1D PiecewiseConstantCoeff1D::constant(double value)
{
    return PiecewiseConstantCoeff1D({}, {}, value);
}

std::size_t PiecewiseConstantCoeff1D::segment_of(double x) const
{
    if (!(x > kDomain1DLo && x < kDomain1DHi)) {
        throw OutOfDomain("1D coefficient evaluated outside (-1, 2)");
    }
    // knots_[i] <= x < knots_[i+1]
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

double PiecewiseConstantCoeff1D::operator()(double x) const
{
    return knot_values_[segment_of(x)];
}

double PiecewiseConstantCoeff1D::min_value() const noexcept
{
    return *std::min_element(knot_values_.begin(), knot_values_.end());
}

double PiecewiseConstantCoeff1D::max_value() const noexcept
{
    return *std::max_element(knot_values_.begin(), knot_values_.end());
}

PiecewiseConstantCoeff1D build_coeff_1d(Coeff1DCase c, ByteStreamRng& rng)
{
    const double eps = case_length_scale(c);
    std::vector<double> breaks{0.25};
    std::vector<double> values;
    while (breaks.back() < 0.75) {
        const double xi_width = rng.next_xi();
        const double xi_value = rng.next_xi();
        breaks.push_back(breaks.back() + eps * (0.1 + 4.0 * xi_width) / 2.1);
        values.push_back(0.001 + xi_value);
    }
    return PiecewiseConstantCoeff1D(std::move(breaks), std::move(values), 1.0);
}

std::size_t coeff_1d_draw_budget(Coeff1DCase c)
{
    const double min_width = case_length_scale(c) * 0.1 / 2.1;
    const auto intervals = static_cast<std::size_t>(std::ceil(0.5 / min_width)) + 1;
    return 2 * intervals;
}

// ---------------------------------------------------------------------------
// 1D right-hand side
// ---------------------------------------------------------------------------

RhsCase parse_rhs_case(std::string_view name)
{
    if (name == "f1") return RhsCase::f1;
    if (name == "f2") return RhsCase::f2;
    if (name == "f3") return RhsCase::f3;
    if (name == "zero") return RhsCase::zero;
    throw ConfigError("unknown right-hand side case: " + std::string(name));
}

std::string_view to_string(RhsCase c)
{
    switch (c) {
    case RhsCase::f1: return "f1";
    case RhsCase::f2: return "f2";
    case RhsCase::f3: return "f3";
    case RhsCase::zero: return "zero";
    }
    return "?";
}

double Rhs1D::f(double x) const
{
    switch (case_) {
    case RhsCase::f1: return 50.0 * std::sin(30.0 * x);
    case RhsCase::f2: return -4.0;
    case RhsCase::f3:
        if (x > 0.5 && x < 0.75) return 4.0;
        if (x > 0.25 && x < 0.5) return -4.0;
        return 0.0;
    case RhsCase::zero: return 0.0;
    }
    return 0.0;
}

double Rhs1D::F(double x) const
{
    switch (case_) {
    case RhsCase::f1: return (50.0 / 30.0) * (1.0 - std::cos(30.0 * x));
    case RhsCase::f2: return -4.0 * x;
    case RhsCase::f3:
        if (x <= 0.25) return 0.0;
        if (x <= 0.5) return -4.0 * (x - 0.25);
        if (x <= 0.75) return -1.0 + 4.0 * (x - 0.5);
        return 0.0;
    case RhsCase::zero: return 0.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// 2D coefficients
// ---------------------------------------------------------------------------

SineSumRange tabulated_sine_range(std::size_t n_sin)
{
    switch (n_sin) {
    case 64: return {-19.7229, 22.5351};
    case 128: return {-36.1412, 34.124};
    case 256: return {-49.6262, 51.5507};
    case 512: return {-81.8554, 75.7885};
    default: break;
    }
    throw ConfigError("no tabulated sine-sum range for N_sin = " + std::to_string(n_sin));
}

AnalyticCoeff2D AnalyticCoeff2D::mingyue()
{
    AnalyticCoeff2D c;
    c.kind_ = Coeff2DKind::mingyue;
    return c;
}

AnalyticCoeff2D AnalyticCoeff2D::random_sines(std::size_t n_sin, ByteStreamRng& rng,
                                              double contrast)
{
    const SineSumRange range = tabulated_sine_range(n_sin);
    rng.require_draws(2 * n_sin);
    std::vector<double> psi(n_sin);
    std::vector<double> phi(n_sin);
    for (std::size_t i = 0; i < n_sin; ++i) {
        psi[i] = 2.0 * kPi * rng.next_xi();
        phi[i] = 2.0 * rng.next_xi();
    }
    return random_sines(std::move(psi), std::move(phi), range, contrast);
}

AnalyticCoeff2D AnalyticCoeff2D::random_sines(std::vector<double> psi, std::vector<double> phi,
                                              SineSumRange range, double contrast)
{
    if (psi.size() != phi.size() || psi.empty()) {
        throw ConfigError("random-sines needs matching, non-empty angle and phase lists");
    }
    if (!(range.max > range.min) || !(contrast >= 1.0)) {
        throw ConfigError("random-sines needs max > min and contrast >= 1");
    }
    AnalyticCoeff2D c;
    c.kind_ = Coeff2DKind::random_sines;
    c.psi_ = std::move(psi);
    c.phi_ = std::move(phi);
    c.contrast_ = contrast;
    c.beta_ = std::log10(contrast) / (range.max - range.min);
    return c;
}

AnalyticCoeff2D AnalyticCoeff2D::constant(double value)
{
    if (!(value > 0.0)) {
        throw NonpositiveCoefficient("constant 2D coefficient must be positive");
    }
    AnalyticCoeff2D c;
    c.kind_ = Coeff2DKind::constant;
    c.constant_ = value;
    return c;
}

double AnalyticCoeff2D::sine_sum(double x1, double x2) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double freq = kPi * static_cast<double>(i + 1);
        s += std::sin(freq * (x1 * std::sin(psi_[i]) + x2 * std::cos(psi_[i]) + phi_[i]));
    }
    return s;
}

std::array<double, 2> AnalyticCoeff2D::sine_sum_gradient(double x1, double x2) const
{
    std::array<double, 2> g{0.0, 0.0};
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double freq = kPi * static_cast<double>(i + 1);
        const double c =
            freq * std::cos(freq * (x1 * std::sin(psi_[i]) + x2 * std::cos(psi_[i]) + phi_[i]));
        g[0] += c * std::sin(psi_[i]);
        g[1] += c * std::cos(psi_[i]);
    }
    return g;
}

namespace {

double mingyue_value(double x1, double x2)
{
    constexpr double e1 = 1.0 / 5.0, e2 = 1.0 / 13.0, e3 = 1.0 / 17.0, e4 = 1.0 / 31.0,
                     e5 = 1.0 / 65.0;
    const double t = 2.0 * kPi;
    const double sum = (1.1 + std::sin(t * x1 / e1)) / (1.1 + std::sin(t * x2 / e1)) +
                       (1.1 + std::sin(t * x2 / e2)) / (1.1 + std::cos(t * x1 / e2)) +
                       (1.1 + std::cos(t * x1 / e3)) / (1.1 + std::sin(t * x2 / e3)) +
                       (1.1 + std::sin(t * x2 / e4)) / (1.1 + std::cos(t * x1 / e4)) +
                       (1.1 + std::cos(t * x1 / e5)) / (1.1 + std::sin(t * x2 / e5)) +
                       std::sin(4.0 * x1 * x1 * x2 * x2) + 1.0;
    return sum / 6.0;
}

/// S on a tensor grid via sin(a + b) = sin a cos b + cos a sin b, splitting
/// each argument into its x1 part (with the phase) and its x2 part.
std::vector<double> sine_sum_grid(std::span<const double> psi, std::span<const double> phi,
                                  double x0, double y0, double dx, double dy, std::size_t nx,
                                  std::size_t ny)
{
    const std::size_t m = psi.size();
    std::vector<double> sa(m * nx), ca(m * nx), sb(m * ny), cb(m * ny);
    for (std::size_t i = 0; i < m; ++i) {
        const double freq = kPi * static_cast<double>(i + 1);
        const double sp = std::sin(psi[i]);
        const double cp = std::cos(psi[i]);
        for (std::size_t p = 0; p < nx; ++p) {
            const double x = x0 + static_cast<double>(p) * dx;
            const double arg = freq * (x * sp + phi[i]);
            sa[i * nx + p] = std::sin(arg);
            ca[i * nx + p] = std::cos(arg);
        }
        for (std::size_t q = 0; q < ny; ++q) {
            const double y = y0 + static_cast<double>(q) * dy;
            const double arg = freq * (y * cp);
            sb[i * ny + q] = std::sin(arg);
            cb[i * ny + q] = std::cos(arg);
        }
    }
    std::vector<double> s(nx * ny, 0.0);
    for (std::size_t q = 0; q < ny; ++q) {
        double* row = s.data() + q * nx;
        for (std::size_t i = 0; i < m; ++i) {
            const double sbq = sb[i * ny + q];
            const double cbq = cb[i * ny + q];
            const double* sai = sa.data() + i * nx;
            const double* cai = ca.data() + i * nx;
            for (std::size_t p = 0; p < nx; ++p) {
                row[p] += sai[p] * cbq + cai[p] * sbq;
            }
        }
    }
    return s;
}

} // namespace

double AnalyticCoeff2D::operator()(double x1, double x2) const
{
    switch (kind_) {
    case Coeff2DKind::constant: return constant_;
    case Coeff2DKind::mingyue: return mingyue_value(x1, x2);
    case Coeff2DKind::random_sines: return std::pow(10.0, beta_ * sine_sum(x1, x2));
    }
    return constant_;
}

std::vector<double> AnalyticCoeff2D::sample_grid(double x0, double y0, double dx, double dy,
                                                 std::size_t nx, std::size_t ny) const
{
    std::vector<double> out;
    switch (kind_) {
    case Coeff2DKind::constant:
        out.assign(nx * ny, constant_);
        break;
    case Coeff2DKind::mingyue:
        out.resize(nx * ny);
        for (std::size_t q = 0; q < ny; ++q) {
            for (std::size_t p = 0; p < nx; ++p) {
                out[p + nx * q] = mingyue_value(x0 + static_cast<double>(p) * dx,
                                                y0 + static_cast<double>(q) * dy);
            }
        }
        break;
    case Coeff2DKind::random_sines:
        out = sine_sum_grid(psi_, phi_, x0, y0, dx, dy, nx, ny);
        for (double& v : out) {
            v = std::pow(10.0, beta_ * v);
        }
        break;
    }
    return out;
}

double AnalyticCoeff2D::shortest_wavelength() const
{
    switch (kind_) {
    case Coeff2DKind::constant: return std::numeric_limits<double>::infinity();
    case Coeff2DKind::mingyue: return 1.0 / 65.0;
    case Coeff2DKind::random_sines: return 2.0 / static_cast<double>(psi_.size());
    }
    return std::numeric_limits<double>::infinity();
}

std::string AnalyticCoeff2D::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Coeff2DKind::constant: os << "constant(" << constant_ << ")"; break;
    case Coeff2DKind::mingyue: os << "mingyue"; break;
    case Coeff2DKind::random_sines:
        os << "random-sines(N_sin=" << psi_.size() << ",beta=" << beta_ << ")";
        break;
    }
    return os.str();
}

std::pair<double, double> estimate_extrema_S(const AnalyticCoeff2D& c, std::size_t n)
{
    if (c.kind() != Coeff2DKind::random_sines) {
        throw ConfigError("estimate_extrema_S needs a random-sines coefficient");
    }
    const double step = 1.0 / static_cast<double>(n);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    // Row blocks keep the tables small for large n.
    const std::size_t block = 64;
    for (std::size_t q0 = 0; q0 <= n; q0 += block) {
        const std::size_t rows = std::min(block, n + 1 - q0);
        const auto s = sine_sum_grid(c.psi(), c.phi(), 0.0, static_cast<double>(q0) * step, step,
                                     step, n + 1, rows);
        const auto [mn, mx] = std::minmax_element(s.begin(), s.end());
        lo = std::min(lo, *mn);
        hi = std::max(hi, *mx);
    }
    return {lo, hi};
}

} // namespace homlab
