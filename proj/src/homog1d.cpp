#include "homlab/homog1d.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homlab {

ExtensionSpec1D ExtensionSpec1D::continuous(double epsbar)
{
    ExtensionSpec1D s{ExtensionKind::C, epsbar, 1};
    s.validate();
    return s;
}

ExtensionSpec1D ExtensionSpec1D::discrete(int k, double epsbar)
{
    ExtensionSpec1D s{ExtensionKind::D, epsbar, k};
    s.validate();
    return s;
}

ExtensionSpec1D ExtensionSpec1D::parse(std::string_view label, double epsbar)
{
    if (label == "C") {
        return continuous(epsbar);
    }
    if (label.size() >= 2 && label.front() == 'D') {
        const std::string digits(label.substr(1));
        if (digits.find_first_not_of("0123456789") == std::string::npos) {
            return discrete(std::stoi(digits), epsbar);
        }
    }
    throw ConfigError("unknown extension label: " + std::string(label));
}

std::string ExtensionSpec1D::label() const
{
    return kind == ExtensionKind::C ? std::string("C") : "D" + std::to_string(k);
}

void ExtensionSpec1D::validate() const
{
    if (!(epsbar > 0.0) || !std::isfinite(epsbar)) {
        throw ConfigError("averaging size must be positive");
    }
    if (kind == ExtensionKind::D && k < 1) {
        throw ConfigError("D_k extension needs k >= 1");
    }
}

double xhat(const ExtensionSpec1D& spec, double x)
{
    if (spec.kind == ExtensionKind::C) {
        return x;
    }
    const double h = spec.cell_size();
    return h * (std::floor(x / h) + 0.5);
}

WindowIntegrals window_integrals(const PiecewiseConstantCoeff1D& a, double lo, double hi,
                                 double probe)
{
    if (lo < kDomain1DLo || hi > kDomain1DHi || !(hi > lo)) {
        throw OutOfDomain("averaging window leaves the extended domain (-1, 2)");
    }
    const auto knots = a.knots();
    const auto vals = a.knot_values();
    std::size_t seg = lo > kDomain1DLo ? a.segment_of(lo) : 0;

    WindowIntegrals out;
    double cur = lo;
    bool probe_seen = probe <= lo;
    while (cur < hi) {
        const double end = std::min(knots[seg + 1], hi);
        const double len = end - cur;
        const double inv = 1.0 / vals[seg];
        if (!probe_seen && probe <= end) {
            out.reciprocal_to = out.reciprocal + (probe - cur) * inv;
            probe_seen = true;
        }
        out.primitive += out.reciprocal * len + 0.5 * len * len * inv;
        out.reciprocal += len * inv;
        cur = end;
        ++seg;
    }
    if (!probe_seen) {
        out.reciprocal_to = out.reciprocal;
    }
    return out;
}

namespace {

struct Window {
    double lo;
    double hi;
};

Window window_for_center(double center, double epsbar)
{
    return {center - 0.5 * epsbar, center + 0.5 * epsbar};
}

/// w(z) = phi(z) - mean(phi), phi(z) = (A/eb) int_lo^z 1/a - (z - lo)/eb.
double corrector_value(const WindowIntegrals& wi, double lo, double z, double epsbar)
{
    const double A = epsbar / wi.reciprocal;
    const double phi = (A / epsbar) * wi.reciprocal_to - (z - lo) / epsbar;
    const double mean = (A / (epsbar * epsbar)) * wi.primitive - 0.5;
    return phi - mean;
}

} // namespace

double averaged_coeff_1d(const PiecewiseConstantCoeff1D& a, const ExtensionSpec1D& spec, double x)
{
    const Window w = window_for_center(xhat(spec, x), spec.epsbar);
    return spec.epsbar / window_integrals(a, w.lo, w.hi, w.lo).reciprocal;
}

double cell_corrector_1d(const PiecewiseConstantCoeff1D& a, const ExtensionSpec1D& spec, double x)
{
    const Window w = window_for_center(xhat(spec, x), spec.epsbar);
    return corrector_value(window_integrals(a, w.lo, w.hi, x), w.lo, x, spec.epsbar);
}

EffectiveField1D::EffectiveField1D(PiecewiseConstantCoeff1D a, ExtensionSpec1D spec)
    : a_(std::move(a)), spec_(spec)
{
    spec_.validate();
    if (spec_.kind == ExtensionKind::D) {
        const double h = spec_.cell_size();
        const auto cells = static_cast<std::size_t>(std::ceil(1.0 / h)) + 1;
        cell_values_.resize(cells);
        for (std::size_t j = 0; j < cells; ++j) {
            const double center = h * (static_cast<double>(j) + 0.5);
            const Window w = window_for_center(center, spec_.epsbar);
            cell_values_[j] = spec_.epsbar / window_integrals(a_, w.lo, w.hi, w.lo).reciprocal;
        }
    }
}

double EffectiveField1D::A(double x) const
{
    if (spec_.kind == ExtensionKind::D) {
        const double j = std::floor(x / spec_.cell_size());
        if (j >= 0.0 && j < static_cast<double>(cell_values_.size())) {
            return cell_values_[static_cast<std::size_t>(j)];
        }
    }
    return averaged_coeff_1d(a_, spec_, x);
}

double EffectiveField1D::corrector(double x) const
{
    return cell_corrector_1d(a_, spec_, x);
}

double EffectiveField1D::corrector_slope(double x, double z) const
{
    return A(x) / a_(z) - 1.0;
}

double EffectiveField1D::reciprocal_integral(double x0, double x1) const
{
    if (spec_.kind == ExtensionKind::C) {
        return (x1 - x0) / A(0.5 * (x0 + x1));
    }
    const double h = spec_.cell_size();
    double sum = 0.0;
    double cur = x0;
    double j = std::floor(x0 / h);
    while (cur < x1) {
        const double end = std::min((j + 1.0) * h, x1);
        if (end > cur) {
            sum += (end - cur) / A(h * (j + 0.5));
        }
        cur = end;
        j += 1.0;
    }
    return sum;
}

namespace {

void check_grid(std::size_t n_sol)
{
    if (n_sol < 2) {
        throw DegenerateGrid("1D solution grid needs at least 2 nodes");
    }
}

} // namespace

std::vector<double> cell_reciprocal_integrals(const PiecewiseConstantCoeff1D& a, std::size_t n_sol)
{
    check_grid(n_sol);
    const double step = 1.0 / static_cast<double>(n_sol - 1);
    const auto knots = a.knots();
    const auto vals = a.knot_values();
    std::vector<double> r(n_sol - 1);
    std::size_t seg = a.segment_of(0.0);
    for (std::size_t i = 0; i + 1 < n_sol; ++i) {
        const double x0 = static_cast<double>(i) * step;
        const double x1 = i + 2 == n_sol ? 1.0 : static_cast<double>(i + 1) * step;
        while (knots[seg + 1] <= x0) {
            ++seg;
        }
        double sum = 0.0;
        double cur = x0;
        std::size_t s = seg;
        while (cur < x1) {
            const double end = std::min(knots[s + 1], x1);
            sum += (end - cur) / vals[s];
            cur = end;
            ++s;
        }
        r[i] = sum;
    }
    return r;
}

std::vector<double> cell_reciprocal_integrals(const EffectiveField1D& field, std::size_t n_sol)
{
    check_grid(n_sol);
    const double step = 1.0 / static_cast<double>(n_sol - 1);
    std::vector<double> r(n_sol - 1);
    for (std::size_t i = 0; i + 1 < n_sol; ++i) {
        const double x0 = static_cast<double>(i) * step;
        const double x1 = i + 2 == n_sol ? 1.0 : static_cast<double>(i + 1) * step;
        r[i] = field.reciprocal_integral(x0, x1);
    }
    return r;
}

std::vector<double> cell_reciprocal_integrals(const std::function<double(double)>& a,
                                              std::size_t n_sol)
{
    check_grid(n_sol);
    const double step = 1.0 / static_cast<double>(n_sol - 1);
    std::vector<double> r(n_sol - 1);
    for (std::size_t i = 0; i + 1 < n_sol; ++i) {
        const double value = a((static_cast<double>(i) + 0.5) * step);
        if (!(value > 0.0)) {
            throw NonpositiveCoefficient("coefficient must be positive on [0, 1]");
        }
        r[i] = step / value;
    }
    return r;
}

namespace {

/// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

} // namespace

Grid1DSolution solve_exact_1d(std::span<const double> cell_reciprocal, const Rhs1D& rhs,
                              double u_l, double u_r)
{
    const std::size_t n_sol = cell_reciprocal.size() + 1;
    check_grid(n_sol);
    const double step = 1.0 / static_cast<double>(n_sol - 1);

    std::vector<double> f_mid(n_sol - 1);
    CompensatedSum total_r;
    CompensatedSum total_fr;
    for (std::size_t i = 0; i + 1 < n_sol; ++i) {
        const double r = cell_reciprocal[i];
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw NonpositiveCoefficient("coefficient must be positive and finite on [0, 1]");
        }
        f_mid[i] = rhs.F((static_cast<double>(i) + 0.5) * step);
        total_r.add(r);
        total_fr.add(f_mid[i] * r);
    }

    Grid1DSolution sol;
    sol.n_sol = n_sol;
    sol.step = step;
    sol.flux_constant = (u_r - u_l - total_fr.value()) / total_r.value();
    sol.u.resize(n_sol);
    sol.du.resize(n_sol - 1);

    CompensatedSum u;
    u.add(u_l);
    sol.u[0] = u_l;
    for (std::size_t i = 0; i + 1 < n_sol; ++i) {
        const double flux = sol.flux_constant + f_mid[i];
        const double r = cell_reciprocal[i];
        u.add(flux * r);
        sol.u[i + 1] = u.value();
        sol.du[i] = flux * r / step;
    }
    return sol;
}

Grid1DSolution solve_exact_1d(const std::function<double(double)>& a, const Rhs1D& rhs,
                              double u_l, double u_r, std::size_t n_sol)
{
    const auto r = cell_reciprocal_integrals(a, n_sol);
    return solve_exact_1d(r, rhs, u_l, u_r);
}

std::vector<double> correct_1d(const Grid1DSolution& U, const EffectiveField1D& field)
{
    const std::size_t n = U.n_sol;
    const double eb = field.spec().epsbar;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double slope;
        if (i == 0) {
            slope = U.du.front();
        } else if (i + 1 == n) {
            slope = U.du.back();
        } else {
            slope = 0.5 * (U.du[i - 1] + U.du[i]);
        }
        const double x = i + 1 == n ? 1.0 : U.node(i);
        out[i] = U.u[i] + eb * slope * field.corrector(x);
    }
    return out;
}

Errors1D errors_1d(std::span<const double> v, std::span<const double> u)
{
    if (v.size() != u.size()) {
        throw GridMismatch("error norms need values on the same grid");
    }
    if (v.size() < 2) {
        throw DegenerateGrid("error norms need at least 2 nodes");
    }
    const double step = 1.0 / static_cast<double>(v.size() - 1);
    CompensatedSum sq;
    Errors1D e;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = v[i] - u[i];
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        sq.add(w * d * d);
        e.linf = std::max(e.linf, std::abs(d));
    }
    e.l2 = std::sqrt(step * sq.value());
    return e;
}

} // namespace homlab
