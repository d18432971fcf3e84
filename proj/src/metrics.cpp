#include "homlab/metrics.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace homlab {

double interpolate_p1(std::span<const double> v, std::size_t n, double x, double y)
{
    if (v.size() != (n + 1) * (n + 1)) {
        throw GridMismatch("nodal vector does not match the grid");
    }
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
        throw QueryOutsideDomain("interpolation point outside the unit square");
    }
    const double nx = x * static_cast<double>(n);
    const double ny = y * static_cast<double>(n);
    const std::size_t i = std::min(static_cast<std::size_t>(nx), n - 1);
    const std::size_t j = std::min(static_cast<std::size_t>(ny), n - 1);
    const double s = nx - static_cast<double>(i);
    const double t = ny - static_cast<double>(j);
    const std::size_t w = n + 1;
    const double ll = v[i + w * j];
    const double lr = v[i + 1 + w * j];
    const double ur = v[i + 1 + w * (j + 1)];
    const double ul = v[i + w * (j + 1)];
    if (s >= t) {
        return ll * (1.0 - s) + lr * (s - t) + ur * t;
    }
    return ll * (1.0 - t) + ur * s + ul * (t - s);
}

std::vector<double> restrict_to_reference(std::span<const double> v, std::size_t n,
                                          std::size_t n_ref)
{
    if (n == 0 || n > n_ref) {
        throw GridMismatch("coarse grid must not be finer than the reference grid");
    }
    if (v.size() != (n + 1) * (n + 1)) {
        throw GridMismatch("nodal vector does not match the coarse grid");
    }
    const std::size_t w = n_ref + 1;
    std::vector<double> out(w * w);
    if (n == n_ref) {
        std::copy(v.begin(), v.end(), out.begin());
        return out;
    }
    const bool aligned = n_ref % n == 0;
    const std::size_t ratio = aligned ? n_ref / n : 0;
    for (std::size_t j = 0; j < w; ++j) {
        for (std::size_t i = 0; i < w; ++i) {
            if (aligned) {
                // Integer cell/offset arithmetic keeps coarse nodes exact.
                const std::size_t ci = std::min(i / ratio, n - 1);
                const std::size_t cj = std::min(j / ratio, n - 1);
                const double s = static_cast<double>(i - ci * ratio) / static_cast<double>(ratio);
                const double t = static_cast<double>(j - cj * ratio) / static_cast<double>(ratio);
                const std::size_t cw = n + 1;
                const double ll = v[ci + cw * cj];
                const double lr = v[ci + 1 + cw * cj];
                const double ur = v[ci + 1 + cw * (cj + 1)];
                const double ul = v[ci + cw * (cj + 1)];
                out[i + w * j] = s >= t ? ll * (1.0 - s) + lr * (s - t) + ur * t
                                        : ll * (1.0 - t) + ur * s + ul * (t - s);
            } else {
                out[i + w * j] = interpolate_p1(v, n, static_cast<double>(i) / n_ref,
                                                static_cast<double>(j) / n_ref);
            }
        }
    }
    return out;
}

RelativeErrors relative_errors(std::span<const double> y, std::span<const double> u_ref,
                               std::size_t n_ref)
{
    const std::size_t w = n_ref + 1;
    if (y.size() != w * w || u_ref.size() != w * w) {
        throw GridMismatch("error norms need values on the same reference grid");
    }
    double diff_sq = 0.0, ref_sq = 0.0, diff_max = 0.0, ref_max = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
        const double wy = (j == 0 || j + 1 == w) ? 0.5 : 1.0;
        for (std::size_t i = 0; i < w; ++i) {
            const double wx = (i == 0 || i + 1 == w) ? 0.5 : 1.0;
            const std::size_t p = i + w * j;
            const double d = y[p] - u_ref[p];
            diff_sq += wx * wy * d * d;
            ref_sq += wx * wy * u_ref[p] * u_ref[p];
            diff_max = std::max(diff_max, std::abs(d));
            ref_max = std::max(ref_max, std::abs(u_ref[p]));
        }
    }
    if (ref_sq == 0.0 || ref_max == 0.0) {
        throw ZeroReference("reference solution has zero norm");
    }
    return {std::sqrt(diff_sq / ref_sq), diff_max / ref_max};
}

std::string_view to_string(CurveId c)
{
    switch (c) {
    case CurveId::c1: return "c1";
    case CurveId::c2: return "c2";
    case CurveId::c3: return "c3";
    }
    return "?";
}

std::string_view to_string(NormId n)
{
    return n == NormId::l2 ? "L2" : "Linf";
}

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

std::string curves_to_csv(std::span<const CurveRecord> records)
{
    std::ostringstream os;
    os << "experiment,h,curve,norm,value,meta\n";
    for (const auto& r : records) {
        os << r.experiment << ',' << format_double(r.h) << ',' << to_string(r.curve) << ','
           << to_string(r.norm) << ',' << format_double(r.value) << ',' << r.meta << '\n';
    }
    return os.str();
}

} // namespace homlab
