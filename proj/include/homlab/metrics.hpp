#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace homlab {

/// Value at (x, y) in [0,1]^2 of the P1 function with nodal values `v` on an
/// n x n diagonal-split grid.
double interpolate_p1(std::span<const double> v, std::size_t n, double x, double y);

/// Values of the P1 function `v` (n x n grid) at the (n_ref+1)^2 reference
/// nodes. Requires n <= n_ref; exact at coarse nodes when n divides n_ref.
std::vector<double> restrict_to_reference(std::span<const double> v, std::size_t n,
                                          std::size_t n_ref);

struct RelativeErrors {
    double l2 = 0.0;
    double linf = 0.0;
};

/// ||y - u_ref|| / ||u_ref|| in the discrete L2 (trapezoidal weights) and max
/// norms over the reference nodes.
RelativeErrors relative_errors(std::span<const double> y, std::span<const double> u_ref,
                               std::size_t n_ref);

enum class CurveId { c1, c2, c3 };
enum class NormId { l2, linf };

std::string_view to_string(CurveId c);
std::string_view to_string(NormId n);

/// One point of an error curve.
struct CurveRecord {
    std::string experiment;
    double h = 0.0;
    CurveId curve = CurveId::c1;
    NormId norm = NormId::l2;
    double value = 0.0;
    std::string meta;
};

/// CSV text with header `experiment,h,curve,norm,value,meta`.
std::string curves_to_csv(std::span<const CurveRecord> records);

/// Shortest round-trip decimal form of a double ("nan" for NaN).
std::string format_double(double v);

} // namespace homlab
