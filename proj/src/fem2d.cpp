#include "homlab/fem2d.hpp"

#include "homlab/errors.hpp"

#include <cmath>

namespace homlab {

std::array<double, 2> Sym2::eigenvalues() const
{
    const double mean = 0.5 * (a11 + a22);
    const double half_diff = 0.5 * (a11 - a22);
    const double rad = std::sqrt(half_diff * half_diff + a12 * a12);
    return {mean - rad, mean + rad};
}

CartesianP1Mesh::CartesianP1Mesh(std::size_t cells_per_side) : n_(cells_per_side)
{
    if (n_ < 1) {
        throw DegenerateGrid("mesh needs at least one square per side");
    }
}

namespace {

using Grad3 = std::array<std::array<double, 2>, 3>;

std::array<std::array<double, 3>, 3> local_stiffness(const Grad3& g, const Sym2& k)
{
    std::array<std::array<double, 3>, 3> out{};
    for (int a = 0; a < 3; ++a) {
        const double kx = k.a11 * g[a][0] + k.a12 * g[a][1];
        const double ky = k.a12 * g[a][0] + k.a22 * g[a][1];
        for (int b = 0; b < 3; ++b) {
            out[a][b] = 0.5 * (kx * g[b][0] + ky * g[b][1]);
        }
    }
    return out;
}

} // namespace

void add_square_stiffness(StencilMatrix& m, const std::array<std::size_t, 4>& c,
                          const std::array<bool, 4>& active, const Sym2& k)
{
    enum { LL = 0, LR = 1, UR = 2, UL = 3 };
    const auto lo = local_stiffness(kLowerTriangleGrad, k); // LL, LR, UR
    const auto up = local_stiffness(kUpperTriangleGrad, k); // LL, UR, UL

    if (active[LL]) m.diag[c[LL]] += lo[0][0] + up[0][0];
    if (active[LR]) m.diag[c[LR]] += lo[1][1];
    if (active[UR]) m.diag[c[UR]] += lo[2][2] + up[1][1];
    if (active[UL]) m.diag[c[UL]] += up[2][2];

    if (active[LL] && active[LR]) m.east[c[LL]] += lo[0][1];
    if (active[LR] && active[UR]) m.north[c[LR]] += lo[1][2];
    if (active[LL] && active[UR]) m.north_east[c[LL]] += lo[0][2] + up[0][1];
    if (active[UL] && active[UR]) m.east[c[UL]] += up[2][1];
    if (active[LL] && active[UL]) m.north[c[LL]] += up[0][2];
}

SparseSpdSystem assemble_dirichlet(const CartesianP1Mesh& mesh, std::span<const Sym2> coeff,
                                   const SourceFunction& f)
{
    const std::size_t n = mesh.cells();
    if (coeff.size() != n * n) {
        throw GridMismatch("coefficient needs one value per square");
    }
    const std::size_t w = mesh.nodes_per_side();
    const double h = mesh.h();
    SparseSpdSystem sys{StencilMatrix(w, Constraint::dirichlet), std::vector<double>(w * w, 0.0)};

    auto interior = [n](std::size_t i, std::size_t j) { return i > 0 && j > 0 && i < n && j < n; };

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const Sym2& k = coeff[i + n * j];
            if (!k.is_spd()) {
                throw NonSpdCoefficient("coefficient is not SPD on square (" + std::to_string(i) +
                                        ", " + std::to_string(j) + ")");
            }
            const std::array<std::size_t, 4> corners{mesh.node(i, j), mesh.node(i + 1, j),
                                                     mesh.node(i + 1, j + 1), mesh.node(i, j + 1)};
            const std::array<bool, 4> active{interior(i, j), interior(i + 1, j),
                                             interior(i + 1, j + 1), interior(i, j + 1)};
            add_square_stiffness(sys.matrix, corners, active, k);

            const double x0 = static_cast<double>(i) * h;
            const double y0 = static_cast<double>(j) * h;
            const double area_third = h * h / 6.0;
            const double f_lo = f(x0 + 2.0 * h / 3.0, y0 + h / 3.0) * area_third;
            const double f_up = f(x0 + h / 3.0, y0 + 2.0 * h / 3.0) * area_third;
            if (active[0]) sys.rhs[corners[0]] += f_lo + f_up;
            if (active[1]) sys.rhs[corners[1]] += f_lo;
            if (active[2]) sys.rhs[corners[2]] += f_lo + f_up;
            if (active[3]) sys.rhs[corners[3]] += f_up;
        }
    }
    for (std::size_t j = 0; j < w; ++j) {
        for (std::size_t i = 0; i < w; ++i) {
            if (!interior(i, j)) {
                sys.matrix.diag[mesh.node(i, j)] = 1.0;
            }
        }
    }
    return sys;
}

SparseSpdSystem assemble_dirichlet(const CartesianP1Mesh& mesh, std::span<const Sym2> coeff,
                                   double f)
{
    return assemble_dirichlet(mesh, coeff, [f](double, double) { return f; });
}

SparseSpdSystem assemble_dirichlet(const CartesianP1Mesh& mesh, std::span<const double> coeff,
                                   double f)
{
    const auto tensors = scalar_tensors(coeff);
    return assemble_dirichlet(mesh, tensors, f);
}

std::vector<Sym2> scalar_tensors(std::span<const double> coeff)
{
    std::vector<Sym2> out(coeff.size());
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        out[i] = Sym2::scalar(coeff[i]);
    }
    return out;
}

std::vector<double> solve_dirichlet(const CartesianP1Mesh& mesh, std::span<const Sym2> coeff,
                                    double f, const SolverOptions& options, SolveStats* stats)
{
    return solve_spd(assemble_dirichlet(mesh, coeff, f), options, stats);
}

double l2_error(const CartesianP1Mesh& mesh, std::span<const double> nodal,
                const SourceFunction& exact)
{
    const std::size_t n = mesh.cells();
    if (nodal.size() != mesh.node_count()) {
        throw GridMismatch("nodal vector does not match the mesh");
    }
    const double h = mesh.h();
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x0 = static_cast<double>(i) * h;
            const double y0 = static_cast<double>(j) * h;
            const double ll = nodal[mesh.node(i, j)];
            const double lr = nodal[mesh.node(i + 1, j)];
            const double ur = nodal[mesh.node(i + 1, j + 1)];
            const double ul = nodal[mesh.node(i, j + 1)];
            // Edge midpoints of the lower triangle (LL, LR, UR) and the upper (LL, UR, UL).
            const double lower[3][3] = {{x0 + 0.5 * h, y0, 0.5 * (ll + lr)},
                                        {x0 + h, y0 + 0.5 * h, 0.5 * (lr + ur)},
                                        {x0 + 0.5 * h, y0 + 0.5 * h, 0.5 * (ll + ur)}};
            const double upper[3][3] = {{x0 + 0.5 * h, y0 + 0.5 * h, 0.5 * (ll + ur)},
                                        {x0 + 0.5 * h, y0 + h, 0.5 * (ur + ul)},
                                        {x0, y0 + 0.5 * h, 0.5 * (ll + ul)}};
            for (const auto* tri : {lower, upper}) {
                for (int q = 0; q < 3; ++q) {
                    const double d = tri[q][2] - exact(tri[q][0], tri[q][1]);
                    sum += d * d * (h * h / 6.0);
                }
            }
        }
    }
    return std::sqrt(sum);
}

} // namespace homlab
