#include "homlab/upscale2d.hpp"

#include "homlab/errors.hpp"
#include "homlab/metrics.hpp"
#include "homlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace homlab {

std::size_t UpscaleConfig::block_offset() const
{
    const auto kk = static_cast<std::size_t>(k);
    return n_cs * (kk - 1) / (2 * kk);
}

void UpscaleConfig::validate() const
{
    if (cells < 1) {
        throw ConfigError("upscaling needs at least one macro cell");
    }
    if (k < 1) {
        throw ConfigError("D_k upscaling needs k >= 1");
    }
    if (n_c < 16) {
        throw ConfigError("cell grid must have at least 16 squares per side");
    }
    if (n_cs < 2 || n_cs > n_c || n_c % n_cs != 0) {
        throw ConfigError("stored cell grid must divide the cell grid");
    }
    const auto kk = static_cast<std::size_t>(k);
    if (kk > 1 && n_cs % (2 * kk) != 0) {
        throw ConfigError("stored cell grid must be a multiple of 2k");
    }
}

EffectiveField2D::EffectiveField2D(UpscaleConfig cfg) : cfg_(cfg)
{
    cfg_.validate();
    const std::size_t n = cfg_.cells * cfg_.cells;
    const std::size_t b = cfg_.block_side();
    tensors_.assign(n, Sym2{});
    asymmetry_.assign(n, 0.0);
    store_.assign(n * 2 * b * b, 0.0);
}

std::span<double> EffectiveField2D::block(std::size_t cell, int direction)
{
    const std::size_t bb = cfg_.block_side() * cfg_.block_side();
    return {store_.data() + (2 * cell + static_cast<std::size_t>(direction - 1)) * bb, bb};
}

std::span<const double> EffectiveField2D::block(std::size_t cell, int direction) const
{
    const std::size_t bb = cfg_.block_side() * cfg_.block_side();
    return {store_.data() + (2 * cell + static_cast<std::size_t>(direction - 1)) * bb, bb};
}

double EffectiveField2D::corrector(std::size_t cell, int direction, double s1, double s2) const
{
    const std::size_t b = cfg_.block_side();
    const auto w = block(cell, direction);
    const double top = static_cast<double>(b - 1);
    s1 = std::clamp(s1, 0.0, top);
    s2 = std::clamp(s2, 0.0, top);
    const std::size_t i = std::min(static_cast<std::size_t>(s1), b - 2);
    const std::size_t j = std::min(static_cast<std::size_t>(s2), b - 2);
    const double f = s1 - static_cast<double>(i);
    const double g = s2 - static_cast<double>(j);
    return (1.0 - f) * (1.0 - g) * w[i + b * j] + f * (1.0 - g) * w[i + 1 + b * j] +
           f * g * w[i + 1 + b * (j + 1)] + (1.0 - f) * g * w[i + b * (j + 1)];
}

void EffectiveField2D::store_cell_solution(std::size_t cell, const CellSolutionPair& w)
{
    if (w.n_c != cfg_.n_c) {
        throw GridMismatch("cell solution grid does not match the upscaling config");
    }
    const std::size_t b = cfg_.block_side();
    const std::size_t stride = cfg_.n_c / cfg_.n_cs;
    const std::size_t off = cfg_.block_offset();
    const std::size_t nc = cfg_.n_c;
    for (int dir = 1; dir <= 2; ++dir) {
        auto out = block(cell, dir);
        const auto& src = w.w(dir);
        for (std::size_t q2 = 0; q2 < b; ++q2) {
            const std::size_t m2 = ((off + q2) * stride) % nc;
            for (std::size_t q1 = 0; q1 < b; ++q1) {
                const std::size_t m1 = ((off + q1) * stride) % nc;
                out[q1 + b * q2] = src[m1 + nc * m2];
            }
        }
    }
}

std::vector<double> window_samples(const AnalyticCoeff2D& a, const UpscaleConfig& cfg,
                                   std::size_t i1, std::size_t i2)
{
    const double h = cfg.h();
    const double eb = cfg.epsbar();
    const double step = eb / static_cast<double>(cfg.n_c);
    const double lo1 = (static_cast<double>(i1) + 0.5) * h - 0.5 * eb;
    const double lo2 = (static_cast<double>(i2) + 0.5) * h - 0.5 * eb;
    return a.sample_grid(lo1 + 0.5 * step, lo2 + 0.5 * step, step, step, cfg.n_c, cfg.n_c);
}

EffectiveField2D upscale_field(const AnalyticCoeff2D& a, const UpscaleConfig& cfg,
                               unsigned workers, const SolverOptions& options)
{
    EffectiveField2D field(cfg);
    const std::size_t n = cfg.cells;
    parallel_for(n * n, workers, [&](std::size_t c) {
        const std::size_t i1 = c % n;
        const std::size_t i2 = c / n;
        const auto samples = window_samples(a, cfg, i1, i2);
        const std::string where = "cell (" + std::to_string(i1) + ", " + std::to_string(i2) + ")";
        try {
            const CellSolutionPair w = solve_cell_pair(samples, cfg.n_c, options);
            const EffectiveTensor t = averaged_tensor(samples, w);
            field.tensor(i1, i2) = t.symmetric();
            field.asymmetry(c) = t.asymmetry;
            field.store_cell_solution(c, w);
        } catch (const NoConvergence& e) {
            throw NoConvergence(where + ": " + e.what(), e.iterations(), e.residual());
        } catch (const BoundsViolation& e) {
            throw BoundsViolation(where + ": " + e.what());
        }
    });
    return field;
}

std::vector<double> solve_macro(const EffectiveField2D& field, std::size_t refine, double f,
                                const SolverOptions& options, SolveStats* stats)
{
    if (refine < 1) {
        throw ConfigError("macro refinement must be at least 1");
    }
    const std::size_t n = field.cells();
    const std::size_t m = n * refine;
    std::vector<Sym2> coeff(m * m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            coeff[i + m * j] = field.tensor(i / refine, j / refine);
        }
    }
    return solve_dirichlet(CartesianP1Mesh(m), coeff, f, options, stats);
}

namespace {

/// Central-difference gradients of an h-grid P1 function at square centres.
class CenterGradients {
public:
    CenterGradients(std::span<const double> u, std::size_t n) : n_(n), gx_(n * n), gy_(n * n)
    {
        if (u.size() != (n + 1) * (n + 1)) {
            throw GridMismatch("gradient source does not match the h-grid");
        }
        const std::size_t w = n + 1;
        const double inv = static_cast<double>(n) / 2.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                const double ll = u[i + w * j];
                const double lr = u[i + 1 + w * j];
                const double ur = u[i + 1 + w * (j + 1)];
                const double ul = u[i + w * (j + 1)];
                gx_[i + n * j] = ((lr + ur) - (ll + ul)) * inv;
                gy_[i + n * j] = ((ul + ur) - (ll + lr)) * inv;
            }
        }
    }

    std::array<double, 2> operator()(double x, double y) const
    {
        if (n_ == 1) {
            return {gx_[0], gy_[0]};
        }
        auto locate = [this](double t, std::size_t& i, double& frac) {
            const double u = t * static_cast<double>(n_) - 0.5;
            const double fl = std::floor(u);
            const double top = static_cast<double>(n_ - 2);
            const double base = std::clamp(fl, 0.0, top);
            i = static_cast<std::size_t>(base);
            frac = std::clamp(u - base, 0.0, 1.0);
        };
        std::size_t i, j;
        double f, g;
        locate(x, i, f);
        locate(y, j, g);
        auto bil = [&](const std::vector<double>& v) {
            return (1.0 - f) * (1.0 - g) * v[i + n_ * j] + f * (1.0 - g) * v[i + 1 + n_ * j] +
                   f * g * v[i + 1 + n_ * (j + 1)] + (1.0 - f) * g * v[i + n_ * (j + 1)];
        };
        return {bil(gx_), bil(gy_)};
    }

private:
    std::size_t n_;
    std::vector<double> gx_;
    std::vector<double> gy_;
};

} // namespace

std::array<double, 2> macro_gradient(std::span<const double> U_h, std::size_t n, double x, double y)
{
    return CenterGradients(U_h, n)(x, y);
}

namespace {

std::vector<double> inject_to_h_grid(std::span<const double> U, std::size_t n_u, std::size_t n)
{
    if (n_u < n || n_u % n != 0) {
        throw GridMismatch("macro solution grid must refine the h-grid");
    }
    if (U.size() != (n_u + 1) * (n_u + 1)) {
        throw GridMismatch("macro solution does not match its grid");
    }
    const std::size_t ratio = n_u / n;
    std::vector<double> U_h((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= n; ++i) {
            U_h[i + (n + 1) * j] = U[i * ratio + (n_u + 1) * j * ratio];
        }
    }
    return U_h;
}

} // namespace

CorrectedSolution correct_2d(std::span<const double> U, std::size_t n_u,
                             const EffectiveField2D& field, std::size_t n_ref)
{
    return correct_2d(U, n_u, U, n_u, field, n_ref);
}

CorrectedSolution correct_2d(std::span<const double> U, std::size_t n_u,
                             std::span<const double> U_grad, std::size_t n_grad,
                             const EffectiveField2D& field, std::size_t n_ref)
{
    const UpscaleConfig& cfg = field.config();
    const std::size_t n = cfg.cells;
    if (n_u < n || n_u % n != 0 || U.size() != (n_u + 1) * (n_u + 1)) {
        throw GridMismatch("macro solution does not match a refinement of the h-grid");
    }
    const std::vector<double> U_h = inject_to_h_grid(U_grad, n_grad, n);
    const CenterGradients grad(U_h, n);

    CorrectedSolution out;
    out.n_ref = n_ref;
    out.base = restrict_to_reference(U, n_u, n_ref);
    out.corrected.resize(out.base.size());

    const double h = cfg.h();
    const double eb = cfg.epsbar();
    const double ncs = static_cast<double>(cfg.n_cs);
    const double off = static_cast<double>(cfg.block_offset());
    const std::size_t w = n_ref + 1;
    for (std::size_t q = 0; q < w; ++q) {
        const double y = static_cast<double>(q) / static_cast<double>(n_ref);
        const std::size_t i2 = std::min(static_cast<std::size_t>(y * static_cast<double>(n)), n - 1);
        const double lo2 = (static_cast<double>(i2) + 0.5) * h - 0.5 * eb;
        const double s2 = (y - lo2) / eb * ncs - off;
        for (std::size_t p = 0; p < w; ++p) {
            const double x = static_cast<double>(p) / static_cast<double>(n_ref);
            const std::size_t i1 =
                std::min(static_cast<std::size_t>(x * static_cast<double>(n)), n - 1);
            const double lo1 = (static_cast<double>(i1) + 0.5) * h - 0.5 * eb;
            const double s1 = (x - lo1) / eb * ncs - off;
            const std::size_t cell = i1 + n * i2;
            const auto g = grad(x, y);
            const double corr = field.corrector(cell, 1, s1, s2) * g[0] +
                                field.corrector(cell, 2, s1, s2) * g[1];
            out.corrected[p + w * q] = out.base[p + w * q] + eb * corr;
        }
    }
    return out;
}

double contrast_CA(std::span<const Sym2> tensors)
{
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (const Sym2& t : tensors) {
        hi = std::max({hi, t.a11, t.a22});
        lo = std::min({lo, t.a11, t.a22});
    }
    return hi / lo;
}

double contrast_CA(const EffectiveField2D& field)
{
    return contrast_CA(field.tensors());
}

std::size_t default_cell_grid(const AnalyticCoeff2D& a, std::size_t cells, int k, std::size_t cap)
{
    const double lambda = a.shortest_wavelength();
    std::size_t nc = 64;
    if (std::isfinite(lambda)) {
        const double needed = 16.0 * k / (static_cast<double>(cells) * lambda);
        while (static_cast<double>(nc) < needed && nc < cap) {
            nc *= 2;
        }
    }
    return std::min(nc, cap);
}

} // namespace homlab
