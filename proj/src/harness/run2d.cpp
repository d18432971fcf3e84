#include "homlab/cell_store.hpp"
#include "homlab/errors.hpp"
#include "homlab/harness/experiments.hpp"
#include "homlab/upscale2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace homlab::harness {

namespace {

constexpr double kSource = 10.0;

AnalyticCoeff2D make_coefficient(const Run2DConfig& cfg, const std::filesystem::path& random_bytes)
{
    if (cfg.coefficient == "mingyue") {
        return AnalyticCoeff2D::mingyue();
    }
    if (cfg.coefficient == "constant") {
        return AnalyticCoeff2D::constant(cfg.constant_value);
    }
    ByteStreamRng rng = ByteStreamRng::from_file(random_bytes);
    return AnalyticCoeff2D::random_sines(cfg.n_sin, rng, cfg.contrast);
}

std::string experiment_name(const Run2DConfig& cfg)
{
    if (cfg.coefficient == "random-sines") {
        return "random-sines-" + std::to_string(cfg.n_sin);
    }
    return cfg.coefficient;
}

/// Coefficient sampled at the square centres of an n x n grid.
std::vector<double> centre_samples(const AnalyticCoeff2D& a, std::size_t n)
{
    const double d = 1.0 / static_cast<double>(n);
    return a.sample_grid(0.5 * d, 0.5 * d, d, d, n, n);
}

std::vector<double> direct_solve(const AnalyticCoeff2D& a, std::size_t n, SolveStats* stats)
{
    const auto samples = centre_samples(a, n);
    const auto coeff = scalar_tensors(samples);
    return solve_dirichlet(CartesianP1Mesh(n), coeff, kSource, {}, stats);
}

double l2_rel_diff(std::span<const double> a, std::span<const double> b)
{
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double frob(const Sym2& t)
{
    return std::sqrt(t.a11 * t.a11 + 2.0 * t.a12 * t.a12 + t.a22 * t.a22);
}

std::string half_grid_csv(const std::vector<HalfGridRow>& rows)
{
    std::ostringstream os;
    os << "h,N_c,tensor_rel_diff,solution_rel_diff\n";
    for (const HalfGridRow& r : rows) {
        os << format_double(r.h) << ',' << r.n_c << ',' << format_double(r.tensor_rel_diff) << ','
           << format_double(r.solution_rel_diff) << '\n';
    }
    return os.str();
}

} // namespace

double Run2DResult::value(std::size_t cells, CurveId curve, NormId norm) const
{
    const double h = 1.0 / static_cast<double>(cells);
    for (const CurveRecord& r : curves) {
        if (r.h == h && r.curve == curve && r.norm == norm) {
            return r.value;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string contrast_csv(const std::vector<ContrastRow>& rows)
{
    std::ostringstream os;
    os << "h,epsbar,C_A,N_c\n";
    for (const ContrastRow& r : rows) {
        os << format_double(r.h) << ',' << format_double(r.epsbar) << ','
           << format_double(r.contrast) << ',' << r.n_c << '\n';
    }
    return os.str();
}

Run2DResult run2d(const Run2DConfig& cfg, const std::filesystem::path& random_bytes,
                  const std::filesystem::path& out_dir, unsigned threads, Manifest* manifest,
                  std::ostream* log)
{
    validate(cfg);
    auto note = [&](const std::string& msg) {
        if (log != nullptr) *log << msg << std::endl;
    };
    auto stage = [&](const std::string& name, const Stopwatch& w) {
        if (manifest != nullptr) manifest->add_stage(name, w.seconds());
        std::ostringstream os;
        os << name << ": " << w.seconds() << " s";
        note(os.str());
    };
    auto output = [&](const std::string& name, const std::string& text) {
        if (out_dir.empty()) return;
        write_text(out_dir, name, text);
        if (manifest != nullptr) manifest->add_output(name);
    };

    Run2DResult result;
    result.experiment = experiment_name(cfg);
    const AnalyticCoeff2D a = make_coefficient(cfg, random_bytes);
    note("coefficient: " + a.describe());

    Stopwatch ref_watch;
    SolveStats ref_stats;
    const std::vector<double> u_ref = direct_solve(a, cfg.n_ref, &ref_stats);
    stage("reference N_ref=" + std::to_string(cfg.n_ref) + " (" +
              std::to_string(ref_stats.iterations) + " CG iterations)",
          ref_watch);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const std::size_t n : cfg.cells) {
        const double h = 1.0 / static_cast<double>(n);
        UpscaleConfig ucfg;
        ucfg.cells = n;
        ucfg.k = cfg.k;
        ucfg.n_c = cfg.n_c != 0 ? cfg.n_c : default_cell_grid(a, n, cfg.k, cfg.n_c_cap);
        ucfg.n_cs = cfg.n_cs != 0 ? cfg.n_cs : std::min<std::size_t>(ucfg.n_c, 128);

        std::ostringstream meta_os;
        if (cfg.coefficient == "random-sines") meta_os << "N_sin=" << cfg.n_sin << ';';
        meta_os << "N_c=" << ucfg.n_c << ";N_cs=" << ucfg.n_cs << ";N_ref=" << cfg.n_ref
                << ";epsbar=" << format_double(ucfg.epsbar());
        const std::string meta = meta_os.str();
        auto record = [&](CurveId c, const RelativeErrors& e, const std::string& m) {
            result.curves.push_back({result.experiment, h, c, NormId::l2, e.l2, m});
            result.curves.push_back({result.experiment, h, c, NormId::linf, e.linf, m});
        };
        auto failed = [&](CurveId c, const std::string& flag, const std::string& what) {
            record(c, {nan, nan}, meta + ";" + flag);
            if (manifest != nullptr) {
                manifest->add_error("N=" + std::to_string(n) + " " + std::string(to_string(c)), what);
            }
            note("N=" + std::to_string(n) + " " + std::string(to_string(c)) + ": " + what);
        };

        // c1: direct solve, excluded on the reference grid itself
        if (n != cfg.n_ref) {
            Stopwatch w;
            try {
                const auto u_h = direct_solve(a, n, nullptr);
                record(CurveId::c1,
                       relative_errors(restrict_to_reference(u_h, n, cfg.n_ref), u_ref, cfg.n_ref),
                       meta);
            } catch (const NoConvergence& e) {
                failed(CurveId::c1, "noconv", e.what());
            }
            stage("N=" + std::to_string(n) + " direct", w);
        }

        Stopwatch cell_watch;
        std::optional<EffectiveField2D> field;
        try {
            field.emplace(upscale_field(a, ucfg, threads));
        } catch (const NoConvergence& e) {
            failed(CurveId::c2, "noconv", e.what());
            failed(CurveId::c3, "noconv", e.what());
        } catch (const BoundsViolation& e) {
            failed(CurveId::c2, "bounds", e.what());
            failed(CurveId::c3, "bounds", e.what());
        }
        stage("N=" + std::to_string(n) + " cell problems (N_c=" + std::to_string(ucfg.n_c) + ")",
              cell_watch);
        if (!field) {
            continue;
        }
        result.contrast.push_back({h, ucfg.epsbar(), contrast_CA(*field), ucfg.n_c});

        Stopwatch macro_watch;
        std::vector<double> U_h;
        try {
            U_h = solve_macro(*field, 1, kSource);
            const CorrectedSolution c = correct_2d(U_h, n, *field, cfg.n_ref);
            record(CurveId::c2, relative_errors(c.corrected, u_ref, cfg.n_ref), meta);
        } catch (const NoConvergence& e) {
            failed(CurveId::c2, "noconv", e.what());
        }
        try {
            const std::size_t n4 = 4 * n;
            if (n4 > cfg.n_ref) {
                throw GridMismatch("h/4-grid is finer than the reference grid");
            }
            const auto U_h4 = solve_macro(*field, 4, kSource);
            const CorrectedSolution c =
                cfg.c3_gradient == GradientSource::u_h && !U_h.empty()
                    ? correct_2d(U_h4, n4, U_h, n, *field, cfg.n_ref)
                    : correct_2d(U_h4, n4, *field, cfg.n_ref);
            record(CurveId::c3, relative_errors(c.corrected, u_ref, cfg.n_ref), meta);
        } catch (const NoConvergence& e) {
            failed(CurveId::c3, "noconv", e.what());
        } catch (const GridMismatch& e) {
            failed(CurveId::c3, "grid", e.what());
        }
        stage("N=" + std::to_string(n) + " macro solves and correction", macro_watch);

        const std::string tag = "N" + std::to_string(n);
        output("tensors_" + tag + ".csv", tensors_to_csv(*field));
        if (cfg.write_cell_store && !out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            write_cell_store(out_dir / ("cellstore_" + tag + ".bin"), *field);
            if (manifest != nullptr) manifest->add_output("cellstore_" + tag + ".bin");
        }

        if (cfg.compare_half_cell_grid && ucfg.n_c / 2 >= 16 && !U_h.empty()) {
            Stopwatch w;
            UpscaleConfig half = ucfg;
            half.n_c = ucfg.n_c / 2;
            half.n_cs = std::min(ucfg.n_cs, half.n_c);
            try {
                const EffectiveField2D coarse = upscale_field(a, half, threads);
                double worst = 0.0;
                for (std::size_t c = 0; c < n * n; ++c) {
                    const Sym2& t = field->tensors()[c];
                    const Sym2& s = coarse.tensors()[c];
                    const Sym2 d{t.a11 - s.a11, t.a12 - s.a12, t.a22 - s.a22};
                    worst = std::max(worst, frob(d) / frob(t));
                }
                const auto U_half = solve_macro(coarse, 1, kSource);
                result.half_grid.push_back({h, half.n_c, worst, l2_rel_diff(U_half, U_h)});
            } catch (const Error& e) {
                note("N=" + std::to_string(n) + " half cell grid: " + e.what());
                if (manifest != nullptr) manifest->add_error("N=" + std::to_string(n) + " half", e.what());
            }
            stage("N=" + std::to_string(n) + " half cell grid comparison", w);
        }
    }

    output("curves.csv", curves_to_csv(result.curves));
    output("contrast.csv", contrast_csv(result.contrast));
    if (cfg.compare_half_cell_grid) {
        output("compare_hc.csv", half_grid_csv(result.half_grid));
    }
    if (!out_dir.empty() && manifest != nullptr) {
        manifest->write(out_dir);
    }
    return result;
}

} // namespace homlab::harness
