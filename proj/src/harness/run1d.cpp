#include "homlab/errors.hpp"
#include "homlab/harness/experiments.hpp"
#include "homlab/homog1d.hpp"

#include <sstream>

namespace homlab::harness {

namespace {

PiecewiseConstantCoeff1D case_coefficient(const std::string& name,
                                          const std::filesystem::path& random_bytes)
{
    if (name == "constant") {
        return PiecewiseConstantCoeff1D::constant(1.0);
    }
    // fresh stream per case: draws always start at offset 0
    ByteStreamRng rng = ByteStreamRng::from_file(random_bytes);
    return build_coeff_1d(parse_coeff1d_case(name), rng);
}

} // namespace

std::string run1d_csv(const std::vector<Run1DRow>& rows)
{
    std::ostringstream os;
    os << "epsbar,extension,k,N_sol,E2,Einf,E2hat,Einfhat\n";
    for (const Run1DRow& r : rows) {
        os << format_double(r.epsbar) << ',' << r.extension << ',' << r.k << ',' << r.n_sol << ','
           << format_double(r.e2) << ',' << format_double(r.einf) << ','
           << format_double(r.e2_hat) << ',' << format_double(r.einf_hat) << '\n';
    }
    return os.str();
}

Run1DResult run1d(const Run1DConfig& cfg, const std::filesystem::path& random_bytes,
                  const std::filesystem::path& out_dir, Manifest* manifest)
{
    validate(cfg);
    Run1DResult result;
    for (const auto& [coef_name, rhs_name] : cfg.cases) {
        const std::string label = coef_name + rhs_name;
        Stopwatch watch;
        const PiecewiseConstantCoeff1D a = case_coefficient(coef_name, random_bytes);
        const Rhs1D rhs(parse_rhs_case(rhs_name));
        const Grid1DSolution u = solve_exact_1d(cell_reciprocal_integrals(a, cfg.n_sol), rhs, 0.0, 0.0);

        std::vector<Run1DRow> rows;
        for (const std::string& ext : cfg.extensions) {
            for (double eb : cfg.epsbar) {
                try {
                    const ExtensionSpec1D spec = ExtensionSpec1D::parse(ext, eb);
                    const EffectiveField1D field(a, spec);
                    const Grid1DSolution U =
                        solve_exact_1d(cell_reciprocal_integrals(field, cfg.n_sol), rhs, 0.0, 0.0);
                    const std::vector<double> U_hat = correct_1d(U, field);
                    const Errors1D e = errors_1d(U.u, u.u);
                    const Errors1D e_hat = errors_1d(U_hat, u.u);
                    rows.push_back({label, eb, spec.label(),
                                    spec.kind == ExtensionKind::C ? 0 : spec.k, cfg.n_sol, e.l2,
                                    e.linf, e_hat.l2, e_hat.linf});
                } catch (const Error& err) {
                    if (manifest == nullptr) throw;
                    std::ostringstream where;
                    where << label << ' ' << ext << " epsbar=" << format_double(eb);
                    manifest->add_error(where.str(), err.what());
                }
            }
        }
        if (manifest != nullptr) {
            manifest->add_stage("run1d " + label, watch.seconds());
        }
        const std::string file = "run1d_" + label + ".csv";
        if (!out_dir.empty()) {
            write_text(out_dir, file, run1d_csv(rows));
            if (manifest != nullptr) manifest->add_output(file);
        }
        result.files.push_back(file);
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    if (!out_dir.empty() && manifest != nullptr) {
        manifest->write(out_dir);
    }
    return result;
}

} // namespace homlab::harness
