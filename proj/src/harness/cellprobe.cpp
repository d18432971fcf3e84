#include "homlab/errors.hpp"
#include "homlab/harness/experiments.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace homlab::harness {

std::vector<double> read_window_csv(const std::filesystem::path& path, std::size_t& n_c)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open window file: " + path.string());
    }
    std::vector<double> values;
    std::string line;
    std::size_t rows = 0;
    n_c = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("window file " + path.string() + ": bad value '" + cell + "'");
            }
            ++cols;
        }
        if (rows == 0) {
            n_c = cols;
        } else if (cols != n_c) {
            throw GridMismatch("window file rows have different lengths");
        }
        ++rows;
    }
    if (rows == 0 || rows != n_c) {
        throw GridMismatch("window file must hold a square N_c x N_c table");
    }
    return values;
}

CellProbeResult cellprobe(const std::vector<double>& samples, std::size_t n_c)
{
    CellProbeResult r;
    r.n_c = n_c;
    r.solutions = solve_cell_pair(samples, n_c, cell_solver_options());
    r.tensor = averaged_tensor(samples, r.solutions, std::numeric_limits<double>::infinity());
    r.bounds = sample_means(samples);
    const auto ev = r.tensor.symmetric().eigenvalues();
    const double tol = 1e-6;
    r.within_bounds = ev[0] >= r.bounds.harmonic * (1.0 - tol) &&
                      ev[1] <= r.bounds.arithmetic * (1.0 + tol);
    return r;
}

void print_cellprobe(const CellProbeResult& r, std::ostream& os)
{
    const Sym2 a = r.tensor.symmetric();
    const auto ev = a.eigenvalues();
    os << "N_c        " << r.n_c << '\n'
       << "A11        " << format_double(a.a11) << '\n'
       << "A12        " << format_double(a.a12) << '\n'
       << "A22        " << format_double(a.a22) << '\n'
       << "asymmetry  " << format_double(r.tensor.asymmetry) << " (relative "
       << format_double(r.tensor.asymmetry / r.tensor.norm()) << ")\n"
       << "eigen      " << format_double(ev[0]) << ' ' << format_double(ev[1]) << '\n'
       << "bounds     [" << format_double(r.bounds.harmonic) << ", "
       << format_double(r.bounds.arithmetic) << "] " << (r.within_bounds ? "ok" : "VIOLATED")
       << '\n';
}

void write_cellprobe_solutions(const CellProbeResult& r, const std::filesystem::path& out_dir)
{
    for (int dir = 1; dir <= 2; ++dir) {
        const auto& w = r.solutions.w(dir);
        std::ostringstream os;
        for (std::size_t j = 0; j < r.n_c; ++j) {
            for (std::size_t i = 0; i < r.n_c; ++i) {
                if (i > 0) os << ',';
                os << format_double(w[i + r.n_c * j]);
            }
            os << '\n';
        }
        write_text(out_dir, "w" + std::to_string(dir) + ".csv", os.str());
    }
}

} // namespace homlab::harness
