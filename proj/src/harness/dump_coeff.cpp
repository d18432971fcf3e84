#include "homlab/errors.hpp"
#include "homlab/harness/experiments.hpp"

#include <sstream>

namespace homlab::harness {

std::string dump_coeff(const DumpConfig& cfg, const std::filesystem::path& random_bytes)
{
    if (cfg.samples < 2) {
        throw ConfigError("dump.samples must be at least 2");
    }
    std::ostringstream os;
    if (cfg.dimension == 1) {
        ByteStreamRng rng = ByteStreamRng::from_file(random_bytes);
        const auto a = build_coeff_1d(parse_coeff1d_case(cfg.coefficient), rng);
        os << "x,value\n";
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const double x = static_cast<double>(i) / static_cast<double>(cfg.samples - 1);
            os << format_double(x) << ',' << format_double(a(x)) << '\n';
        }
        return os.str();
    }
    if (cfg.dimension != 2) {
        throw ConfigError("dump.dimension must be 1 or 2");
    }
    AnalyticCoeff2D a = AnalyticCoeff2D::constant(1.0);
    if (cfg.coefficient == "mingyue") {
        a = AnalyticCoeff2D::mingyue();
    } else if (cfg.coefficient == "random-sines") {
        ByteStreamRng rng = ByteStreamRng::from_file(random_bytes);
        a = AnalyticCoeff2D::random_sines(cfg.n_sin, rng);
    } else {
        throw ConfigError("dump.coefficient must be mingyue or random-sines in 2D");
    }
    const std::size_t n = cfg.samples;
    const double d = 1.0 / static_cast<double>(n);
    const auto v = a.sample_grid(0.5 * d, 0.5 * d, d, d, n, n);
    os << "x,y,value\n";
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t p = 0; p < n; ++p) {
            os << format_double((static_cast<double>(p) + 0.5) * d) << ','
               << format_double((static_cast<double>(q) + 0.5) * d) << ','
               << format_double(v[p + n * q]) << '\n';
        }
    }
    return os.str();
}

} // namespace homlab::harness
