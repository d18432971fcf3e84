#include "homlab/cell_store.hpp"

#include "homlab/errors.hpp"
#include "homlab/metrics.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace homlab {

namespace {

void put_f64(std::ostream& os, double v)
{
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) {
        buf[i] = static_cast<unsigned char>(bits >> (8 * i));
    }
    os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_f64(std::istream& is)
{
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) {
        throw Error("cell store is truncated");
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    }
    return std::bit_cast<double>(bits);
}

std::size_t as_count(double v, const char* what)
{
    if (!(v >= 1.0) || v != std::floor(v) || v > 1.0e9) {
        throw Error(std::string("cell store header has an invalid ") + what);
    }
    return static_cast<std::size_t>(v);
}

} // namespace

void write_cell_store(const std::filesystem::path& path, const EffectiveField2D& field)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw Error("cannot write cell store: " + path.string());
    }
    const UpscaleConfig& cfg = field.config();
    put_f64(os, static_cast<double>(cfg.cells));
    put_f64(os, static_cast<double>(cfg.k));
    put_f64(os, static_cast<double>(cfg.n_cs));
    put_f64(os, cfg.epsbar());
    for (std::size_t c = 0; c < cfg.cells * cfg.cells; ++c) {
        for (int dir = 1; dir <= 2; ++dir) {
            for (double v : field.block(c, dir)) {
                put_f64(os, v);
            }
        }
    }
    if (!os) {
        throw Error("failed writing cell store: " + path.string());
    }
}

EffectiveField2D read_cell_store(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw Error("cannot open cell store: " + path.string());
    }
    UpscaleConfig cfg;
    cfg.cells = as_count(get_f64(is), "cell count");
    cfg.k = static_cast<int>(as_count(get_f64(is), "k"));
    cfg.n_cs = as_count(get_f64(is), "stored grid");
    cfg.n_c = cfg.n_cs;
    const double eb = get_f64(is);
    if (std::abs(eb - cfg.epsbar()) > 1e-12 * eb) {
        throw Error("cell store averaging size does not match N and k");
    }
    EffectiveField2D field(cfg);
    for (std::size_t c = 0; c < cfg.cells * cfg.cells; ++c) {
        for (int dir = 1; dir <= 2; ++dir) {
            for (double& v : field.block(c, dir)) {
                v = get_f64(is);
            }
        }
    }
    if (is.peek() != std::char_traits<char>::eof()) {
        throw Error("cell store has trailing data");
    }
    return field;
}

std::string tensors_to_csv(const EffectiveField2D& field)
{
    std::ostringstream os;
    os << "i1,i2,A11,A12,A22\n";
    const std::size_t n = field.cells();
    for (std::size_t i2 = 0; i2 < n; ++i2) {
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            const Sym2& t = field.tensor(i1, i2);
            os << i1 << ',' << i2 << ',' << format_double(t.a11) << ',' << format_double(t.a12)
               << ',' << format_double(t.a22) << '\n';
        }
    }
    return os.str();
}

void read_tensor_csv(const std::filesystem::path& path, EffectiveField2D& field)
{
    std::ifstream is(path);
    if (!is) {
        throw Error("cannot open tensor CSV: " + path.string());
    }
    std::string line;
    std::getline(is, line);
    if (line != "i1,i2,A11,A12,A22") {
        throw Error("unexpected tensor CSV header: " + line);
    }
    const std::size_t n = field.cells();
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t i1, i2;
        char comma;
        Sym2 t;
        if (!(ls >> i1 >> comma >> i2 >> comma >> t.a11 >> comma >> t.a12 >> comma >> t.a22) ||
            i1 >= n || i2 >= n) {
            throw Error("malformed tensor CSV row: " + line);
        }
        field.tensor(i1, i2) = t;
        ++count;
    }
    if (count != n * n) {
        throw GridMismatch("tensor CSV does not cover every macro cell");
    }
}

} // namespace homlab
