#pragma once

#include "homlab/problem_gen.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace homlab::harness {

struct Run1DConfig {
    /// Coefficient/rhs pairs such as ("a2", "f1"); coefficient "constant"
    /// gives a = 1 everywhere.
    std::vector<std::pair<std::string, std::string>> cases{{"a2", "f1"}};
    std::vector<std::string> extensions{"C"};
    std::vector<double> epsbar{0.016, 0.008, 0.004, 0.002};
    std::size_t n_sol = 1'000'000;
};

enum class GradientSource { u_h, u_h4_projected };

struct Run2DConfig {
    std::string coefficient = "random-sines"; ///< random-sines | mingyue | constant
    std::size_t n_sin = 64;
    double contrast = 1.0e4;
    double constant_value = 1.0;
    std::vector<std::size_t> cells{8, 16, 32, 64, 128}; ///< N = 1/h per sweep point
    int k = 2;
    std::size_t n_c = 0;       ///< 0 picks default_cell_grid
    std::size_t n_c_cap = 256;
    std::size_t n_cs = 0;      ///< 0 picks min(n_c, 128)
    std::size_t n_ref = 1024;
    GradientSource c3_gradient = GradientSource::u_h4_projected;
    bool compare_half_cell_grid = false;
    bool write_cell_store = true;
};

struct DumpConfig {
    int dimension = 1;
    std::string coefficient = "a2"; ///< 1D case, or 2D coefficient kind
    std::size_t n_sin = 64;
    std::size_t samples = 4096;     ///< 1D points / 2D points per side
};

struct ExperimentConfig {
    Run1DConfig run1d;
    Run2DConfig run2d;
    DumpConfig dump;
    std::filesystem::path random_bytes;
    std::filesystem::path out_dir = "out";
    unsigned threads = 1;
    bool paper_scale = false;
};

/// Reads a JSON config; missing keys keep their defaults. Keys:
///   random_bytes, out_dir, threads, paper_scale,
///   run1d: {cases: [["a2","f1"], ...], extensions, epsbar, n_sol}
///   run2d: {coefficient, n_sin, contrast, constant_value, cells, k, n_c,
///           n_c_cap, n_cs, n_ref, c3_gradient ("Uh" | "Uh4-projected"),
///           compare_half_cell_grid, write_cell_store}
///   dump:  {dimension, coefficient, n_sin, samples}
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies the large-grid settings (N_sol = 6.4e7, N_ref = 4096, n_c cap 512).
void apply_paper_scale(ExperimentConfig& cfg);

void validate(const Run1DConfig& cfg);
void validate(const Run2DConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);

/// Random byte file to use: the configured one or the shipped fixture.
std::filesystem::path resolve_random_bytes(const ExperimentConfig& cfg);

} // namespace homlab::harness
