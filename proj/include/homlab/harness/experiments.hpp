#pragma once

#include "homlab/cell_problem.hpp"
#include "homlab/harness/config.hpp"
#include "homlab/harness/manifest.hpp"
#include "homlab/metrics.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace homlab::harness {

// ---------------------------------------------------------------------------
// run1d
// ---------------------------------------------------------------------------

struct Run1DRow {
    std::string case_label; ///< e.g. "a2f1"
    double epsbar = 0.0;
    std::string extension;  ///< "C", "D1", ...
    int k = 0;              ///< 0 for C
    std::size_t n_sol = 0;
    double e2 = 0.0;
    double einf = 0.0;
    double e2_hat = 0.0;
    double einf_hat = 0.0;
};

struct Run1DResult {
    std::vector<Run1DRow> rows;
    std::vector<std::string> files; ///< one CSV per case
};

/// CSV text `epsbar,extension,k,N_sol,E2,Einf,E2hat,Einfhat` for the rows of one case.
std::string run1d_csv(const std::vector<Run1DRow>& rows);

/// Sweeps every case, extension and averaging size. Each case rebuilds the
/// coefficient from a fresh stream at offset 0. Writes run1d_<case>.csv and
/// manifest.json into `out_dir` when it is non-empty.
Run1DResult run1d(const Run1DConfig& cfg, const std::filesystem::path& random_bytes,
                  const std::filesystem::path& out_dir, Manifest* manifest = nullptr);

// ---------------------------------------------------------------------------
// run2d
// ---------------------------------------------------------------------------

struct ContrastRow {
    double h = 0.0;
    double epsbar = 0.0;
    double contrast = 0.0;
    std::size_t n_c = 0;
};

struct HalfGridRow {
    double h = 0.0;
    std::size_t n_c = 0;
    double tensor_rel_diff = 0.0;   ///< max over cells of |A - A'|_F / |A|_F
    double solution_rel_diff = 0.0; ///< relative L2 difference of U_h
};

struct Run2DResult {
    std::string experiment;
    std::vector<CurveRecord> curves;
    std::vector<ContrastRow> contrast;
    std::vector<HalfGridRow> half_grid;

    /// Curve value, NaN when absent.
    double value(std::size_t cells, CurveId curve, NormId norm) const;
};

std::string contrast_csv(const std::vector<ContrastRow>& rows);

/// Reference solve on the N_ref grid, then for each h: direct solve (c1),
/// upscaling + U_h + correction (c2), U_{h,4} + correction (c3), and C_A.
/// Writes curves.csv, contrast.csv, tensors_N<N>.csv, cellstore_N<N>.bin and
/// manifest.json into `out_dir` when it is non-empty.
Run2DResult run2d(const Run2DConfig& cfg, const std::filesystem::path& random_bytes,
                  const std::filesystem::path& out_dir, unsigned threads = 1,
                  Manifest* manifest = nullptr, std::ostream* log = nullptr);

// ---------------------------------------------------------------------------
// cellprobe / dump-coeff
// ---------------------------------------------------------------------------

struct CellProbeResult {
    std::size_t n_c = 0;
    EffectiveTensor tensor;
    SampleMeans bounds;
    bool within_bounds = false;
    CellSolutionPair solutions;
};

/// Reads n_c lines of n_c comma-separated positive values (line j holds the
/// squares of row j).
std::vector<double> read_window_csv(const std::filesystem::path& path, std::size_t& n_c);

CellProbeResult cellprobe(const std::vector<double>& samples, std::size_t n_c);
void print_cellprobe(const CellProbeResult& r, std::ostream& os);
/// Writes w1.csv and w2.csv (same layout as the window file).
void write_cellprobe_solutions(const CellProbeResult& r, const std::filesystem::path& out_dir);

/// Samples a coefficient to CSV: `x,value` (1D, over [0, 1]) or `x,y,value`
/// (2D, square centres).
std::string dump_coeff(const DumpConfig& cfg, const std::filesystem::path& random_bytes);

} // namespace homlab::harness
