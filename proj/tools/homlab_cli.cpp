#include "homlab/errors.hpp"
#include "homlab/harness/config.hpp"
#include "homlab/harness/experiments.hpp"
#include "homlab/harness/manifest.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace hh = homlab::harness;

namespace {

constexpr const char* kDrawSchedule =
    "Random draws: every experiment re-opens the byte file and reads from offset 0.\n"
    "Draw i uses bytes 2i-2 and 2i-1 as xi = (b0 + 256 b1) / 65535.\n"
    "  run1d       per case: breakpoint widths from odd draws, values from even draws\n"
    "  run2d       random-sines: psi_i = 2 pi xi_{2i-1}, phi_i = 2 xi_{2i}, i = 1..N_sin\n"
    "  dump-coeff  same schedule as the experiment it mirrors\n"
    "Without --random-bytes the shipped data/random_bytes.bin is used.";

struct CommonOptions {
    std::string config;
    std::string random_bytes;
    std::string out_dir;
    std::optional<unsigned> threads;
    bool paper_scale = false;
};

void add_common(CLI::App* app, CommonOptions& o)
{
    app->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
    app->add_option("--random-bytes", o.random_bytes, "byte file replacing the shipped fixture")
        ->check(CLI::ExistingFile);
    app->add_option("--out-dir", o.out_dir, "output directory (default: out)");
    app->add_option("--threads", o.threads, "worker threads for the cell sweep")
        ->check(CLI::PositiveNumber);
    app->add_flag("--paper-scale", o.paper_scale,
                  "N_sol = 6.4e7, N_ref = 4096, N_c cap 512 (slow)");
}

hh::ExperimentConfig resolve(const CommonOptions& o)
{
    hh::ExperimentConfig cfg = o.config.empty() ? hh::ExperimentConfig{} : hh::load_config(o.config);
    if (!o.random_bytes.empty()) cfg.random_bytes = o.random_bytes;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.threads) cfg.threads = *o.threads;
    if (o.paper_scale) hh::apply_paper_scale(cfg);
    cfg.random_bytes = hh::resolve_random_bytes(cfg);
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical homogenization lab: 1D/2D averaging experiments"};
    app.footer(kDrawSchedule);
    app.require_subcommand(1);

    CommonOptions common;
    auto* run1d = app.add_subcommand("run1d", "1D error sweep over extensions and averaging sizes");
    add_common(run1d, common);
    auto* run2d = app.add_subcommand("run2d", "2D upscaling sweep writing curves.csv and contrast.csv");
    add_common(run2d, common);

    auto* probe = app.add_subcommand("cellprobe", "solve both cell problems for a sampled window");
    std::string window;
    std::string probe_out;
    probe->add_option("window", window, "CSV with N_c rows of N_c positive values")
        ->required()
        ->check(CLI::ExistingFile);
    probe->add_option("--out-dir", probe_out, "write w1.csv and w2.csv here");

    auto* dump = app.add_subcommand("dump-coeff", "sample a coefficient to CSV on stdout");
    add_common(dump, common);
    std::optional<int> dim;
    std::string coef;
    std::optional<std::size_t> samples;
    dump->add_option("--dim", dim, "1 or 2")->check(CLI::IsMember({1, 2}));
    dump->add_option("--coefficient", coef, "a1|a2|a3 (1D), mingyue|random-sines (2D)");
    dump->add_option("--samples", samples, "points (1D) or points per side (2D)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run1d) {
            const auto cfg = resolve(common);
            hh::Manifest manifest("run1d");
            manifest.set_config(hh::to_json(cfg));
            manifest.set_random_bytes(cfg.random_bytes);
            const auto r = hh::run1d(cfg.run1d, cfg.random_bytes, cfg.out_dir, &manifest);
            for (const auto& f : r.files) std::cout << (cfg.out_dir / f).string() << '\n';
            return manifest.json()["errors"].empty() ? 0 : 2;
        }
        if (*run2d) {
            const auto cfg = resolve(common);
            hh::Manifest manifest("run2d");
            manifest.set_config(hh::to_json(cfg));
            manifest.set_random_bytes(cfg.random_bytes);
            hh::run2d(cfg.run2d, cfg.random_bytes, cfg.out_dir, cfg.threads, &manifest, &std::cerr);
            std::cout << (cfg.out_dir / "curves.csv").string() << '\n';
            return manifest.json()["errors"].empty() ? 0 : 2;
        }
        if (*probe) {
            std::size_t n_c = 0;
            const auto values = hh::read_window_csv(window, n_c);
            const auto r = hh::cellprobe(values, n_c);
            hh::print_cellprobe(r, std::cout);
            if (!probe_out.empty()) hh::write_cellprobe_solutions(r, probe_out);
            return r.within_bounds ? 0 : 3;
        }
        if (*dump) {
            auto cfg = resolve(common);
            if (dim) cfg.dump.dimension = *dim;
            if (!coef.empty()) cfg.dump.coefficient = coef;
            if (samples) cfg.dump.samples = *samples;
            std::cout << hh::dump_coeff(cfg.dump, cfg.random_bytes);
            return 0;
        }
    } catch (const homlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
