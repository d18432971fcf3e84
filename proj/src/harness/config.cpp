#include "homlab/harness/config.hpp"

#include "homlab/byte_rng.hpp"
#include "homlab/errors.hpp"
#include "homlab/homog1d.hpp"

#include <fstream>

namespace homlab::harness {

using nlohmann::json;

namespace {

template <class T>
void read_opt(const json& j, const char* key, T& out)
{
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config key '") + key + "': " + e.what());
        }
    }
}

std::string gradient_name(GradientSource s)
{
    return s == GradientSource::u_h ? "Uh" : "Uh4-projected";
}

} // namespace

ExperimentConfig parse_config(const json& j)
{
    ExperimentConfig cfg;
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    std::string bytes;
    read_opt(j, "random_bytes", bytes);
    if (!bytes.empty()) cfg.random_bytes = bytes;
    std::string out;
    read_opt(j, "out_dir", out);
    if (!out.empty()) cfg.out_dir = out;
    read_opt(j, "threads", cfg.threads);
    read_opt(j, "paper_scale", cfg.paper_scale);

    if (j.contains("run1d")) {
        const json& r = j.at("run1d");
        if (r.contains("cases")) {
            cfg.run1d.cases.clear();
            for (const auto& c : r.at("cases")) {
                if (!c.is_array() || c.size() != 2) {
                    throw ConfigError("run1d.cases entries must be [coefficient, rhs] pairs");
                }
                cfg.run1d.cases.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
            }
        }
        read_opt(r, "extensions", cfg.run1d.extensions);
        read_opt(r, "epsbar", cfg.run1d.epsbar);
        read_opt(r, "n_sol", cfg.run1d.n_sol);
    }
    if (j.contains("run2d")) {
        const json& r = j.at("run2d");
        Run2DConfig& c = cfg.run2d;
        read_opt(r, "coefficient", c.coefficient);
        read_opt(r, "n_sin", c.n_sin);
        read_opt(r, "contrast", c.contrast);
        read_opt(r, "constant_value", c.constant_value);
        read_opt(r, "cells", c.cells);
        read_opt(r, "k", c.k);
        read_opt(r, "n_c", c.n_c);
        read_opt(r, "n_c_cap", c.n_c_cap);
        read_opt(r, "n_cs", c.n_cs);
        read_opt(r, "n_ref", c.n_ref);
        std::string grad;
        read_opt(r, "c3_gradient", grad);
        if (grad == "Uh") {
            c.c3_gradient = GradientSource::u_h;
        } else if (grad == "Uh4-projected" || grad.empty()) {
            c.c3_gradient = GradientSource::u_h4_projected;
        } else {
            throw ConfigError("run2d.c3_gradient must be Uh or Uh4-projected");
        }
        read_opt(r, "compare_half_cell_grid", c.compare_half_cell_grid);
        read_opt(r, "write_cell_store", c.write_cell_store);
    }
    if (j.contains("dump")) {
        const json& d = j.at("dump");
        read_opt(d, "dimension", cfg.dump.dimension);
        read_opt(d, "coefficient", cfg.dump.coefficient);
        read_opt(d, "n_sin", cfg.dump.n_sin);
        read_opt(d, "samples", cfg.dump.samples);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    try {
        return parse_config(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
}

void apply_paper_scale(ExperimentConfig& cfg)
{
    cfg.paper_scale = true;
    cfg.run1d.n_sol = 64'000'000;
    cfg.run2d.n_ref = 4096;
    cfg.run2d.n_c_cap = 512;
}

void validate(const Run1DConfig& cfg)
{
    if (cfg.n_sol < 2) {
        throw ConfigError("run1d.n_sol must be at least 2");
    }
    if (cfg.cases.empty() || cfg.extensions.empty() || cfg.epsbar.empty()) {
        throw ConfigError("run1d needs at least one case, extension and averaging size");
    }
    for (const auto& [coef, rhs] : cfg.cases) {
        if (coef != "constant") parse_coeff1d_case(coef);
        parse_rhs_case(rhs);
    }
    for (std::size_t i = 0; i < cfg.epsbar.size(); ++i) {
        if (!(cfg.epsbar[i] > 0.0)) {
            throw ConfigError("run1d.epsbar values must be positive");
        }
        if (i > 0 && !(cfg.epsbar[i] < cfg.epsbar[i - 1])) {
            throw ConfigError("run1d.epsbar values must be decreasing");
        }
        for (const auto& ext : cfg.extensions) {
            ExtensionSpec1D::parse(ext, cfg.epsbar[i]);
        }
    }
}

void validate(const Run2DConfig& cfg)
{
    if (cfg.coefficient != "random-sines" && cfg.coefficient != "mingyue" &&
        cfg.coefficient != "constant") {
        throw ConfigError("run2d.coefficient must be random-sines, mingyue or constant");
    }
    if (cfg.coefficient == "random-sines") {
        tabulated_sine_range(cfg.n_sin);
    }
    auto pow2 = [](std::size_t v) { return v > 0 && (v & (v - 1)) == 0; };
    if (!pow2(cfg.n_ref)) {
        throw ConfigError("run2d.n_ref must be a power of two");
    }
    if (cfg.cells.empty()) {
        throw ConfigError("run2d.cells must list at least one grid");
    }
    for (std::size_t i = 0; i < cfg.cells.size(); ++i) {
        if (!pow2(cfg.cells[i]) || cfg.cells[i] > cfg.n_ref) {
            throw ConfigError("run2d.cells must be powers of two not exceeding n_ref");
        }
        if (i > 0 && !(cfg.cells[i] > cfg.cells[i - 1])) {
            // increasing N means decreasing averaging size
            throw ConfigError("run2d.cells must be increasing");
        }
    }
    if (cfg.k < 1) {
        throw ConfigError("run2d.k must be at least 1");
    }
    if (cfg.n_c != 0 && cfg.n_c < 16) {
        throw ConfigError("run2d.n_c must be at least 16");
    }
}

json to_json(const ExperimentConfig& cfg)
{
    json cases = json::array();
    for (const auto& [c, r] : cfg.run1d.cases) {
        cases.push_back({c, r});
    }
    const Run2DConfig& r = cfg.run2d;
    return json{
        {"random_bytes", cfg.random_bytes.string()},
        {"out_dir", cfg.out_dir.string()},
        {"threads", cfg.threads},
        {"paper_scale", cfg.paper_scale},
        {"run1d",
         {{"cases", cases},
          {"extensions", cfg.run1d.extensions},
          {"epsbar", cfg.run1d.epsbar},
          {"n_sol", cfg.run1d.n_sol}}},
        {"run2d",
         {{"coefficient", r.coefficient},
          {"n_sin", r.n_sin},
          {"contrast", r.contrast},
          {"constant_value", r.constant_value},
          {"cells", r.cells},
          {"k", r.k},
          {"n_c", r.n_c},
          {"n_c_cap", r.n_c_cap},
          {"n_cs", r.n_cs},
          {"n_ref", r.n_ref},
          {"c3_gradient", gradient_name(r.c3_gradient)},
          {"compare_half_cell_grid", r.compare_half_cell_grid},
          {"write_cell_store", r.write_cell_store}}},
        {"dump",
         {{"dimension", cfg.dump.dimension},
          {"coefficient", cfg.dump.coefficient},
          {"n_sin", cfg.dump.n_sin},
          {"samples", cfg.dump.samples}}},
    };
}

std::filesystem::path resolve_random_bytes(const ExperimentConfig& cfg)
{
    return cfg.random_bytes.empty() ? default_fixture_path() : cfg.random_bytes;
}

} // namespace homlab::harness
