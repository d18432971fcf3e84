#pragma once

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <string>

namespace homlab::harness {

/// Run provenance written next to the outputs as manifest.json.
class Manifest {
public:
    explicit Manifest(std::string command);

    void set_config(nlohmann::json config) { doc_["config"] = std::move(config); }
    void set_random_bytes(const std::filesystem::path& path);
    void add_stage(const std::string& name, double seconds);
    void add_error(const std::string& where, const std::string& what);
    void add_output(const std::string& file);

    const nlohmann::json& json() const noexcept { return doc_; }
    void write(const std::filesystem::path& dir) const;

private:
    nlohmann::json doc_;
};

/// Wall-clock stopwatch in seconds.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Lower-case hex SHA-256 of a file's content.
std::string sha256_file(const std::filesystem::path& path);

/// Writes text to dir/name, creating the directory.
void write_text(const std::filesystem::path& dir, const std::string& name, const std::string& text);

} // namespace homlab::harness
