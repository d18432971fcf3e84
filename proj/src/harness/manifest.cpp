#include "homlab/harness/manifest.hpp"

#include "homlab/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

namespace homlab::harness {

Manifest::Manifest(std::string command)
{
    doc_["command"] = std::move(command);
    doc_["version"] = HOMLAB_VERSION;
#if defined(__clang__)
    doc_["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    doc_["compiler"] = std::string("gcc ") + __VERSION__;
#else
    doc_["compiler"] = "unknown";
#endif
    doc_["stages"] = nlohmann::json::array();
    doc_["errors"] = nlohmann::json::array();
    doc_["outputs"] = nlohmann::json::array();
}

void Manifest::set_random_bytes(const std::filesystem::path& path)
{
    doc_["random_bytes"] = {{"path", path.string()},
                            {"sha256", sha256_file(path)},
                            {"size", std::filesystem::file_size(path)}};
}

void Manifest::add_stage(const std::string& name, double seconds)
{
    doc_["stages"].push_back({{"stage", name}, {"seconds", seconds}});
}

void Manifest::add_error(const std::string& where, const std::string& what)
{
    doc_["errors"].push_back({{"where", where}, {"error", what}});
}

void Manifest::add_output(const std::string& file)
{
    doc_["outputs"].push_back(file);
}

void Manifest::write(const std::filesystem::path& dir) const
{
    write_text(dir, "manifest.json", doc_.dump(2) + "\n");
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open file for hashing: " + path.string());
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) {
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
        }
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::string hex;
    char byte[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(byte, sizeof byte, "%02x", digest[i]);
        hex += byte;
    }
    return hex;
}

void write_text(const std::filesystem::path& dir, const std::string& name, const std::string& text)
{
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + (dir / name).string());
    }
    out << text;
}

} // namespace homlab::harness
