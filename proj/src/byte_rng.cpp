#include "homlab/byte_rng.hpp"

#include "homlab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

namespace homlab {

ByteStreamRng::ByteStreamRng(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

ByteStreamRng ByteStreamRng::from_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open random byte file: " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return ByteStreamRng(std::move(bytes));
}

double ByteStreamRng::next_xi()
{
    if (bytes_.size() - cursor_ < 2) {
        throw ExhaustedStream("random byte stream exhausted after " + std::to_string(cursor_ / 2) +
                              " draws");
    }
    const unsigned b0 = bytes_[cursor_];
    const unsigned b1 = bytes_[cursor_ + 1];
    cursor_ += 2;
    return static_cast<double>(b0 + 256U * b1) / 65535.0;
}

void ByteStreamRng::require_draws(std::size_t draws) const
{
    if (remaining_draws() < draws) {
        throw ExhaustedStream("random byte stream has " + std::to_string(remaining_draws()) +
                              " draws left, experiment needs up to " + std::to_string(draws));
    }
}

std::vector<std::uint8_t> fixture_bytes(std::size_t length)
{
    std::vector<std::uint8_t> out(length);
    const std::size_t prefix = std::min<std::size_t>(length, std::size(kFixturePrefix));
    std::copy_n(kFixturePrefix, prefix, out.begin());
    std::uint64_t state = 1;
    for (std::size_t i = prefix; i < length; ++i) {
        state = 6364136223846793005ULL * state + 1442695040888963407ULL;
        out[i] = static_cast<std::uint8_t>(state >> 56);
    }
    return out;
}

std::filesystem::path default_fixture_path()
{
    return std::filesystem::path(HOMLAB_DATA_DIR) / "random_bytes.bin";
}

} // namespace homlab
