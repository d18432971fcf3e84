#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace homlab {

/// Replays a sequence of unit-interval numbers from a byte file.
///
/// Draw i consumes the bytes (b0, b1) at positions 2i-2 and 2i-1 and yields
/// (b0 + 256*b1) / 65535. The cursor only moves forward; re-opening the same
/// file reproduces the same sequence.
class ByteStreamRng {
public:
    explicit ByteStreamRng(std::vector<std::uint8_t> bytes);

    static ByteStreamRng from_file(const std::filesystem::path& path);

    double next_xi();

    std::size_t cursor() const noexcept { return cursor_; }
    std::size_t remaining_draws() const noexcept { return (bytes_.size() - cursor_) / 2; }
    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

    /// Throws ExhaustedStream unless at least `draws` more draws are available.
    void require_draws(std::size_t draws) const;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t cursor_ = 0;
};

/// Byte pairs that open the shipped fixture file.
inline constexpr std::uint8_t kFixturePrefix[10] = {34, 178, 52, 184, 220, 178, 237, 13, 19, 247};

/// Default fixture length in bytes.
inline constexpr std::size_t kFixtureLength = 262144;

/// Content of the shipped fixture: the ten prefix bytes followed by the top
/// byte of successive states of the 64-bit LCG
///   s <- 6364136223846793005 * s + 1442695040888963407  (mod 2^64), s0 = 1.
std::vector<std::uint8_t> fixture_bytes(std::size_t length = kFixtureLength);

/// Path of the fixture shipped in the source tree.
std::filesystem::path default_fixture_path();

} // namespace homlab
