#include "homlab/byte_rng.hpp"
#include "homlab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iterator>

using namespace homlab;

TEST_CASE("first byte pairs give the integer ratios")
{
    ByteStreamRng rng(std::vector<std::uint8_t>(std::begin(kFixturePrefix), std::end(kFixturePrefix)));
    const int expected[5] = {34 + 256 * 178, 52 + 256 * 184, 220 + 256 * 178, 237 + 256 * 13,
                             19 + 256 * 247};
    for (int e : expected) {
        const double xi = rng.next_xi();
        CHECK(xi == static_cast<double>(e) / 65535.0);
    }
    CHECK(expected[0] == 45602);
    CHECK(expected[1] == 47156);
    CHECK(rng.remaining_draws() == 0);
}

TEST_CASE("range endpoints")
{
    ByteStreamRng rng({0, 0, 255, 255});
    CHECK(rng.next_xi() == 0.0);
    CHECK(rng.next_xi() == 1.0);
}

TEST_CASE("cursor advances two bytes per draw")
{
    ByteStreamRng rng({1, 2, 3, 4, 5});
    CHECK(rng.cursor() == 0);
    rng.next_xi();
    CHECK(rng.cursor() == 2);
    CHECK(rng.remaining_draws() == 1);
    rng.next_xi();
    CHECK(rng.cursor() == 4);
    // one odd byte left over is not a draw
    CHECK_THROWS_AS(rng.next_xi(), ExhaustedStream);
}

TEST_CASE("require_draws checks the budget up front")
{
    ByteStreamRng rng(std::vector<std::uint8_t>(20, 7));
    CHECK_NOTHROW(rng.require_draws(10));
    CHECK_THROWS_AS(rng.require_draws(11), ExhaustedStream);
}

TEST_CASE("every draw is a multiple of 1/65535 in [0, 1]")
{
    auto rng = ByteStreamRng(fixture_bytes(4096));
    while (rng.remaining_draws() > 0) {
        const double xi = rng.next_xi();
        REQUIRE(xi >= 0.0);
        REQUIRE(xi <= 1.0);
        const double scaled = xi * 65535.0;
        REQUIRE(scaled == std::round(scaled));
    }
}

TEST_CASE("identical bytes replay identical sequences")
{
    auto a = ByteStreamRng(fixture_bytes(1000));
    auto b = ByteStreamRng(fixture_bytes(1000));
    for (int i = 0; i < 500; ++i) {
        REQUIRE(a.next_xi() == b.next_xi());
    }
}

TEST_CASE("fixture filler is the documented LCG")
{
    const auto bytes = fixture_bytes(16);
    std::uint64_t s = 1;
    for (std::size_t i = 10; i < 16; ++i) {
        s = 6364136223846793005ULL * s + 1442695040888963407ULL;
        CHECK(bytes[i] == static_cast<std::uint8_t>(s >> 56));
    }
}

TEST_CASE("shipped fixture file matches the generator")
{
    const auto path = default_fixture_path();
    REQUIRE(std::filesystem::exists(path));
    std::ifstream in(path, std::ios::binary);
    const std::vector<std::uint8_t> file((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
    CHECK(file.size() == kFixtureLength);
    CHECK(file == fixture_bytes());
    const auto rng = ByteStreamRng::from_file(path);
    CHECK(rng.remaining_draws() == kFixtureLength / 2);
}

TEST_CASE("missing file is reported")
{
    CHECK_THROWS_AS(ByteStreamRng::from_file("/nonexistent/bytes.bin"), Error);
}
