// Regenerates data/random_bytes.bin.
#include "homlab/byte_rng.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    const char* path = argc > 1 ? argv[1] : "random_bytes.bin";
    std::size_t length = homlab::kFixtureLength;
    if (argc > 2) {
        length = std::strtoull(argv[2], nullptr, 10);
    }
    const auto bytes = homlab::fixture_bytes(length);
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        std::cerr << "cannot write " << path << '\n';
        return 1;
    }
    std::cout << "wrote " << bytes.size() << " bytes to " << path << '\n';
    return 0;
}
