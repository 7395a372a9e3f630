#include "fso/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "fso/errors.hpp"

namespace fso {

namespace {

constexpr char kMagic[4] = {'F', 'O', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

void write_header(std::ofstream& f, const Grid& g) {
    f.write(kMagic, 4);
    const std::uint32_t ver = kVersion, d = static_cast<std::uint32_t>(g.dim),
                        n = static_cast<std::uint32_t>(g.n);
    f.write(reinterpret_cast<const char*>(&ver), 4);
    f.write(reinterpret_cast<const char*>(&d), 4);
    f.write(reinterpret_cast<const char*>(&n), 4);
    f.write(reinterpret_cast<const char*>(&g.length), 8);
}

Grid read_header(std::ifstream& f, const std::string& path) {
    char magic[4];
    std::uint32_t ver = 0, d = 0, n = 0;
    double length = 0.0;
    f.read(magic, 4);
    f.read(reinterpret_cast<char*>(&ver), 4);
    f.read(reinterpret_cast<char*>(&d), 4);
    f.read(reinterpret_cast<char*>(&n), 4);
    f.read(reinterpret_cast<char*>(&length), 8);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw config_error("field file '" + path + "': bad magic");
    if (ver != kVersion) throw config_error("field file '" + path + "': unsupported version");
    return Grid(static_cast<int>(d), n, length);
}

void write_samples(std::ofstream& f, const std::vector<double>& v) {
    f.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
}

void read_samples(std::ifstream& f, std::vector<double>& v, const std::string& path) {
    f.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
    if (!f) throw config_error("field file '" + path + "': truncated sample block");
}

} // namespace

void write_field(const std::string& path, const GridField& u) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "' for writing");
    write_header(f, u.grid);
    write_samples(f, u.v);
}

void write_field(const std::string& path, const VectorGridField& V) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "' for writing");
    write_header(f, V.grid);
    for (const auto& c : V.comp) write_samples(f, c.v);
}

GridField read_scalar_field(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "'");
    const Grid g = read_header(f, path);
    GridField u(g);
    read_samples(f, u.v, path);
    return u;
}

VectorGridField read_vector_field(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "'");
    const Grid g = read_header(f, path);
    VectorGridField V(g);
    for (auto& c : V.comp) read_samples(f, c.v, path);
    return V;
}

} // namespace fso
