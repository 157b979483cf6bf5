#include "axisym/snapshot_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace axisym {

namespace {

constexpr char kMagic[6] = {'A', 'X', 'S', 'N', 'A', 'P'};
constexpr std::uint16_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts need byte swaps");

struct Header {
    char magic[6];
    std::uint16_t version;
    std::int32_t n_rho;
    std::int32_t n_beta;
    double cluster_rho;
    double cluster_beta;
    std::uint8_t symmetry;
    std::uint8_t pad[7];
    double time;
    double sup0;
};
static_assert(sizeof(Header) == 56);

} // namespace

std::uint32_t crc32(const void* data, std::size_t n, std::uint32_t seed) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = seed ^ 0xFFFFFFFFu;
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) c = table[(c ^ p[i]) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

void write_snapshot(const ScalarFieldRZ& field, const std::string& path) {
    const GridSpec& gs = field.grid().spec();
    Header h{};
    std::memcpy(h.magic, kMagic, 6);
    h.version = kVersion;
    h.n_rho = gs.n_rho;
    h.n_beta = gs.n_beta;
    h.cluster_rho = gs.cluster_rho;
    h.cluster_beta = gs.cluster_beta;
    h.symmetry = gs.symmetry == Symmetry::OddInZ ? 1 : 0;
    h.time = field.time();
    h.sup0 = field.sup0();

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_snapshot: cannot open " + path);
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    const auto& v = field.values();
    out.write(reinterpret_cast<const char*>(v.data()), sizeof(double) * v.size());
    std::uint32_t crc = crc32(&h, sizeof h);
    crc = crc32(v.data(), sizeof(double) * v.size(), crc);
    out.write(reinterpret_cast<const char*>(&crc), sizeof crc);
    if (!out) throw IoError("write_snapshot: write failed for " + path);
}

ScalarFieldRZ read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_snapshot: cannot open " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!in || std::memcmp(h.magic, kMagic, 6) != 0)
        throw IoError("read_snapshot: bad magic in " + path);
    if (h.version != kVersion)
        throw IoError("read_snapshot: unsupported snapshot version " + std::to_string(h.version) +
                      " in " + path);
    if (h.n_rho < 2 || h.n_beta < 2 || h.n_rho > 100000 || h.n_beta > 100000)
        throw IoError("read_snapshot: implausible grid size in " + path);

    const std::size_t n = static_cast<std::size_t>(h.n_rho) * h.n_beta;
    std::vector<double> values(n);
    in.read(reinterpret_cast<char*>(values.data()), sizeof(double) * n);
    std::uint32_t crc_file = 0;
    in.read(reinterpret_cast<char*>(&crc_file), sizeof crc_file);
    if (!in) throw IoError("read_snapshot: truncated file " + path);
    std::uint32_t crc = crc32(&h, sizeof h);
    crc = crc32(values.data(), sizeof(double) * n, crc);
    if (crc != crc_file) throw IoError("read_snapshot: checksum mismatch in " + path);

    GridSpec gs;
    gs.n_rho = h.n_rho;
    gs.n_beta = h.n_beta;
    gs.cluster_rho = h.cluster_rho;
    gs.cluster_beta = h.cluster_beta;
    gs.symmetry = h.symmetry ? Symmetry::OddInZ : Symmetry::None;
    ScalarFieldRZ field(make_grid(gs), std::move(values), h.time);
    field.set_sup0(h.sup0);
    return field;
}

void snapshot_to_csv(const ScalarFieldRZ& field, const std::string& csv_path) {
    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw IoError("snapshot_to_csv: cannot open " + csv_path);
    out.precision(17);
    out << "i,j,r,z,w\n";
    const PolarGrid& g = field.grid();
    for (int i = 0; i < g.n_rho(); ++i)
        for (int j = 0; j < g.n_beta(); ++j) {
            const PointRZ p = g.point(i, j);
            out << i << ',' << j << ',' << p.r << ',' << p.z << ',' << field.value(i, j) << '\n';
        }
    if (!out) throw IoError("snapshot_to_csv: write failed for " + csv_path);
}

} // namespace axisym
