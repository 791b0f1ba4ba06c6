#include "tfch/snapshot_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tfch {

void write_snapshot(const Field& field, const SnapshotMeta& meta,
                    const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw SnapshotError("cannot open snapshot for writing: " + path.string());
    const Grid& g = field.grid();
    char header[256];
    std::snprintf(header, sizeof(header), "TFCH1 %d %d %.17g %.17g %.17g %.17g %" PRIu64 "\n",
                  g.nx, g.ny, g.lx, g.ly, meta.time, meta.alpha, meta.seed);
    out << header;
    out.write(reinterpret_cast<const char*>(field.values().data()),
              static_cast<std::streamsize>(field.size() * sizeof(double)));
    if (!out)
        throw SnapshotError("snapshot write failed: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SnapshotError("cannot open snapshot: " + path.string());
    std::string header;
    if (!std::getline(in, header) || header.size() > 255)
        throw SnapshotError("malformed snapshot header: " + path.string());

    std::istringstream hs(header);
    std::string version;
    Grid grid;
    SnapshotMeta meta;
    std::string extra;
    if (!(hs >> version))
        throw SnapshotError("malformed snapshot header: " + path.string());
    if (version != "TFCH1")
        throw SnapshotError("unsupported snapshot version '" + version + "': " + path.string());
    if (!(hs >> grid.nx >> grid.ny >> grid.lx >> grid.ly >> meta.time >> meta.alpha >> meta.seed) ||
        (hs >> extra))
        throw SnapshotError("malformed snapshot header: " + path.string());
    if (grid.nx <= 0 || grid.ny <= 0 ||
        static_cast<long long>(grid.nx) * grid.ny > (1LL << 30))
        throw SnapshotError("snapshot dimensions out of range: " + path.string());
    grid.validate();

    Field field(grid);
    const std::streamsize bytes = static_cast<std::streamsize>(field.size() * sizeof(double));
    in.read(reinterpret_cast<char*>(field.values().data()), bytes);
    if (in.gcount() != bytes)
        throw SnapshotError("snapshot payload truncated: " + path.string());
    char probe;
    if (in.read(&probe, 1), in.gcount() != 0)
        throw SnapshotError("snapshot has trailing bytes: " + path.string());
    return {std::move(field), meta};
}

} // namespace tfch
