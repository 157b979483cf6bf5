#pragma once

#include <string>
#include <vector>

#include "axisym/config.hpp"

namespace axisym {

/// On-disk layout of one run:
///   <dir>/manifest.json     config echo, file list with content hashes, status
///   <dir>/diagnostics.csv   one row per diagnostics cadence
///   <dir>/profiles.csv      u^z extrema ladder per cadence (a/b raw material)
///   <dir>/particles.csv     tracked particle positions per cadence
///   <dir>/snap_######.axsnap  field snapshots
struct RunRecord {
    std::string dir;
    SimConfig config;
    std::vector<std::string> snapshot_files;
    std::string diagnostics_csv;
    std::string profiles_csv;
    std::string particles_csv;
    bool complete = false;
    bool under_resolved = false;
    int steps = 0;
    double t_final = 0.0;

    void write_manifest() const;
};

/// FNV-1a 64-bit content hash, hex encoded.
std::string content_hash_hex(const std::string& path);

/// Reads a manifest back (paths resolved relative to dir).
RunRecord load_run_record(const std::string& dir);

} // namespace axisym
