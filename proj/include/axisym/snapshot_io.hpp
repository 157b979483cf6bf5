#pragma once

#include <string>

#include "axisym/field.hpp"

namespace axisym {

// Versioned little-endian field snapshot:
//   magic "AXSNAP", u16 version, grid spec, time, sup0, payload, crc32.
// Round trips are bit exact. Readers reject wrong magic/version/checksum,
// each with a distinct message.

void write_snapshot(const ScalarFieldRZ& field, const std::string& path);
ScalarFieldRZ read_snapshot(const std::string& path);

/// CSV dump (i, j, r, z, w) of a snapshot, for plotting.
void snapshot_to_csv(const ScalarFieldRZ& field, const std::string& csv_path);

std::uint32_t crc32(const void* data, std::size_t n, std::uint32_t seed = 0);

} // namespace axisym
