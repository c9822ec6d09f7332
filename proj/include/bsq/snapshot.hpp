#pragma once

#include <string>
#include <vector>

#include "bsq/types.hpp"

namespace bsq {

// ".bsq" container: one JSON header line, then one N x N block of
// little-endian float64 per named field, row-major physical values.
struct SnapshotHeader {
  int n = 0;
  Real alpha = 0, beta = 0, nu = 0, kappa = 0, t = 0;
  std::vector<std::string> field_order{"omega", "theta"};
};

struct Snapshot {
  SnapshotHeader header;
  std::vector<RealGrid> fields;
};

// Writes to a temporary name and renames into place.
void write_snapshot(const std::string& path, const SnapshotHeader& header,
                    const std::vector<const RealGrid*>& fields);

Snapshot read_snapshot(const std::string& path);

}  // namespace bsq
