#include "bsq/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "bsq/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian");

namespace bsq {

using nlohmann::json;

void write_snapshot(const std::string& path, const SnapshotHeader& header,
                    const std::vector<const RealGrid*>& fields) {
  if (fields.size() != header.field_order.size()) {
    throw Error("snapshot field count does not match field_order");
  }
  const int n = header.n;
  for (const RealGrid* f : fields) {
    if (f->rows() != n || f->cols() != n) {
      throw Error("snapshot field does not match header grid size");
    }
  }

  json h = {{"N", n},         {"alpha", header.alpha}, {"beta", header.beta},
            {"nu", header.nu}, {"kappa", header.kappa}, {"t", header.t},
            {"field_order", header.field_order}};

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << h.dump() << "\n";
    std::vector<double> row(static_cast<std::size_t>(n));
    for (const RealGrid* f : fields) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = (*f)(i, j);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(sizeof(double) * row.size()));
      }
    }
    if (!out) throw Error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error("cannot rename " + tmp + " to " + path);
  }
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("snapshot header missing in " + path);

  json h = json::parse(line, nullptr, false);
  if (h.is_discarded()) throw Error("snapshot header is not valid JSON");

  Snapshot snap;
  try {
    snap.header.n = h.at("N").get<int>();
    snap.header.alpha = h.at("alpha").get<Real>();
    snap.header.beta = h.at("beta").get<Real>();
    snap.header.nu = h.at("nu").get<Real>();
    snap.header.kappa = h.at("kappa").get<Real>();
    snap.header.t = h.at("t").get<Real>();
    snap.header.field_order =
        h.at("field_order").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(std::string("snapshot header malformed: ") + e.what());
  }

  const int n = snap.header.n;
  if (n < 8 || n % 2 != 0) throw Error("snapshot grid size invalid");
  std::vector<double> row(static_cast<std::size_t>(n));
  for (std::size_t f = 0; f < snap.header.field_order.size(); ++f) {
    RealGrid grid(n, n);
    for (int i = 0; i < n; ++i) {
      in.read(reinterpret_cast<char*>(row.data()),
              static_cast<std::streamsize>(sizeof(double) * row.size()));
      if (!in) throw Error("snapshot truncated in " + path);
      for (int j = 0; j < n; ++j) grid(i, j) = row[static_cast<std::size_t>(j)];
    }
    snap.fields.push_back(std::move(grid));
  }
  return snap;
}

}  // namespace bsq
