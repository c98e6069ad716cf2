#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gg/semantic_map.hpp"

namespace gg::test {

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(GG_DATA_DIR) / rel;
}

inline BoundingBox box(double x0, double y0, double z0, double x1, double y1, double z1) {
  return {{x0, y0, z0}, {x1, y1, z1}};
}

inline Item item_at(int id, std::string label, const BoundingBox& b) {
  return {id, std::move(label), b.centroid(), b};
}

/// n rooms laid out along x, each [k, k+1] x [0,1] x [0,1], one partition per
/// room with the same box.
inline std::vector<Room> strip_rooms(int n) {
  std::vector<Room> rooms;
  for (int k = 0; k < n; ++k) rooms.push_back({"r" + std::to_string(k), box(k, 0, 0, k + 1, 1, 1)});
  return rooms;
}

inline std::vector<Partition> strip_partitions(int n) {
  std::vector<Partition> parts;
  for (int k = 0; k < n; ++k)
    parts.push_back({k, "p" + std::to_string(k), box(k, 0, 0, k + 1, 1, 1), static_cast<std::size_t>(k)});
  return parts;
}

/// Strip map with one small item per (label, room) pair.
inline SemanticMap strip_map(int n, const std::vector<std::pair<std::string, int>>& items) {
  std::vector<Item> out;
  int id = 1;
  for (const auto& [label, room] : items) {
    const double x = room + 0.05 + 0.008 * (id % 100);
    out.push_back(item_at(id++, label, box(x, 0.4, 0.4, x + 0.1, 0.5, 0.5)));
  }
  return SemanticMap(strip_rooms(n), std::move(out), strip_partitions(n));
}

}  // namespace gg::test
