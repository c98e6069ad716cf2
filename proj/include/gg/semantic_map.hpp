#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gg {

using Vec3 = std::array<double, 3>;

/// Axis-aligned box in map coordinates (meters).
struct BoundingBox {
  Vec3 min_corner{};
  Vec3 max_corner{};

  bool valid() const;
  double volume() const;
  Vec3 centroid() const;
  bool contains(const Vec3& p) const;
};

/// Volume of the intersection of two boxes; 0 when they do not intersect.
double overlap_volume(const BoundingBox& a, const BoundingBox& b);

struct Room {
  std::string name;
  BoundingBox bbox;
};

struct Item {
  int id = 0;
  std::string label;
  Vec3 position{};
  BoundingBox bbox;
};

struct Partition {
  int id = 0;
  std::string name;
  BoundingBox bbox;
  std::size_t room_index = 0;
};

/// Closed-vocabulary semantic map: rooms, labelled item instances and the
/// spatial partitions that item scores are aggregated over.
///
/// The room list order defines the index space of the one-hot occupancy
/// vectors used by the simulator. The map is immutable once constructed and
/// may be shared read-only between concurrent runs. Item-to-partition
/// assignment is computed once at construction when partitions exist.
class SemanticMap {
 public:
  /// Throws ValidationError naming the offending entity when an invariant
  /// does not hold.
  SemanticMap(std::vector<Room> rooms, std::vector<Item> items,
              std::vector<Partition> partitions);

  const std::vector<Room>& rooms() const { return rooms_; }
  const std::vector<Item>& items() const { return items_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  std::size_t room_count() const { return rooms_.size(); }

  const Item& item(int item_id) const;
  const Partition& partition(int partition_id) const;

  /// Partition id assigned to each item, parallel to items().
  const std::vector<int>& item_partitions() const { return item_partition_; }
  int partition_of_item(int item_id) const;
  std::size_t room_of_item(int item_id) const;

 private:
  std::vector<Room> rooms_;
  std::vector<Item> items_;
  std::vector<Partition> partitions_;
  std::map<int, std::size_t> item_index_;
  std::map<int, std::size_t> partition_index_;
  std::vector<int> item_partition_;
};

SemanticMap parse_map(std::string_view json_text);
SemanticMap load_map(const std::filesystem::path& path);

/// Maps every item to the partition its box overlaps most. Ties go to the
/// lowest partition id. Items overlapping no partition go to the partition
/// whose centroid is nearest the item position (ties again by lowest id).
/// Requires at least one partition.
std::map<int, int> assign_items_to_partitions(const SemanticMap& map);

std::map<std::string, std::size_t> label_multiplicities(const SemanticMap& map);

}  // namespace gg
