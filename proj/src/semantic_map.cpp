#include "gg/semantic_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gg/errors.hpp"
#include "json.hpp"

namespace gg {

using nlohmann::json;

bool BoundingBox::valid() const {
  for (int k = 0; k < 3; ++k) {
    if (!(min_corner[k] <= max_corner[k])) return false;
  }
  return true;
}

double BoundingBox::volume() const {
  double v = 1.0;
  for (int k = 0; k < 3; ++k) v *= std::max(0.0, max_corner[k] - min_corner[k]);
  return v;
}

Vec3 BoundingBox::centroid() const {
  Vec3 c;
  for (int k = 0; k < 3; ++k) c[k] = 0.5 * (min_corner[k] + max_corner[k]);
  return c;
}

bool BoundingBox::contains(const Vec3& p) const {
  for (int k = 0; k < 3; ++k) {
    if (p[k] < min_corner[k] || p[k] > max_corner[k]) return false;
  }
  return true;
}

double overlap_volume(const BoundingBox& a, const BoundingBox& b) {
  double v = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double lo = std::max(a.min_corner[k], b.min_corner[k]);
    const double hi = std::min(a.max_corner[k], b.max_corner[k]);
    if (hi <= lo) return 0.0;
    v *= hi - lo;
  }
  return v;
}

namespace {

double squared_distance(const Vec3& a, const Vec3& b) {
  double d = 0.0;
  for (int k = 0; k < 3; ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
  return d;
}

// Index into `partitions` chosen for one item.
std::size_t best_partition(const Item& item,
                           const std::vector<Partition>& partitions) {
  std::size_t best = partitions.size();
  double best_overlap = 0.0;
  for (std::size_t k = 0; k < partitions.size(); ++k) {
    const double v = overlap_volume(item.bbox, partitions[k].bbox);
    if (v <= 0.0) continue;
    if (best == partitions.size() || v > best_overlap ||
        (v == best_overlap && partitions[k].id < partitions[best].id)) {
      best = k;
      best_overlap = v;
    }
  }
  if (best != partitions.size()) return best;

  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < partitions.size(); ++k) {
    const double d = squared_distance(item.position, partitions[k].bbox.centroid());
    if (best == partitions.size() || d < best_dist ||
        (d == best_dist && partitions[k].id < partitions[best].id)) {
      best = k;
      best_dist = d;
    }
  }
  return best;
}

}  // namespace

SemanticMap::SemanticMap(std::vector<Room> rooms, std::vector<Item> items,
                         std::vector<Partition> partitions)
    : rooms_(std::move(rooms)),
      items_(std::move(items)),
      partitions_(std::move(partitions)) {
  if (rooms_.empty()) throw ValidationError("map has no rooms");
  for (const auto& room : rooms_) {
    if (!room.bbox.valid())
      throw ValidationError("room '" + room.name + "' has an inverted bounding box");
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    const std::string who = "item " + std::to_string(it.id) + " ('" + it.label + "')";
    if (it.label.empty()) throw ValidationError(who + " has an empty label");
    if (!it.bbox.valid()) throw ValidationError(who + " has an inverted bounding box");
    if (!it.bbox.contains(it.position))
      throw ValidationError(who + " position lies outside its bounding box");
    if (!item_index_.emplace(it.id, i).second)
      throw ValidationError("duplicate item id " + std::to_string(it.id));
  }
  for (std::size_t k = 0; k < partitions_.size(); ++k) {
    const Partition& p = partitions_[k];
    const std::string who = "partition " + std::to_string(p.id) + " ('" + p.name + "')";
    if (!p.bbox.valid()) throw ValidationError(who + " has an inverted bounding box");
    if (p.room_index >= rooms_.size())
      throw ValidationError(who + " has room_index " + std::to_string(p.room_index) +
                            " but the map has " + std::to_string(rooms_.size()) +
                            " rooms");
    if (!partition_index_.emplace(p.id, k).second)
      throw ValidationError("duplicate partition id " + std::to_string(p.id));
  }
  if (!partitions_.empty()) {
    item_partition_.reserve(items_.size());
    for (const auto& it : items_)
      item_partition_.push_back(partitions_[best_partition(it, partitions_)].id);
  }
}

const Item& SemanticMap::item(int item_id) const {
  auto found = item_index_.find(item_id);
  if (found == item_index_.end())
    throw ValidationError("unknown item id " + std::to_string(item_id));
  return items_[found->second];
}

const Partition& SemanticMap::partition(int partition_id) const {
  auto found = partition_index_.find(partition_id);
  if (found == partition_index_.end())
    throw ValidationError("unknown partition id " + std::to_string(partition_id));
  return partitions_[found->second];
}

int SemanticMap::partition_of_item(int item_id) const {
  auto found = item_index_.find(item_id);
  if (found == item_index_.end())
    throw ValidationError("unknown item id " + std::to_string(item_id));
  if (item_partition_.empty()) throw ValidationError("map has no partitions");
  return item_partition_[found->second];
}

std::size_t SemanticMap::room_of_item(int item_id) const {
  return partition(partition_of_item(item_id)).room_index;
}

std::map<int, int> assign_items_to_partitions(const SemanticMap& map) {
  if (map.partitions().empty())
    throw ValidationError("cannot assign items: map has no partitions");
  std::map<int, int> out;
  for (const auto& it : map.items())
    out[it.id] = map.partitions()[best_partition(it, map.partitions())].id;
  return out;
}

std::map<std::string, std::size_t> label_multiplicities(const SemanticMap& map) {
  std::map<std::string, std::size_t> counts;
  for (const auto& it : map.items()) ++counts[it.label];
  return counts;
}

// ---------------------------------------------------------------------------
// JSON loading

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ParseError(where + ": unknown key '" + it.key() + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto found = obj.find(key);
  if (found == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *found;
}

// 2D coordinates are lifted into a unit-height slab.
Vec3 read_point(const json& j, const std::string& where, double z_if_2d) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3))
    throw ParseError(where + ": expected a 2- or 3-element coordinate array");
  Vec3 v{0.0, 0.0, z_if_2d};
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw ParseError(where + ": coordinates must be numbers");
    v[k] = j[k].get<double>();
  }
  return v;
}

BoundingBox read_box(const json& obj, const std::string& where) {
  return {read_point(require(obj, "min", where), where + ".min", 0.0),
          read_point(require(obj, "max", where), where + ".max", 1.0)};
}

template <typename T>
T read_scalar(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": key '" + key + "' has the wrong type");
  }
}

}  // namespace

SemanticMap parse_map(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed map JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("map document must be a JSON object");
  reject_unknown_keys(doc, {"rooms", "items", "partitions"}, "map");

  std::vector<Room> rooms;
  for (const auto& r : require(doc, "rooms", "map")) {
    const std::string where = "rooms[" + std::to_string(rooms.size()) + "]";
    reject_unknown_keys(r, {"name", "min", "max"}, where);
    rooms.push_back({read_scalar<std::string>(r, "name", where), read_box(r, where)});
  }

  std::vector<Item> items;
  if (doc.contains("items")) {
    for (const auto& i : doc["items"]) {
      const std::string where = "items[" + std::to_string(items.size()) + "]";
      reject_unknown_keys(i, {"id", "label", "position", "min", "max"}, where);
      Item item;
      item.id = read_scalar<int>(i, "id", where);
      item.label = read_scalar<std::string>(i, "label", where);
      item.position = read_point(require(i, "position", where), where + ".position", 0.5);
      item.bbox = read_box(i, where);
      items.push_back(std::move(item));
    }
  }

  std::vector<Partition> partitions;
  if (doc.contains("partitions")) {
    for (const auto& p : doc["partitions"]) {
      const std::string where = "partitions[" + std::to_string(partitions.size()) + "]";
      reject_unknown_keys(p, {"id", "name", "room_index", "min", "max"}, where);
      Partition part;
      part.id = read_scalar<int>(p, "id", where);
      part.name = read_scalar<std::string>(p, "name", where);
      const long long room_index = read_scalar<long long>(p, "room_index", where);
      if (room_index < 0) throw ValidationError(where + ": negative room_index");
      part.room_index = static_cast<std::size_t>(room_index);
      part.bbox = read_box(p, where);
      partitions.push_back(std::move(part));
    }
  }

  return SemanticMap(std::move(rooms), std::move(items), std::move(partitions));
}

SemanticMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open map file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_map(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace gg
