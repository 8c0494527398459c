#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profbench/attribute.hpp"

namespace profbench {

struct Feature {
  std::string id;
  AttributeType type = AttributeType::genre;
  std::string label;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct Item {
  std::string id;
  std::string title;
  /// Optional popularity score; only used to order item search results and
  /// consistency-test decoys.
  double popularity = 0.0;
  /// Sorted, duplicate-free feature ids.
  std::vector<std::string> features;

  friend bool operator==(const Item&, const Item&) = default;
};

/// Feature reference as written in a catalog row. A bare reference carries no
/// label and must be defined with a label by some other row.
struct FeatureRef {
  std::string id;
  AttributeType type = AttributeType::genre;
  std::optional<std::string> label;
};

/// Immutable item/feature catalog with per-feature document frequency.
class Catalog {
 public:
  class Builder;

  Catalog() = default;

  const std::map<std::string, Item, std::less<>>& items() const noexcept { return items_; }
  const std::map<std::string, Feature, std::less<>>& features() const noexcept { return features_; }
  std::size_t item_count() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  const Item* find_item(std::string_view id) const;
  const Feature* find_feature(std::string_view id) const;

  /// Number of items containing the feature; throws NotFoundError.
  std::size_t document_frequency(std::string_view feature_id) const;

  /// Case-insensitive label substring search within one attribute type,
  /// ordered by (document frequency desc, feature id asc).
  std::vector<Feature> search_features(AttributeType type, std::string_view query,
                                       std::size_t limit) const;
  std::vector<Feature> popular_features(AttributeType type, std::size_t n) const;

  /// Case-insensitive title search ordered by (popularity desc, item id asc).
  std::vector<Item> search_items(std::string_view query, std::size_t limit) const;
  std::vector<Item> popular_items(std::size_t n) const;

  /// Feature ids of one type on an item, in id order.
  std::vector<std::string> item_features_of_type(const Item& item, AttributeType type) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::map<std::string, Item, std::less<>> items_;
  std::map<std::string, Feature, std::less<>> features_;
  std::map<std::string, std::size_t, std::less<>> doc_freq_;
};

/// Accumulates items and validates referential integrity on build().
class Catalog::Builder {
 public:
  void add_item(std::string id, std::string title, double popularity,
                std::vector<FeatureRef> features);

  /// Throws IntegrityError on duplicate items, conflicting feature
  /// definitions, duplicate (type, label) pairs or dangling references.
  Catalog build() &&;

 private:
  struct PendingItem {
    Item item;
    std::vector<FeatureRef> refs;
  };
  std::vector<PendingItem> pending_;
};

/// Reads the catalog format: header row with `item_id`, `title`, optional
/// `popularity`, and one column per attribute type holding
/// `feature_id:label` entries separated by `|`.
Catalog parse_catalog(std::istream& in, const std::string& source_name);
Catalog load_catalog(const std::filesystem::path& path);

void write_catalog(std::ostream& out, const Catalog& catalog);

}  // namespace profbench
