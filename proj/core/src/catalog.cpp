#include "profbench/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <utility>

#include "profbench/csv.hpp"
#include "profbench/errors.hpp"

namespace profbench {
namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

bool contains_ci(std::string_view haystack, const std::string& needle_lower) {
  if (needle_lower.empty()) return true;
  return lowercase(haystack).find(needle_lower) != std::string::npos;
}

template <class T, class Less>
std::vector<T> take_sorted(std::vector<T> values, std::size_t limit, Less less) {
  if (limit < values.size()) {
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(limit),
                      values.end(), less);
    values.resize(limit);
  } else {
    std::sort(values.begin(), values.end(), less);
  }
  return values;
}

}  // namespace

const Item* Catalog::find_item(std::string_view id) const {
  auto it = items_.find(id);
  return it == items_.end() ? nullptr : &it->second;
}

const Feature* Catalog::find_feature(std::string_view id) const {
  auto it = features_.find(id);
  return it == features_.end() ? nullptr : &it->second;
}

std::size_t Catalog::document_frequency(std::string_view feature_id) const {
  auto it = doc_freq_.find(feature_id);
  if (it == doc_freq_.end()) {
    throw NotFoundError("unknown feature '" + std::string(feature_id) + "'");
  }
  return it->second;
}

std::vector<Feature> Catalog::search_features(AttributeType type, std::string_view query,
                                              std::size_t limit) const {
  if (limit == 0) throw std::invalid_argument("search limit must be at least 1");
  const std::string needle = lowercase(query);
  std::vector<const Feature*> matches;
  for (const auto& [id, feature] : features_) {
    if (feature.type == type && contains_ci(feature.label, needle)) matches.push_back(&feature);
  }
  auto ranked = take_sorted(std::move(matches), limit, [this](const Feature* a, const Feature* b) {
    const auto da = doc_freq_.at(a->id);
    const auto db = doc_freq_.at(b->id);
    if (da != db) return da > db;
    return a->id < b->id;
  });
  std::vector<Feature> out;
  out.reserve(ranked.size());
  for (const auto* f : ranked) out.push_back(*f);
  return out;
}

std::vector<Feature> Catalog::popular_features(AttributeType type, std::size_t n) const {
  return search_features(type, "", n);
}

std::vector<Item> Catalog::search_items(std::string_view query, std::size_t limit) const {
  if (limit == 0) throw std::invalid_argument("search limit must be at least 1");
  const std::string needle = lowercase(query);
  std::vector<const Item*> matches;
  for (const auto& [id, item] : items_) {
    if (contains_ci(item.title, needle)) matches.push_back(&item);
  }
  auto ranked = take_sorted(std::move(matches), limit, [](const Item* a, const Item* b) {
    if (a->popularity != b->popularity) return a->popularity > b->popularity;
    return a->id < b->id;
  });
  std::vector<Item> out;
  out.reserve(ranked.size());
  for (const auto* item : ranked) out.push_back(*item);
  return out;
}

std::vector<Item> Catalog::popular_items(std::size_t n) const { return search_items("", n); }

std::vector<std::string> Catalog::item_features_of_type(const Item& item, AttributeType type) const {
  std::vector<std::string> out;
  for (const auto& id : item.features) {
    if (const auto* f = find_feature(id); f && f->type == type) out.push_back(id);
  }
  return out;
}

void Catalog::Builder::add_item(std::string id, std::string title, double popularity,
                                std::vector<FeatureRef> features) {
  PendingItem pending;
  pending.item.id = std::move(id);
  pending.item.title = std::move(title);
  pending.item.popularity = popularity;
  pending.refs = std::move(features);
  pending_.push_back(std::move(pending));
}

Catalog Catalog::Builder::build() && {
  Catalog catalog;

  for (const auto& pending : pending_) {
    for (const auto& ref : pending.refs) {
      if (ref.id.find_first_of(":|") != std::string::npos) {
        throw IntegrityError("feature id '" + ref.id + "' contains ':' or '|'");
      }
      if (!ref.label) continue;
      if (ref.label->find('|') != std::string::npos) {
        throw IntegrityError("label of feature '" + ref.id + "' contains '|'");
      }
      Feature candidate{ref.id, ref.type, *ref.label};
      auto [it, inserted] = catalog.features_.emplace(ref.id, candidate);
      if (!inserted && it->second != candidate) {
        throw IntegrityError("feature '" + ref.id + "' on item '" + pending.item.id +
                             "' conflicts with an earlier definition (" +
                             std::string(to_string(it->second.type)) + ":" + it->second.label +
                             ")");
      }
    }
  }

  std::set<std::pair<AttributeType, std::string>> labels;
  for (const auto& [id, feature] : catalog.features_) {
    if (!labels.emplace(feature.type, feature.label).second) {
      throw IntegrityError("duplicate label '" + feature.label + "' for attribute type " +
                           std::string(to_string(feature.type)));
    }
  }

  for (auto& pending : pending_) {
    std::set<std::string> ids;
    for (const auto& ref : pending.refs) {
      const Feature* feature = catalog.find_feature(ref.id);
      if (feature == nullptr) {
        throw IntegrityError("dangling feature reference '" + ref.id + "' on item '" +
                             pending.item.id + "'");
      }
      if (feature->type != ref.type) {
        throw IntegrityError("feature '" + ref.id + "' on item '" + pending.item.id +
                             "' listed under " + std::string(to_string(ref.type)) +
                             " but defined as " + std::string(to_string(feature->type)));
      }
      ids.insert(ref.id);
    }
    pending.item.features.assign(ids.begin(), ids.end());
    const std::string item_id = pending.item.id;
    if (!catalog.items_.emplace(item_id, std::move(pending.item)).second) {
      throw IntegrityError("duplicate item id '" + item_id + "'");
    }
  }

  for (const auto& [id, item] : catalog.items_) {
    for (const auto& f : item.features) ++catalog.doc_freq_[f];
  }
  pending_.clear();
  return catalog;
}

Catalog parse_catalog(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in, source_name);
  auto header_row = reader.next();
  if (!header_row) throw LoadError(source_name, 1, "-", "empty catalog");
  const csv::Header header(*header_row);

  const auto id_col = header.index("item_id");
  const auto title_col = header.index("title");
  if (!id_col) throw LoadError(source_name, reader.line(), "item_id", "missing header column");
  if (!title_col) throw LoadError(source_name, reader.line(), "title", "missing header column");
  const auto popularity_col = header.index("popularity");

  std::vector<std::pair<std::size_t, AttributeType>> attribute_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto& name = header.names()[i];
    if (name == "item_id" || name == "title" || name == "popularity") continue;
    auto type = parse_attribute_type(name);
    if (!type) throw LoadError(source_name, reader.line(), name, "unknown column");
    attribute_cols.emplace_back(i, *type);
  }

  Catalog::Builder builder;
  std::size_t rows = 0;
  while (auto row = reader.next()) {
    const std::size_t line = reader.line();
    if (row->size() != header.size()) {
      throw LoadError(source_name, line, "-",
                      "expected " + std::to_string(header.size()) + " fields, got " +
                          std::to_string(row->size()));
    }
    const std::string& id = (*row)[*id_col];
    if (id.empty()) throw LoadError(source_name, line, "item_id", "empty item id");

    double popularity = 0.0;
    if (popularity_col && !(*row)[*popularity_col].empty()) {
      const auto& text = (*row)[*popularity_col];
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), popularity);
      if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw LoadError(source_name, line, "popularity", "not a number: '" + text + "'");
      }
    }

    std::vector<FeatureRef> refs;
    for (const auto& [col, type] : attribute_cols) {
      std::string_view cell = (*row)[col];
      const std::string field_name(to_string(type));
      while (!cell.empty()) {
        const auto bar = cell.find('|');
        std::string_view entry = cell.substr(0, bar);
        cell = bar == std::string_view::npos ? std::string_view{} : cell.substr(bar + 1);
        if (entry.empty()) continue;
        FeatureRef ref;
        ref.type = type;
        const auto colon = entry.find(':');
        ref.id = std::string(entry.substr(0, colon));
        if (colon != std::string_view::npos) {
          ref.label = std::string(entry.substr(colon + 1));
          if (ref.label->empty()) {
            throw LoadError(source_name, line, field_name,
                            "empty label for feature '" + ref.id + "'");
          }
        }
        if (ref.id.empty()) throw LoadError(source_name, line, field_name, "empty feature id");
        refs.push_back(std::move(ref));
      }
    }
    builder.add_item(id, (*row)[*title_col], popularity, std::move(refs));
    ++rows;
  }
  if (rows == 0) throw LoadError(source_name, reader.line() + 1, "-", "empty catalog");
  return std::move(builder).build();
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open catalog file '" + path.string() + "'");
  return parse_catalog(in, path.string());
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
  std::vector<std::string> header{"item_id", "title", "popularity"};
  for (auto type : kAllAttributeTypes) header.emplace_back(to_string(type));
  out << csv::join(header) << '\n';

  for (const auto& [id, item] : catalog.items()) {
    std::vector<std::string> fields{item.id, item.title};
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, item.popularity);
    fields.emplace_back(buf, end);
    for (auto type : kAllAttributeTypes) {
      std::string cell;
      for (const auto& fid : item.features) {
        const auto* f = catalog.find_feature(fid);
        if (f->type != type) continue;
        if (!cell.empty()) cell.push_back('|');
        cell += f->id + ":" + f->label;
      }
      fields.push_back(std::move(cell));
    }
    out << csv::join(fields) << '\n';
  }
}

}  // namespace profbench
