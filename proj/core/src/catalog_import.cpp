#include "profbench/catalog_import.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <utility>

#include "profbench/csv.hpp"
#include "profbench/errors.hpp"
#include "python_literal.hpp"

namespace profbench {
namespace {

struct MovieRecord {
  std::string title;
  double popularity = 0.0;
  std::vector<std::pair<std::string, AttributeType>> features;
};

struct FeatureInfo {
  AttributeType type;
  std::string label;
};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string clean_label(std::string_view raw) {
  std::string out;
  for (char ch : raw) {
    if (ch == '|') out.push_back('/');
    else if (ch == '\n' || ch == '\r' || ch == '\t') out.push_back(' ');
    else out.push_back(ch);
  }
  return out;
}

nlohmann::json parse_list(const std::string& text) {
  if (text.empty()) return nlohmann::json::array();
  try {
    auto value = detail::parse_python_literal(text);
    return value.is_array() ? value : nlohmann::json::array();
  } catch (const detail::PythonLiteralError&) {
    return nlohmann::json::array();
  }
}

std::string json_id(const nlohmann::json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_string()) return v.get<std::string>();
  return {};
}

class FeatureTable {
 public:
  void add(MovieRecord& movie, const std::string& id, AttributeType type, const std::string& name) {
    if (id.empty()) return;
    auto label = clean_label(name);
    if (label.empty()) label = id;
    features_.try_emplace(id, FeatureInfo{type, std::move(label)});
    movie.features.emplace_back(id, type);
  }

  /// Appends " [id]" to labels shared by several ids of one type.
  std::size_t disambiguate() {
    std::map<std::pair<AttributeType, std::string>, std::vector<std::string>> by_label;
    for (const auto& [id, info] : features_) by_label[{info.type, info.label}].push_back(id);
    std::size_t relabelled = 0;
    for (const auto& [key, ids] : by_label) {
      if (ids.size() < 2) continue;
      for (const auto& id : ids) {
        features_[id].label += " [" + id + "]";
        ++relabelled;
      }
    }
    return relabelled;
  }

  const FeatureInfo& at(const std::string& id) const { return features_.at(id); }

 private:
  std::map<std::string, FeatureInfo> features_;
};

void add_named_list(FeatureTable& table, MovieRecord& movie, const std::string& text, const char* prefix,
                    const char* id_key, AttributeType type) {
  for (const auto& entry : parse_list(text)) {
    if (!entry.is_object() || !entry.contains(id_key)) continue;
    const auto raw_id = json_id(entry[id_key]);
    if (raw_id.empty()) continue;
    const auto name = entry.contains("name") && entry["name"].is_string() ? entry["name"].get<std::string>() : raw_id;
    table.add(movie, prefix + raw_id, type, name);
  }
}

const std::string& column(const csv::Reader& reader, const csv::Header& header,
                          const std::vector<std::string>& row, const char* name) {
  static const std::string kEmpty;
  const auto index = header.index(name);
  if (!index) throw LoadError(reader.source(), 1, name, "missing header column");
  if (*index >= row.size()) return kEmpty;
  return row[*index];
}

}  // namespace

Catalog import_movies_dataset(std::istream& movies, std::istream* credits, ImportStats* stats) {
  ImportStats local;
  ImportStats& st = stats ? *stats : local;
  st = {};

  FeatureTable table;
  std::map<std::string, MovieRecord> records;

  csv::Reader reader(movies, "movies_metadata");
  auto header_row = reader.next();
  if (!header_row) throw LoadError("movies_metadata", 1, "-", "empty movies file");
  const csv::Header header(*header_row);
  for (const char* required : {"id", "title", "genres"}) {
    if (!header.has(required)) throw LoadError("movies_metadata", 1, required, "missing header column");
  }

  while (auto row = reader.next()) {
    ++st.movies_read;
    const auto& id = column(reader, header, *row, "id");
    if (row->size() != header.size() || !all_digits(id)) {
      ++st.movies_skipped;
      continue;
    }
    if (records.count(id)) {
      ++st.duplicate_movies;
      continue;
    }
    MovieRecord movie;
    movie.title = clean_label(column(reader, header, *row, "title"));
    if (header.has("popularity")) {
      const auto& pop = column(reader, header, *row, "popularity");
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(pop.data(), pop.data() + pop.size(), value);
      if (ec == std::errc{} && ptr == pop.data() + pop.size()) movie.popularity = value;
    }
    add_named_list(table, movie, column(reader, header, *row, "genres"), "g", "id", AttributeType::genre);
    if (header.has("production_companies")) {
      add_named_list(table, movie, column(reader, header, *row, "production_companies"), "pc", "id",
                     AttributeType::production_company);
    }
    if (header.has("production_countries")) {
      add_named_list(table, movie, column(reader, header, *row, "production_countries"), "pn", "iso_3166_1",
                     AttributeType::production_country);
    }
    if (header.has("release_date")) {
      const auto& date = column(reader, header, *row, "release_date");
      if (date.size() >= 4 && all_digits(std::string_view(date).substr(0, 4))) {
        const auto year = date.substr(0, 4);
        table.add(movie, "y" + year, AttributeType::release_year, year);
      }
    }
    records.emplace(id, std::move(movie));
  }

  if (credits) {
    csv::Reader credit_reader(*credits, "credits");
    auto credit_header_row = credit_reader.next();
    if (!credit_header_row) throw LoadError("credits", 1, "-", "empty credits file");
    const csv::Header credit_header(*credit_header_row);
    while (auto row = credit_reader.next()) {
      const auto& id = column(credit_reader, credit_header, *row, "id");
      auto it = records.find(id);
      if (it == records.end()) continue;
      ++st.credits_matched;
      MovieRecord& movie = it->second;
      add_named_list(table, movie, column(credit_reader, credit_header, *row, "cast"), "a", "id",
                     AttributeType::actor);
      for (const auto& member : parse_list(column(credit_reader, credit_header, *row, "crew"))) {
        if (!member.is_object() || !member.contains("id")) continue;
        const auto raw_id = json_id(member["id"]);
        const auto name = member.value("name", raw_id);
        const auto job = member.value("job", std::string{});
        const auto department = member.value("department", std::string{});
        if (job == "Director") table.add(movie, "d" + raw_id, AttributeType::director, name);
        if (job == "Producer") table.add(movie, "p" + raw_id, AttributeType::producer, name);
        if (job == "Screenplay" || job == "Writer") table.add(movie, "w" + raw_id, AttributeType::screenwriter, name);
        if (department == "Sound") table.add(movie, "s" + raw_id, AttributeType::sound_crew, name);
      }
    }
  }

  st.relabelled_features = table.disambiguate();

  Catalog::Builder builder;
  for (auto& [id, movie] : records) {
    std::vector<FeatureRef> refs;
    refs.reserve(movie.features.size());
    for (const auto& [fid, type] : movie.features) refs.push_back({fid, type, table.at(fid).label});
    builder.add_item(id, std::move(movie.title), movie.popularity, std::move(refs));
  }
  return std::move(builder).build();
}

Catalog import_movies_dataset(const std::filesystem::path& movies, const std::filesystem::path& credits,
                              ImportStats* stats) {
  std::ifstream movies_in(movies, std::ios::binary);
  if (!movies_in) throw Error("cannot open '" + movies.string() + "'");
  if (credits.empty()) return import_movies_dataset(movies_in, nullptr, stats);
  std::ifstream credits_in(credits, std::ios::binary);
  if (!credits_in) throw Error("cannot open '" + credits.string() + "'");
  return import_movies_dataset(movies_in, &credits_in, stats);
}

}  // namespace profbench
