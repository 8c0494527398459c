#include "profbench/attribute.hpp"
#include "profbench/errors.hpp"

#include <utility>

namespace profbench {

std::string_view to_string(AttributeType type) {
  switch (type) {
    case AttributeType::genre: return "genre";
    case AttributeType::actor: return "actor";
    case AttributeType::director: return "director";
    case AttributeType::production_company: return "production_company";
    case AttributeType::production_country: return "production_country";
    case AttributeType::producer: return "producer";
    case AttributeType::screenwriter: return "screenwriter";
    case AttributeType::release_year: return "release_year";
    case AttributeType::sound_crew: return "sound_crew";
  }
  return "unknown";
}

std::optional<AttributeType> parse_attribute_type(std::string_view token) {
  for (auto type : kAllAttributeTypes) {
    if (to_string(type) == token) return type;
  }
  return std::nullopt;
}

std::string_view to_string(TargetKind kind) {
  return kind == TargetKind::item ? "item" : "feature";
}

std::optional<TargetKind> parse_target_kind(std::string_view token) {
  if (token == "item") return TargetKind::item;
  if (token == "feature") return TargetKind::feature;
  return std::nullopt;
}

LoadError::LoadError(std::string source, std::size_t line, std::string field,
                     const std::string& reason)
    : Error(source + ":" + std::to_string(line) + ": field '" + field + "': " + reason),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

}  // namespace profbench
