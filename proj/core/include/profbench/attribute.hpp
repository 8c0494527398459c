#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace profbench {

/// Category of an item feature. Every catalog feature carries exactly one.
enum class AttributeType {
  genre,
  actor,
  director,
  production_company,
  production_country,
  producer,
  screenwriter,
  release_year,
  sound_crew,
};

inline constexpr std::array<AttributeType, 9> kAllAttributeTypes = {
    AttributeType::genre,        AttributeType::actor,
    AttributeType::director,     AttributeType::production_company,
    AttributeType::production_country, AttributeType::producer,
    AttributeType::screenwriter, AttributeType::release_year,
    AttributeType::sound_crew,
};

std::string_view to_string(AttributeType type);
std::optional<AttributeType> parse_attribute_type(std::string_view token);

/// What a favourite or consistency trial points at.
enum class TargetKind { item, feature };

std::string_view to_string(TargetKind kind);
std::optional<TargetKind> parse_target_kind(std::string_view token);

}  // namespace profbench
