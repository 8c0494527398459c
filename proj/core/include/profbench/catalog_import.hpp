#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "profbench/catalog.hpp"

namespace profbench {

struct ImportStats {
  std::size_t movies_read = 0;
  std::size_t movies_skipped = 0;
  std::size_t duplicate_movies = 0;
  std::size_t credits_matched = 0;
  std::size_t relabelled_features = 0;
};

/// Converts a "The Movies Dataset"-style export (movies_metadata.csv plus an
/// optional credits.csv whose list columns hold Python literals) into a
/// catalog. Rows with a non-numeric id are skipped; repeated ids keep the
/// first row. People sharing a display name within one attribute type get
/// their id appended to the label so labels stay unique.
Catalog import_movies_dataset(std::istream& movies, std::istream* credits, ImportStats* stats = nullptr);

Catalog import_movies_dataset(const std::filesystem::path& movies,
                              const std::filesystem::path& credits, ImportStats* stats = nullptr);

}  // namespace profbench
