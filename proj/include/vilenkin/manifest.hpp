#pragma once

// JSON manifests for atomic decompositions. Only coefficients and the recipe
// for each atom are stored; atoms are rebuilt on load.

#include <filesystem>
#include <string>
#include <string_view>

#include "vilenkin/constructions.hpp"

namespace vilenkin {

std::string to_manifest(const AtomicDecomposition& d);
AtomicDecomposition from_manifest(std::string_view text);

void save_manifest(const std::filesystem::path& path, const AtomicDecomposition& d);
AtomicDecomposition load_manifest(const std::filesystem::path& path);

}  // namespace vilenkin
