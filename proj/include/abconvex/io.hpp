#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "abconvex/ext_function.hpp"

namespace abconvex::io {

// Reads a sampled function from CSV with header "x,value"; the value column
// accepts "inf". The x column must be a uniform ascending lattice (within
// 1e-9 relative spacing drift). Throws DataError on malformed input.
ExtFunction load_sampled_csv(const std::filesystem::path& path, std::string name);

void save_sampled_csv(const std::filesystem::path& path, const Grid1D& grid,
                      std::span<const ExtReal> values);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace abconvex::io
