#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace sortlab {

/// Writes to a sibling temporary file, then renames over `path`. On failure
/// the temporary is removed and `path` is left untouched.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Throws ValidationError naming the path when it cannot be read.
std::string read_file(const std::filesystem::path& path);

}  // namespace sortlab
