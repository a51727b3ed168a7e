// io.hpp
// Small file and number formatting helpers shared by the writers.

#pragma once

#include <filesystem>
#include <string>

namespace qrws {

// printf "%.12g"
std::string format_g12(double value);

// Writes the whole file; throws std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);
void write_binary_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace qrws
