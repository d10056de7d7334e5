#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rkrlw {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Writes `header` then one comma-joined row per entry, full precision.
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

/// Reads a numeric CSV written by write_csv (header row required).
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          std::string* header = nullptr);

}  // namespace rkrlw
