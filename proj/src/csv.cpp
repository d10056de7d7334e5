#include "rkrlw/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "rkrlw/errors.hpp"

namespace rkrlw {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out << header << '\n';
    for (const auto& row : rows) {
        for (size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            out << format_double(row[k]);
        }
        out << '\n';
    }
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::string* header) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("'" + path.string() + "' is empty");
    if (header) *header = line;

    std::vector<std::vector<double>> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            double v = 0.0;
            const auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc{}) {
                throw ConfigError("'" + path.string() + "' line " + std::to_string(line_no) +
                                  ": expected a number");
            }
            row.push_back(v);
            p = res.ptr;
            if (p < end && *p == ',') ++p;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace rkrlw
