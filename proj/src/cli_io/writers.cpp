#include "revivals/cli_io/writers.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "revivals/errors.hpp"

namespace revivals::cli {

std::string format_number(double value, int precision)
{
    if (!std::isfinite(value)) {
        throw NumericalConsistencyError("refusing to serialize a non-finite value");
    }
    if (value == 0.0) {
        value = 0.0;  // drop the sign of negative zero
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size()) {
        throw std::invalid_argument("CsvTable: row width does not match header");
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::render() const
{
    std::string out;
    for (const auto& m : metadata_) {
        out += "# ";
        out += m;
        out += '\n';
    }
    auto join = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    join(columns_);
    for (const auto& row : rows_) {
        join(row);
    }
    return out;
}

void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'"
                      + (ec ? ": " + ec.message() : ""));
    }
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace revivals::cli
