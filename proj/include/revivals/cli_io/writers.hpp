#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace revivals::cli {

/// printf("%.{precision}g"); non-finite values are rejected.
std::string format_number(double value, int precision);

/// Comma-separated table preceded by '#'-prefixed metadata lines.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_metadata(std::string line) { metadata_.push_back(std::move(line)); }
    void add_row(std::vector<std::string> cells);
    std::string render() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> metadata_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Creates the directory (and parents). Throws IoError on failure.
void ensure_directory(const std::filesystem::path& dir);

/// Writes the file in binary mode. Throws IoError on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace revivals::cli
