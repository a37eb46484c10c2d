#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jcdamp_cli/config.hpp"

namespace jcdamp::cli {

/// Column-major numeric table with a header row.
class Table {
public:
    Table() = default;
    explicit Table(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void add_column(std::string header, std::vector<double> values);

    const std::vector<std::string>& headers() const { return headers_; }
    const std::vector<double>& column(std::size_t k) const { return columns_[k]; }
    const std::vector<double>& column(const std::string& header) const;
    std::size_t rows() const { return columns_.empty() ? 0 : columns_.front().size(); }

private:
    std::string name_;
    std::vector<std::string> headers_;
    std::vector<std::vector<double>> columns_;
};

/// Shortest round-trip decimal text, used for numbers inside file and column
/// names ("0.02").
std::string compact(double v);

/// CSV with '.' decimals and 17 significant digits. No locale, no timestamps.
std::string to_csv(const Table& table);
nlohmann::ordered_json to_json(const Table& table);

/// Writes text to path, throwing std::runtime_error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// <dir>/<name>.csv or <dir>/<name>.json; returns the path written.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir,
                                  OutputFormat format);

}  // namespace jcdamp::cli
