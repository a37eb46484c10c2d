#include "jcdamp_cli/output.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace jcdamp::cli {

void Table::add_column(std::string header, std::vector<double> values) {
    if (!columns_.empty() && values.size() != rows())
        throw std::logic_error(fmt::format("column '{}' has {} rows, table has {}", header,
                                           values.size(), rows()));
    headers_.push_back(std::move(header));
    columns_.push_back(std::move(values));
}

const std::vector<double>& Table::column(const std::string& header) const {
    for (std::size_t k = 0; k < headers_.size(); ++k)
        if (headers_[k] == header) return columns_[k];
    throw std::out_of_range(fmt::format("no column '{}' in {}", header, name_));
}

std::string compact(double v) { return fmt::format("{}", v); }

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t k = 0; k < table.headers().size(); ++k) {
        if (k) out += ',';
        out += table.headers()[k];
    }
    out += '\n';
    auto it = std::back_inserter(out);
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t k = 0; k < table.headers().size(); ++k) {
            if (k) out += ',';
            fmt::format_to(it, "{:.17g}", table.column(k)[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const Table& table) {
    nlohmann::ordered_json j;
    j["name"] = table.name();
    j["columns"] = table.headers();
    nlohmann::ordered_json data;
    // NaN has no JSON spelling; nlohmann writes null
    for (std::size_t k = 0; k < table.headers().size(); ++k)
        data[table.headers()[k]] = table.column(k);
    j["data"] = std::move(data);
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
    f << text;
    f.close();
    if (!f) throw std::runtime_error(fmt::format("write to {} failed", path.string()));
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir,
                                  OutputFormat format) {
    const bool csv = format == OutputFormat::csv;
    const auto path = dir / (table.name() + (csv ? ".csv" : ".json"));
    write_text(path, csv ? to_csv(table) : to_json(table).dump(1) + "\n");
    return path;
}

}  // namespace jcdamp::cli
