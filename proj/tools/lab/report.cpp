#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bq::lab {

std::string format_number(double value) {
    char buffer[40];
    const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

std::string format_flag(bool value) { return value ? "true" : "false"; }

Report::Report(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {}

void Report::add(std::vector<std::string> cells, bool passed) {
    if (cells.size() != columns_.size()) throw std::logic_error("row width does not match the " + schema_ + " schema");
    if (!passed) failures_.push_back(rows_.size());
    rows_.push_back(std::move(cells));
}

void Report::fail_summary(std::string message) { summary_failures_.push_back(std::move(message)); }

void Report::write(std::ostream& out) const {
    out << "# schema=" << schema_ << '\n';
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(columns_);
    for (const auto& row : rows_) line(row);
}

void check_destination(const std::filesystem::path& path, bool force) {
    if (std::filesystem::exists(path) && !force) {
        throw IoError("refusing to overwrite " + path.string() + " (pass force=true)");
    }
    const std::filesystem::path parent = path.parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        throw IoError("output directory " + parent.string() + " does not exist");
    }
}

void write_report(const Report& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    report.write(out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace bq::lab
