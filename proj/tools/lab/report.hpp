#pragma once

/// @file report.hpp
/// CSV reports: a `# schema=<command>/<version>` comment, one header line,
/// then rows in the order they were added.

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bq::lab {

/// printf %.17g, which round-trips every double.
[[nodiscard]] std::string format_number(double value);
[[nodiscard]] std::string format_flag(bool value);

class Report {
public:
    Report(std::string schema, std::vector<std::string> columns);

    /// Appends a row; throws std::logic_error when the width is wrong.
    /// A row added with passed = false is flagged in failures().
    void add(std::vector<std::string> cells, bool passed = true);

    [[nodiscard]] bool all_pass() const noexcept { return failures_.empty(); }
    [[nodiscard]] const std::vector<std::size_t>& failures() const noexcept { return failures_; }
    [[nodiscard]] const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] const std::string& schema() const noexcept { return schema_; }

    /// Extra failure that belongs to no single row, reported on the error stream.
    void fail_summary(std::string message);
    [[nodiscard]] const std::vector<std::string>& summary_failures() const noexcept { return summary_failures_; }

    void write(std::ostream& out) const;

private:
    std::string schema_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> failures_;
    std::vector<std::string> summary_failures_;
};

/// Raised for unwritable destinations.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws IoError when `path` exists and `force` is false, or when its
/// parent directory is missing.
void check_destination(const std::filesystem::path& path, bool force);
/// Writes the report to `path`, replacing any existing file. Throws IoError.
void write_report(const Report& report, const std::filesystem::path& path);

}  // namespace bq::lab
