#pragma once

/// @file options.hpp
/// key=value experiment options, from the command line and from config files.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bq::lab {

/// Parsed option set. Every getter marks its key as consumed; finish()
/// rejects keys nobody asked for, so typos surface as usage errors.
class Options {
public:
    /// Tokens of the form key=value. A `config=path` token is expanded in
    /// place from a file of `key = value` lines (blank lines and `#` comments
    /// allowed); later tokens override earlier ones. Throws ConfigError.
    [[nodiscard]] static Options parse(std::span<const std::string> tokens);
    /// Lines of a config file; throws ConfigError on malformed lines.
    [[nodiscard]] static std::map<std::string, std::string> read_config(const std::filesystem::path& path);

    [[nodiscard]] bool has(const std::string& key) const;
    [[nodiscard]] std::string text(const std::string& key, std::string_view fallback);
    [[nodiscard]] std::optional<std::string> text(const std::string& key);
    /// Decimal numbers, optionally written as a fraction p/q.
    [[nodiscard]] double real(const std::string& key, double fallback);
    [[nodiscard]] std::optional<double> real(const std::string& key);
    [[nodiscard]] long integer(const std::string& key, long fallback);
    [[nodiscard]] bool flag(const std::string& key, bool fallback);
    [[nodiscard]] std::vector<double> reals(const std::string& key, std::vector<double> fallback);
    [[nodiscard]] std::vector<long> integers(const std::string& key, std::vector<long> fallback);
    /// Mandatory seed; throws ConfigError when absent.
    [[nodiscard]] std::uint64_t seed();

    /// Throws ConfigError naming the first key that was never read.
    void finish() const;

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

[[nodiscard]] double parse_real(std::string_view key, std::string_view text);
[[nodiscard]] long parse_integer(std::string_view key, std::string_view text);

}  // namespace bq::lab
