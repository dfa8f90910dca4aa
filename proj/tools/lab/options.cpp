#include "options.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "boussinesq/errors.hpp"

namespace bq::lab {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_decimal(std::string_view key, std::string_view text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError("option " + std::string(key) + ": '" + std::string(text) + "' is not a number");
    }
    return value;
}

}  // namespace

double parse_real(std::string_view key, std::string_view text) {
    text = trim(text);
    const std::size_t slash = text.find('/');
    double value = 0.0;
    if (slash == std::string_view::npos) {
        value = parse_decimal(key, text);
    } else {
        const double denominator = parse_decimal(key, trim(text.substr(slash + 1)));
        if (denominator == 0.0) throw ConfigError("option " + std::string(key) + ": zero denominator");
        value = parse_decimal(key, trim(text.substr(0, slash))) / denominator;
    }
    if (!std::isfinite(value)) throw ConfigError("option " + std::string(key) + " must be finite");
    return value;
}

long parse_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    long value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec == std::errc() && ptr == end && !text.empty()) return value;
    // Accept integral values written in floating form, e.g. 1e5.
    const double real = parse_decimal(key, text);
    if (real != std::floor(real) || std::abs(real) > 9.0e15) {
        throw ConfigError("option " + std::string(key) + ": '" + std::string(text) + "' is not an integer");
    }
    return static_cast<long>(real);
}

std::map<std::string, std::string> Options::read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        const std::string_view key = eq == std::string_view::npos ? std::string_view{} : trim(view.substr(0, eq));
        if (key.empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected 'key = value'");
        }
        if (key == "config") throw ConfigError(path.string() + ": config files cannot include other files");
        out[std::string(key)] = std::string(trim(view.substr(eq + 1)));
    }
    return out;
}

Options Options::parse(std::span<const std::string> tokens) {
    Options out;
    for (const std::string& token : tokens) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("expected key=value, got '" + token + "'");
        }
        const std::string key(trim(std::string_view(token).substr(0, eq)));
        const std::string value(trim(std::string_view(token).substr(eq + 1)));
        if (key == "config") {
            for (auto& [k, v] : read_config(value)) out.values_[k] = v;
        } else {
            out.values_[key] = value;
        }
    }
    return out;
}

bool Options::has(const std::string& key) const { return values_.contains(key); }

std::optional<std::string> Options::text(const std::string& key) {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (it->second.empty()) throw ConfigError("option " + key + " has an empty value");
    return it->second;
}

std::string Options::text(const std::string& key, std::string_view fallback) {
    return text(key).value_or(std::string(fallback));
}

std::optional<double> Options::real(const std::string& key) {
    const auto raw = text(key);
    if (!raw) return std::nullopt;
    return parse_real(key, *raw);
}

double Options::real(const std::string& key, double fallback) { return real(key).value_or(fallback); }

long Options::integer(const std::string& key, long fallback) {
    const auto raw = text(key);
    return raw ? parse_integer(key, *raw) : fallback;
}

bool Options::flag(const std::string& key, bool fallback) {
    const auto raw = text(key);
    if (!raw) return fallback;
    if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
    if (*raw == "false" || *raw == "0" || *raw == "no") return false;
    throw ConfigError("option " + key + " must be true or false");
}

std::vector<double> Options::reals(const std::string& key, std::vector<double> fallback) {
    const auto raw = text(key);
    if (!raw) return fallback;
    std::vector<double> out;
    for (std::string_view item : split_list(*raw)) out.push_back(parse_real(key, item));
    return out;
}

std::vector<long> Options::integers(const std::string& key, std::vector<long> fallback) {
    const auto raw = text(key);
    if (!raw) return fallback;
    std::vector<long> out;
    for (std::string_view item : split_list(*raw)) out.push_back(parse_integer(key, item));
    return out;
}

std::uint64_t Options::seed() {
    const auto raw = text("seed");
    if (!raw) throw ConfigError("this command is randomised and needs seed=<integer>");
    const long value = parse_integer("seed", *raw);
    if (value < 0) throw ConfigError("seed must be non-negative");
    return static_cast<std::uint64_t>(value);
}

void Options::finish() const {
    for (const auto& [key, value] : values_) {
        if (!used_.contains(key)) throw ConfigError("unknown option '" + key + "' for this command");
    }
}

}  // namespace bq::lab
