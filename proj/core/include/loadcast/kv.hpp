#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loadcast {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-string parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view text);

/// Ordered flat `key = value` document.  Lines starting with '#' and blank
/// lines are ignored on read; keys keep insertion order on write.
class KeyValueDoc {
public:
    void set(std::string key, std::string value);
    void set(std::string key, double value) { set(std::move(key), format_double(value)); }

    bool contains(std::string_view key) const;
    /// Throws DataError if absent.
    const std::string& get(std::string_view key) const;
    double get_double(std::string_view key) const;
    std::optional<std::string> find(std::string_view key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

    void write(std::ostream& out) const;
    std::string to_string() const;
    static KeyValueDoc parse(std::string_view text);
    static KeyValueDoc read_file(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace loadcast
