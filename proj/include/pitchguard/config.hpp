#ifndef PITCHGUARD_CONFIG_HPP
#define PITCHGUARD_CONFIG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace pitchguard {

// Plain-text `key = value` configuration. Blank lines and lines starting
// with '#' are ignored. Keys outside `allowed` are rejected.
class Config {
public:
    static Config parse_file(const std::string& path, const std::set<std::string>& allowed);
    static Config parse_text(const std::string& text, const std::set<std::string>& allowed);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& key) const; // comma-separated

    // Canonical echo, sorted by key; round-trips through the parser.
    std::string echo() const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace pitchguard

#endif
