#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pinctl {

/// Flat key-value configuration with [section] headers. Keys are addressed as
/// "section.key"; '#' and ';' start comments. One experiment matrix per file.
class Config {
public:
    static Config parse(std::istream& in);
    static Config load(const std::string& path);

    bool has(const std::string& key) const;

    std::string get(const std::string& key, const std::string& fallback) const;
    std::string get_required(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Comma-separated list value; empty list if absent.
    std::vector<std::string> get_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;

    /// CLI overrides land here.
    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& entries() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace pinctl
