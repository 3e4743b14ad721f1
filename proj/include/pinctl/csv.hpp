#pragma once

#include "pinctl/errors.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>

namespace pinctl {

/// Shortest decimal representation that round-trips the double ('.' decimal
/// separator, locale-independent). Infinities print as "inf"/"-inf".
inline std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("double formatting failed");
    return std::string(buf, ptr);
}

/// CSV emitter with a header row. Rows are written to "<path>.partial" and
/// the file is renamed into place on close, so an interrupted run leaves a
/// flagged partial file instead of a truncated result.
class Csv {
public:
    Csv(std::string path, std::string_view header) : path_(std::move(path)) {
        out_.open(path_ + ".partial", std::ios::trunc);
        if (!out_) throw Error("cannot open output file: " + path_);
        out_ << header << '\n';
    }

    ~Csv() {
        if (out_.is_open()) out_.close(); // leaves .partial behind
    }

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        (emit(fields, first), ...);
        out_ << '\n';
    }

    /// Finishes the file and moves it to its final name.
    void close() {
        out_.close();
        if (out_.fail()) throw Error("write failed: " + path_);
        if (std::rename((path_ + ".partial").c_str(), path_.c_str()) != 0) {
            throw Error("cannot finalize output file: " + path_);
        }
    }

    const std::string& path() const noexcept { return path_; }

private:
    template <typename T>
    void emit(const T& field, bool& first) {
        if (!first) out_ << ',';
        first = false;
        if constexpr (std::is_same_v<T, double> || std::is_same_v<T, float>) {
            out_ << fmt_double(field);
        } else if constexpr (std::is_integral_v<T>) {
            out_ << std::to_string(field);
        } else {
            out_ << field;
        }
    }

    std::string path_;
    std::ofstream out_;
};

} // namespace pinctl
