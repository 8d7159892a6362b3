// Line-delimited delimiter-separated I/O helpers. All pipeline files are
// comma-delimited with a one-line header; set-valued fields join their
// tokens with ';'. Numbers are written with shortest round-trip formatting
// so outputs are byte-stable.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace utirisk {

inline constexpr char kFieldDelim = ',';
inline constexpr char kSetDelim = ';';

inline std::vector<std::string> split_fields(std::string_view line, char delim = kFieldDelim) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        size_t next = line.find(delim, pos);
        if (next == std::string_view::npos) {
            out.emplace_back(line.substr(pos));
            break;
        }
        out.emplace_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline std::string join_fields(const std::vector<std::string>& fields, char delim = kFieldDelim) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(delim);
        out += fields[i];
    }
    return out;
}

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_int(int64_t v) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view s, double& out) {
    if (s == "nan") { out = std::nan(""); return true; }
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline bool parse_int(std::string_view s, int64_t& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

// Reads header + data rows; tracks the 1-based line number of each row.
class DelimitedReader {
public:
    explicit DelimitedReader(std::istream& in) : in_(in) {
        std::string line;
        if (std::getline(in_, line)) {
            strip_cr(line);
            header_ = split_fields(line);
            line_no_ = 1;
        }
    }

    const std::vector<std::string>& header() const { return header_; }

    bool next(std::vector<std::string>& fields, int& line_no) {
        std::string line;
        if (!std::getline(in_, line)) return false;
        strip_cr(line);
        ++line_no_;
        line_no = line_no_;
        fields = split_fields(line);
        return true;
    }

private:
    static void strip_cr(std::string& s) {
        if (!s.empty() && s.back() == '\r') s.pop_back();
    }

    std::istream& in_;
    std::vector<std::string> header_;
    int line_no_ = 0;
};

} // namespace utirisk
