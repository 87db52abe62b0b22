#include "searchmkt/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "searchmkt/errors.hpp"

namespace searchmkt {

namespace {

std::string escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

std::string csv_num(double x) {
    if (std::isnan(x)) return {};
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string csv_int(long long x) { return std::to_string(x); }

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
        if (cells.size() != header.size())
            fail(errc::internal, "csv-arity", "row width does not match the header");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += escape(cells[i]);
        }
        out += '\n';
    };
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += escape(header[i]);
    }
    out += '\n';
    for (const auto& row : rows) emit(row);
    return out;
}

void write_text_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::internal, "io", "cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) fail(errc::internal, "io", "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) fail(errc::internal, "io", "cannot move table into place: " + ec.message());
}

}  // namespace searchmkt
