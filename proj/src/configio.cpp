#include "searchmkt/configio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "searchmkt/errors.hpp"

namespace searchmkt {

namespace {

struct cursor {
    int line = 0;
    int col = 0;
};

[[noreturn]] void parse_fail(const cursor& at, const std::string& msg) {
    fail(errc::parse, "config-parse",
         "line " + std::to_string(at.line) + ", column " + std::to_string(at.col) + ": " + msg);
}

std::string_view trim(std::string_view s, int& col_offset) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    col_offset += static_cast<int>(b);
    return s.substr(b, e - b);
}

double parse_double(std::string_view tok, cursor at) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(at, "expected a number, got '" + std::string(tok) + "'");
    return out;
}

int parse_int(std::string_view tok, cursor at) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(at, "expected an integer, got '" + std::string(tok) + "'");
    return out;
}

std::vector<double> parse_list(std::string_view body, cursor at) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = body.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? body.size() : comma;
        int off = static_cast<int>(start);
        const std::string_view tok = trim(body.substr(start, end - start), off);
        cursor tok_at{at.line, at.col + off};
        if (tok.empty()) parse_fail(tok_at, "empty entry in a comma list");
        out.push_back(parse_double(tok, tok_at));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string fmt17(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

run_config parse_config(const std::string& text) {
    run_config cfg;
    std::vector<std::pair<int, std::string>> lines;  // (line number, content)
    {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            lines.emplace_back(no, raw);
        }
    }

    int pending_delta_rows = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& [no, raw] = lines[i];
        std::string content = raw;
        if (const std::size_t hash = content.find('#'); hash != std::string::npos)
            content.resize(hash);
        int col = 1;
        const std::string_view body = trim(content, col);
        if (body.empty()) continue;
        const cursor at{no, col};

        if (pending_delta_rows > 0) {
            const int l = cfg.tech->N - pending_delta_rows + 1;
            const std::vector<double> row = parse_list(body, at);
            if (static_cast<int>(row.size()) != cfg.tech->N)
                parse_fail(at, "delta row " + std::to_string(l) + " needs " +
                                   std::to_string(cfg.tech->N) + " entries, got " +
                                   std::to_string(row.size()));
            for (int k = 1; k <= cfg.tech->N; ++k)
                cfg.tech->delta[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] =
                    row[static_cast<std::size_t>(k - 1)];
            --pending_delta_rows;
            continue;
        }

        if (body == "delta:") {
            if (cfg.market.N < 1) parse_fail(at, "delta block needs N set on an earlier line");
            if (cfg.tech) parse_fail(at, "duplicate delta block");
            cfg.tech = noisy_tech{cfg.market.N,
                                  std::vector<std::vector<double>>(
                                      static_cast<std::size_t>(cfg.market.N) + 1,
                                      std::vector<double>(static_cast<std::size_t>(cfg.market.N) + 1,
                                                          0.0))};
            pending_delta_rows = cfg.market.N;
            continue;
        }

        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos) parse_fail(at, "expected 'key = value'");
        int key_off = 0;
        const std::string_view key = trim(body.substr(0, eq), key_off);
        int val_off = static_cast<int>(eq) + 1;
        const std::string_view val = trim(body.substr(eq + 1), val_off);
        const cursor val_at{no, col + val_off};
        if (key.empty()) parse_fail(at, "missing key before '='");
        if (val.empty()) parse_fail(val_at, "missing value for '" + std::string(key) + "'");

        if (key == "N")
            cfg.market.N = parse_int(val, val_at);
        else if (key == "v")
            cfg.market.v = parse_double(val, val_at);
        else if (key == "c")
            cfg.market.c = parse_double(val, val_at);
        else if (key == "theta")
            cfg.market.theta = parse_list(val, val_at);
        else if (key == "lambda")
            cfg.lambda = parse_double(val, val_at);
        else if (key == "shift_from")
            cfg.shift_from = parse_int(val, val_at);
        else if (key == "shift_to")
            cfg.shift_to = parse_int(val, val_at);
        else if (key == "shift")
            cfg.shift = parse_double(val, val_at);
        else if (key == "c_min")
            cfg.c_min = parse_double(val, val_at);
        else if (key == "c_max")
            cfg.c_max = parse_double(val, val_at);
        else
            parse_fail(at, "unknown key '" + std::string(key) + "'");
    }
    if (pending_delta_rows > 0)
        fail(errc::parse, "config-parse",
             "delta block ended " + std::to_string(pending_delta_rows) + " row(s) short");
    return cfg;
}

run_config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::parse, "config-parse", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_config(const run_config& cfg) {
    std::string out;
    out += "N = " + std::to_string(cfg.market.N) + "\n";
    out += "v = " + fmt17(cfg.market.v) + "\n";
    out += "c = " + fmt17(cfg.market.c) + "\n";
    if (!cfg.market.theta.empty()) {
        out += "theta = ";
        for (std::size_t n = 0; n < cfg.market.theta.size(); ++n) {
            if (n) out += ", ";
            out += fmt17(cfg.market.theta[n]);
        }
        out += "\n";
    }
    if (cfg.lambda) out += "lambda = " + fmt17(*cfg.lambda) + "\n";
    if (cfg.shift_from) out += "shift_from = " + std::to_string(*cfg.shift_from) + "\n";
    if (cfg.shift_to) out += "shift_to = " + std::to_string(*cfg.shift_to) + "\n";
    if (cfg.shift) out += "shift = " + fmt17(*cfg.shift) + "\n";
    if (cfg.c_min) out += "c_min = " + fmt17(*cfg.c_min) + "\n";
    if (cfg.c_max) out += "c_max = " + fmt17(*cfg.c_max) + "\n";
    if (cfg.tech) {
        out += "delta:\n";
        for (int l = 1; l <= cfg.tech->N; ++l) {
            for (int k = 1; k <= cfg.tech->N; ++k) {
                if (k > 1) out += ", ";
                out += fmt17(cfg.tech->delta[static_cast<std::size_t>(l)]
                                            [static_cast<std::size_t>(k)]);
            }
            out += "\n";
        }
    }
    return out;
}

}  // namespace searchmkt
