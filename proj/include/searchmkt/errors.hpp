#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace searchmkt {

// Error classes double as CLI exit codes.
enum class errc {
    ok = 0,
    parse = 2,
    validation = 3,
    empty_result = 4,
    internal = 5,
};

class solver_error : public std::runtime_error {
public:
    solver_error(errc code, std::string tag, const std::string& what)
        : std::runtime_error(tag + ": " + what), code_(code), tag_(std::move(tag)) {}

    errc code() const noexcept { return code_; }
    const std::string& tag() const noexcept { return tag_; }

private:
    errc code_;
    std::string tag_;
};

[[noreturn]] inline void fail(errc code, const char* tag, const std::string& what) {
    throw solver_error(code, tag, what);
}

}  // namespace searchmkt
