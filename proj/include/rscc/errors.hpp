#pragma once
#include <stdexcept>
#include <string>

namespace rscc {

// thrown when a word tree, branch recursion or interval list outgrows its safety cap
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// thrown when an operation is handed a map family it cannot work with
struct unsupported_map : std::runtime_error {
    explicit unsupported_map(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rscc
