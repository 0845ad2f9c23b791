#pragma once

#include <stdexcept>
#include <string>

namespace polarnet {

// Bad input or configuration: missing files, unparseable formats, invalid
// parameter combinations. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal contract (results that fail their own consistency
// checks). The CLI maps this to exit code 3.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

} // namespace polarnet
