#pragma once

#include <stdexcept>
#include <string>

namespace syndisc {

/// Invalid user-supplied data: malformed distributions, bad indices, unparseable specs.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Problem instance exceeds a hard size limit (e.g. full-lattice enumeration).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A condition that valid inputs cannot trigger; indicates a bug.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace syndisc
