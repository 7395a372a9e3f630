#pragma once

#include <stdexcept>
#include <string>

namespace fso {

// Configuration / input-file problems: bad keys, missing files, grid mismatches.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A multiplier that requires mean-zero input received a field with nonzero mean.
class mean_zero_error : public std::runtime_error {
public:
    explicit mean_zero_error(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature oracle preconditions violated (support mask, grid size cap).
class oracle_error : public std::runtime_error {
public:
    explicit oracle_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterate left the constraint set, or a field violates its domain mask.
class mask_error : public std::runtime_error {
public:
    explicit mask_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fso
