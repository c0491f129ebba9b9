#pragma once

#include <stdexcept>
#include <string>

namespace freud {

/// Thrown when an iterative numeric procedure fails to reach its target
/// accuracy (quadrature refinement, eigen iteration, tail stabilization).
/// Domain and argument violations use std::domain_error and
/// std::invalid_argument respectively.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace freud
