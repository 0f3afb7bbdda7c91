#pragma once

#include <stdexcept>

namespace renvol {

/// Thrown when an iterative or asymptotic estimate fails to settle
/// (Newton solves, flow integration, tail extrapolations).
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace renvol
