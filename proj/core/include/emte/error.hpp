// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace emte {

// Thrown for ill-posed inputs: singular tensors, invalid configurations,
// degenerate wave problems, malformed config files.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace emte
