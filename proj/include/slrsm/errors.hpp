#pragma once

#include <stdexcept>
#include <string>

namespace slrsm {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace slrsm
