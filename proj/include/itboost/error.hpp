#pragma once

#include <stdexcept>
#include <string>

namespace itboost {

// Raised for problems with input data: unreadable files, unparsable cells,
// class layouts that cannot satisfy an operation. Parameter validation uses
// std::invalid_argument instead.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace itboost
