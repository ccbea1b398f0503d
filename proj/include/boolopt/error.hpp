#pragma once

#include <stdexcept>
#include <string>

namespace boolopt {

// Raised when an operation's preconditions are violated (bad n, v, lengths,
// reducible modulus, ...). The CLI maps this to exit code 2.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ParameterError(what);
}

}  // namespace boolopt
