#pragma once

#include <stdexcept>
#include <string>

namespace fracent {

// invalid argument or outside a documented domain
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// iterative method did not reach its tolerance
class non_convergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// asked for the value of a measure whose integral diverges
class diverged_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fracent
