#pragma once

#include <stdexcept>
#include <string>

namespace asymconv {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedChirality : std::logic_error {
    using std::logic_error::logic_error;
};

class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, double estimate)
        : std::runtime_error(what + " (estimate " + std::to_string(estimate) + ")"), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

}  // namespace asymconv
