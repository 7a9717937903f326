#pragma once

#include <stdexcept>
#include <string>

namespace hrr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

// Raised when a pivot falls under the relative threshold. Carries a cheap
// estimate of the reciprocal condition number (smallest / largest pivot).
class SingularError : public Error {
public:
    SingularError(const std::string& what, double rcond)
        : Error(what), rcond_(rcond) {}
    double rcond() const noexcept { return rcond_; }

private:
    double rcond_;
};

// Input sits on the measure-zero set where the construction breaks down.
class NotGenericError : public Error {
public:
    using Error::Error;
};

// Candidate columns span fewer than the requested number of dimensions.
class RankDeficientError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace hrr
