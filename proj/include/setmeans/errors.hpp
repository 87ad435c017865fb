#ifndef SETMEANS_ERRORS_HPP
#define SETMEANS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace setmeans {

class SetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad block parameters (ratio out of range, empty interval, ...).
class ValidationError : public SetError {
public:
    using SetError::SetError;
};

class ParseError : public SetError {
public:
    ParseError(int line, int column, std::vector<std::string> expected, const std::string& message)
        : SetError(message), line_(line), column_(column), expected_(std::move(expected))
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

class EmptyResult : public SetError {
public:
    EmptyResult() : SetError("expression denotes the empty set") {}
};

class CutNotRepresentable : public SetError {
public:
    using SetError::SetError;
};

class MembershipUndecided : public SetError {
public:
    using SetError::SetError;
};

class IntersectionNotRepresentable : public SetError {
public:
    using SetError::SetError;
};

class DifferenceNotRepresentable : public SetError {
public:
    using SetError::SetError;
};

class DomainViolation : public SetError {
public:
    using SetError::SetError;
};

class IncomparableDimensions : public SetError {
public:
    using SetError::SetError;
};

} // namespace setmeans

#endif
