#ifndef DYNSEARCH_ERROR_HPP
#define DYNSEARCH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynsearch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

/// A system description that fails validation.
class InvalidSystem : public Error {
public:
    explicit InvalidSystem(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Broken precondition of an algorithm contract, e.g. updating information
/// along a transition whose origin carries no information.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A configured resource bound (enumeration cap, retry budget) was exhausted.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace dynsearch

#endif
