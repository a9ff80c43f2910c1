#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aigx {

/// A numeric precondition on a model parameter does not hold.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation was invoked with an object of the wrong kind (e.g. a PESP
/// profile passed where an ASP is required, or an out-of-range arm index).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raw prompt grammar rejection. Carries the first failing grammar element
/// and the byte offset into the original input where it was expected.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string element, std::size_t offset);

    const std::string& element() const noexcept { return element_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string element_;
    std::size_t offset_;
};

class LexiconError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A task exhausted its attempt budget. This means the QoG model is
/// mis-calibrated against the threshold, not that the program is broken.
class SessionError : public std::runtime_error {
public:
    SessionError(const std::string& what, std::size_t task_index)
        : std::runtime_error(what), task_index_(task_index) {}

    std::size_t task_index() const noexcept { return task_index_; }

private:
    std::size_t task_index_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace aigx
