#pragma once

#include <stdexcept>
#include <string>

namespace depmet {

/// Version or requirement text outside the supported grammar.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& reason) : std::runtime_error(reason) {}
};

/// Lookup of a package the release index has never seen (dangling edge).
class UnknownPackage : public std::runtime_error {
public:
    explicit UnknownPackage(const std::string& name)
        : std::runtime_error("unknown package: " + name) {}
};

/// No release of the importing package declares the dependency.
class NoDeclaration : public std::runtime_error {
public:
    NoDeclaration(const std::string& from, const std::string& to)
        : std::runtime_error("no release of " + from + " declares " + to) {}
};

/// Interval records passed to a per-pair aggregate span more than one pair.
class MixedPair : public std::logic_error {
public:
    MixedPair() : std::logic_error("interval records span multiple pairs") {}
};

/// Requirement has no matching release at the requested instant.
class Unresolvable : public std::runtime_error {
public:
    explicit Unresolvable(const std::string& what) : std::runtime_error(what) {}
};

class EmptyInput : public std::invalid_argument {
public:
    explicit EmptyInput(const std::string& what = "empty input")
        : std::invalid_argument(what) {}
};

class ZeroMean : public std::invalid_argument {
public:
    ZeroMean() : std::invalid_argument("sample mean is zero") {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Missing or wrong CSV header; aborts the run rather than warn per-row.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace depmet
