#pragma once

#include <stdexcept>
#include <string>

namespace refdiff {

// Base for all tool errors so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Source text whose top-level structure cannot be bracket-matched or parsed.
class MalformedSource : public Error {
public:
    MalformedSource(const std::string& path, int line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), line_(line), path_(path) {}
    int line() const { return line_; }
    const std::string& path() const { return path_; }

private:
    int line_;
    std::string path_;
};

class NotARepository : public Error {
public:
    explicit NotARepository(const std::string& path)
        : Error("not a git repository: " + path) {}
};

class UnknownRevision : public Error {
public:
    explicit UnknownRevision(const std::string& rev)
        : Error("unknown revision: " + rev) {}
};

class ObjectReadFailure : public Error {
public:
    explicit ObjectReadFailure(const std::string& id)
        : Error("cannot read git object: " + id) {}
};

class StoreUnavailable : public Error {
public:
    explicit StoreUnavailable(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class UnknownElement : public Error {
public:
    explicit UnknownElement(const std::string& name)
        : Error("no refactorings recorded for element: " + name) {}
};

} // namespace refdiff
