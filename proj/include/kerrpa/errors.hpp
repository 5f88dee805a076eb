#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kerrpa {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Total linear damping gamma1 + gamma2 is not positive.
class DegenerateModel : public Error {
public:
    using Error::Error;
};

/// Reflection coefficient requested with b1_in == 0.
class UndefinedForZeroDrive : public Error {
public:
    using Error::Error;
};

/// |D(omega)| vanished: the operating point sits on an instability.
class SingularResponse : public Error {
public:
    using Error::Error;
};

/// More modes were requested than the grid resolves.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Cross-Kerr asked for a mode with itself.
class SameModeError : public Error {
public:
    using Error::Error;
};

/// A squeeze sweep needs the critical point for normalization.
class NoCriticalPoint : public Error {
public:
    using Error::Error;
};

/// Invalid input document. `field` is a JSON pointer ("/drive/b1_in") when
/// the problem is a value, empty for syntax errors, which set `byte` instead.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what, std::size_t byte = 0)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)), byte_(byte) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t byte() const noexcept { return byte_; }

private:
    std::string field_;
    std::size_t byte_;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace kerrpa
