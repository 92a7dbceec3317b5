#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plaus
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed model document or formula text.
class ParseError : public Error
{
public:
    explicit ParseError( const std::string& what, std::size_t position = 0 )
            : Error( what ), _position{ position }
    {}

    [[nodiscard]] std::size_t position() const { return _position; }

private:
    std::size_t _position;
};

/// A model violates one of the plausibility model invariants.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// A request that is well-formed but meaningless for the given model,
/// e.g. an unknown world or a distinguishing formula for bisimilar worlds.
class SemanticError : public Error
{
public:
    using Error::Error;
};

/// Exhaustive enumeration requested on a domain above the configured bound.
class BoundExceeded : public Error
{
public:
    using Error::Error;
};

/// Internal consistency check failed. Always a bug.
class EngineError : public Error
{
public:
    using Error::Error;
};

} // namespace plaus
