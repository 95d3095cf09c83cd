#ifndef BCOH_ERRORS_HPP
#define BCOH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bcoh {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error
{
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** Shapes or dimensions of operands do not fit together. */
class DimensionMismatch : public Error
{
  public:
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

/** An argument violates a documented precondition. */
class InvalidArgument : public Error
{
  public:
    explicit InvalidArgument(const std::string& what) : Error("invalid argument: " + what) {}
};

/**
 * A structural axiom failed during validation (groupoid law, functoriality,
 * naturality, module law, isometry). The message names the axiom and the
 * offending elements.
 */
class AxiomViolation : public Error
{
  public:
    explicit AxiomViolation(const std::string& what) : Error("axiom violated: " + what) {}
};

/** A configured size cap would be exceeded. */
class ResourceCapExceeded : public Error
{
  public:
    explicit ResourceCapExceeded(const std::string& what) : Error("resource cap exceeded: " + what) {}
};

/** Malformed workspace input. */
class InputError : public Error
{
  public:
    explicit InputError(const std::string& what) : Error("input error: " + what) {}
};

}   // namespace bcoh

#endif
