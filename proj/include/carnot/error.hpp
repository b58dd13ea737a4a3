#ifndef CARNOT_ERROR_HPP
#define CARNOT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace carnot {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates an operation's precondition (bad dimension, radius, index, ...).
class InvalidParameter : public Error
{
public:
  using Error::Error;
};

/// The supplied structure maps do not satisfy J_z^2 = -|z|^2 Id.
class NotHType : public Error
{
public:
  using Error::Error;
};

/// Norm, weight or profile requested at the group identity.
class SingularPoint : public Error
{
public:
  using Error::Error;
};

/// A parameter lies outside the range where a result is defined (e.g. p >= Q).
class OutOfRange : public Error
{
public:
  using Error::Error;
};

/// An integrand or field produced a non-finite value.
class EvaluationError : public Error
{
public:
  EvaluationError(const std::string& what, std::size_t node)
    : Error(what), node_(node)
  {}
  std::size_t node() const { return node_; }

private:
  std::size_t node_;
};

/// A Rayleigh quotient was requested for a field with zero L^p mass.
class DegenerateTestFunction : public Error
{
public:
  using Error::Error;
};

/// The quadrature cannot resolve the integrand at the requested radii.
class ResolutionError : public Error
{
public:
  using Error::Error;
};

/// The explicit solver produced a non-finite value.
class DivergenceError : public Error
{
public:
  DivergenceError(const std::string& what, long step)
    : Error(what), step_(step)
  {}
  long step() const { return step_; }

private:
  long step_;
};

/// File system failure while writing artifacts.
class IoError : public Error
{
public:
  using Error::Error;
};

} // namespace carnot

#endif // CARNOT_ERROR_HPP
