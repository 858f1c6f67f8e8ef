#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdual {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

// A point lies outside the domain of definition of a field.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Kernel evaluated at coincident points.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Evaluation point too close to a quadrature surface.
class ProximityError : public DomainError {
 public:
  ProximityError(const std::string& what, double distance, double required)
      : DomainError(what), distance_(distance), required_(required) {}
  double distance() const noexcept { return distance_; }
  double required() const noexcept { return required_; }

 private:
  double distance_;
  double required_;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Integrand failure at a quadrature node.
class NodeEvaluationError : public Error {
 public:
  NodeEvaluationError(const std::string& what, std::size_t node) : Error(what), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

}  // namespace hdual
