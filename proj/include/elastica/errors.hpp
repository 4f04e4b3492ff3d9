#pragma once

#include <stdexcept>
#include <string>

namespace elastica {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// |gamma'| dropped below the regularity floor somewhere.
struct DegenerateCurve : Error {
  using Error::Error;
};

/// A field claimed to be normal has a tangential component above tolerance.
struct NotNormal : Error {
  using Error::Error;
};

/// Field/curve sizes or identities do not match.
struct ShapeMismatch : Error {
  using Error::Error;
};

/// Point lies outside the tubular neighborhood of the reference curve.
struct OutsideTube : Error {
  using Error::Error;
};

/// The induced reparametrization of a would-be normal graph is not monotone.
struct FoldedGraph : Error {
  using Error::Error;
};

struct NewtonFailure : Error {
  using Error::Error;
};

/// Time stepper could not find an energy-monotone step above dt_min.
struct StepFailure : Error {
  using Error::Error;
};

struct InsufficientData : Error {
  using Error::Error;
};

struct NegativeGap : Error {
  using Error::Error;
};

struct InvalidSpec : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace elastica
