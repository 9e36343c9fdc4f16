#pragma once

#include <stdexcept>
#include <string>

namespace scissor {

// Base for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric argument is outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A value object violates one of its declared invariants.
struct InvalidValue : Error {
  using Error::Error;
};

// Feature schemas of two datasets (or model vs. data) do not line up.
struct SchemaMismatch : Error {
  using Error::Error;
};

// An operation that needs both classes saw only one.
struct SingleClass : Error {
  using Error::Error;
};

// Not enough rows for the requested fold count.
struct TooFewRows : Error {
  using Error::Error;
};

// Training data carries no usable signal (e.g. every feature constant).
struct DegenerateData : Error {
  using Error::Error;
};

// A pool request cannot be met with the available class counts.
struct InsufficientClass : Error {
  using Error::Error;
};

// The generator hit its retry budget on a single test case.
struct GenerationExhausted : Error {
  using Error::Error;
};

// A configuration file failed strict validation.
struct ConfigInvalid : Error {
  using Error::Error;
};

// A pipeline stage failed; the message names the stage.
struct StageFailure : Error {
  StageFailure(const std::string& stage, const std::string& what)
      : Error("stage '" + stage + "': " + what), stage_name(stage) {}
  std::string stage_name;
};

}  // namespace scissor
