#pragma once

#include <stdexcept>
#include <string>

namespace redten {

// One exception type for the whole library; `kind` is stable and matchable,
// `what()` carries the witness (element indices, step index, ...).
class Error : public std::runtime_error {
 public:
  enum class Kind {
    NotAssociative,
    NoIdentity,
    NoInverse,
    DivisionByZero,
    ConductorMismatch,
    NotAMultiple,
    ConductorTooSmall,
    GroupMismatch,
    ZMissing,
    DegeneratePairing,
    MissingCentralizerZoo,
    LabelMismatch,
    ShapeMismatch,
    UnknownGroup,
    UnknownSuite,
    BadLabelFile,
    NotNonzero,
    BadInput,
  };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Error make_error(Error::Kind k, const std::string& msg) { return Error(k, msg); }

}  // namespace redten
