// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace toxizk {

/// Base of every error raised by the library. Subclasses classify the failure
/// so that callers (notably the CLI) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wrong arity, out-of-domain argument, inconsistent parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized data: bad hex, wrong length, point not on curve.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Bad or unusable input records.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A metric value ≥ 2^32 or another value that cannot be assigned to the circuit.
class WitnessError : public Error {
 public:
  using Error::Error;
};

class SynthesisError : public Error {
 public:
  using Error::Error;
};

class SetupError : public Error {
 public:
  using Error::Error;
};

/// The witness handed to the prover does not satisfy the constraint system.
class ProverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class CorruptionError : public Error {
 public:
  CorruptionError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace toxizk
