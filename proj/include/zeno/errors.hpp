#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (file contents, CSV cells, JSON schema).
class parse_error : public error {
 public:
  using error::error;
};

/// A file could not be opened, read or written.
class io_error : public error {
 public:
  using error::error;
};

/// Matrix is not Hermitian, or its eigendecomposition failed.
class invalid_hamiltonian : public error {
 public:
  using error::error;
};

class dimension_mismatch : public error {
 public:
  using error::error;
};

/// Parameters outside the domain an operation accepts.
class domain_error : public error {
 public:
  using error::error;
};

/// The initial state is an energy eigenstate: no Zeno timescale exists.
class stationary_state : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Not enough usable points for a fit or a chart.
class insufficient_data : public error {
 public:
  using error::error;
};

/// Short-time samples fail the quadratic-deficit gate.
class not_zeno_system : public error {
 public:
  using error::error;
};

/// A value that may lie outside the validity window of an approximation.
/// The value is always computed; `in_domain` says whether it can be trusted.
struct flagged {
  double value = 0.0;
  bool in_domain = true;

  explicit operator double() const { return value; }
};

}  // namespace zeno
