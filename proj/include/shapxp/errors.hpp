#pragma once

#include <stdexcept>
#include <string>

namespace shapxp {

// Malformed or out-of-range input: bad points, bad files, bad parameters.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed a configured enumeration or coalition cap.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A structural invariant is violated (constant classifier, non-partitioning
// edge labels, inconsistent instance, ...).
class InvariantError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A bounded search gave up without finding an answer.
class NoSolutionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad command-line usage: missing flags, malformed or out-of-range
// instance strings.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace shapxp
