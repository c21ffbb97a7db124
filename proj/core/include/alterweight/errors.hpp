#pragma once

#include <stdexcept>
#include <string>

namespace alterweight {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: documents, words, trees, element literals.
struct parse_error : error {
  using error::error;
};

// Violated precondition or ill-typed data: wrong semiring, arity mismatch,
// unknown letter, operation applied outside its domain.
struct domain_error : error {
  using error::error;
};

// A configured budget or cap ran out. Raising this is always preferred over
// returning a possibly wrong answer.
struct resource_error : error {
  using error::error;
};

}  // namespace alterweight
