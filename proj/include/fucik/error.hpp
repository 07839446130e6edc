#pragma once

#include <stdexcept>
#include <string>

namespace fucik {

enum class ErrorKind {
  invalid_input,        // malformed matrix, bad window, unknown fixture
  not_an_eigenvalue,    // kernel of (A - lambda I) is empty
  out_of_range,         // right-hand side not in Img(A - lambda I)
  precondition,         // e.g. eigenvector with a zero component
  degenerate_direction, // Q u0 = 0, handled by the degenerate solver instead
  wrong_class,          // degenerate-solver entry point called on the wrong class
  undefined_direction,  // alpha == beta in the (eps, eta) transform
  capacity,             // dimension above the sign-pattern enumeration cap
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fucik
