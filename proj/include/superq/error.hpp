#pragma once

#include <stdexcept>
#include <string>

namespace superq {

// Domain errors name the violated invariant in what(). The CLI maps
// domain_error -> exit 2, parse_error (file/JSON shape) -> exit 1.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched algebra sizes or matrix/state formats.
struct format_error : domain_error {
  using domain_error::domain_error;
};

// Inhomogeneous input where a defined parity is required, or a
// parity/kind mismatch between arguments.
struct parity_error : domain_error {
  using domain_error::domain_error;
};

// Zero body where an inverse is required.
struct noninvertible_error : domain_error {
  using domain_error::domain_error;
};

// An operation whose convention is only defined for even generator
// counts (the paired grade involution).
struct convention_error : domain_error {
  using domain_error::domain_error;
};

// Series failed to converge within the hard cap.
struct numeric_error : domain_error {
  using domain_error::domain_error;
};

// State/table fails its normalization condition and no force flag set.
struct not_normalized_error : domain_error {
  using domain_error::domain_error;
};

// Unknown/unpinnable sdTr arrangement, or a calibration run with no
// (or ambiguous) survivor.
struct calibration_error : domain_error {
  using domain_error::domain_error;
};

// Structural problems in input files.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace superq
