#ifndef FDREP_ERRORS_HPP
#define FDREP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fdrep {

/// Input is well-formed but violates a mathematical precondition
/// (unbalanced word, out-of-range generator, bad coefficient, ...).
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Text or JSON input could not be parsed.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure did not reach its declared tolerance.
class ToleranceError : public std::runtime_error {
public:
  explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

/// Two permutation constraints disagree. Unreachable for reduced,
/// endpoint-normalized input.
class ConstraintConflict : public std::logic_error {
public:
  explicit ConstraintConflict(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fdrep

#endif
