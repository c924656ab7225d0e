#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace domwb {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: a relation table that is not square, a name that does
/// not resolve, a map whose table does not fit its domain.
class structural_error : public error {
 public:
  using error::error;
};

class out_of_range : public error {
 public:
  using error::error;
};

class domain_mismatch : public error {
 public:
  using error::error;
};

class not_pointed : public error {
 public:
  not_pointed() : error("poset has no least element") {}
};

class not_directed : public error {
 public:
  explicit not_directed(const std::string& what = "family is not directed") : error(what) {}
};

/// A subset without a least upper bound. `directed` records whether the
/// subset was directed, which on a finite poset never happens together with
/// a missing supremum.
class no_supremum : public error {
 public:
  explicit no_supremum(bool directed)
      : error(directed ? "directed subset has no supremum" : "subset has no least upper bound"),
        directed_(directed) {}
  bool directed() const noexcept { return directed_; }

 private:
  bool directed_;
};

class monotonicity_violation : public error {
 public:
  using error::error;
};

/// Raised when an enumeration would exceed the configured element budget.
class budget_exceeded : public error {
 public:
  budget_exceeded(const std::string& what, std::size_t budget)
      : error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

class precondition_violation : public error {
 public:
  using error::error;
};

/// Parse failure at a byte offset of the input.
class syntax_error : public error {
 public:
  syntax_error(const std::string& what, std::size_t position)
      : error("syntax error at " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace domwb
