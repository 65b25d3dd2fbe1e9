#pragma once

#include <stdexcept>
#include <string>

namespace bondcat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ComposeMismatch : Error {
  using Error::Error;
};

struct DegreeOverflow : Error {
  using Error::Error;
};

struct ForeignElement : Error {
  using Error::Error;
};

struct EndpointMismatch : Error {
  using Error::Error;
};

struct WitnessInvalid : Error {
  using Error::Error;
};

struct InvolutionArity : Error {
  using Error::Error;
};

struct NotFiniteDimensional : Error {
  using Error::Error;
};

/// Malformed input file; `pointer` is a JSON-pointer-style location.
struct ParseError : Error {
  ParseError(const std::string& pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer(pointer) {}
  std::string pointer;
};

/// Accumulated validation findings. Empty list means valid.
struct Report {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
  void fail(std::string what) { problems.push_back(std::move(what)); }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& p : other.problems) problems.push_back(prefix.empty() ? p : prefix + ": " + p);
  }
  std::string str() const {
    if (ok()) return "valid";
    std::string s;
    for (const auto& p : problems) {
      s += p;
      s += '\n';
    }
    return s;
  }
};

}  // namespace bondcat
