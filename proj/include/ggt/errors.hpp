#pragma once

#include <stdexcept>
#include <string>

namespace ggt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

// group-core
struct NotAGroup : Error {
  using Error::Error;
};

// amalgam
struct NotWeaklyCyclicallyReduced : Error {
  using Error::Error;
};

// smallcancel
struct SmallCancellationViolated : Error {
  using Error::Error;
};
struct StepBudgetExceeded : Error {
  using Error::Error;
};

// complex
struct DegreeZero : Error {
  using Error::Error;
};
struct DegreeMismatch : Error {
  using Error::Error;
};
struct NotClosed : Error {
  using Error::Error;
};
struct NotACycle : Error {
  using Error::Error;
};
struct NotIntegral : Error {
  using Error::Error;
};
struct BoundaryMismatch : Error {
  using Error::Error;
};
struct NotChainMap : Error {
  using Error::Error;
};
struct HomotopyIdentityFails : Error {
  HomotopyIdentityFails(const std::string& msg, int degree_, int column_)
      : Error(msg), degree(degree_), column(column_) {}
  int degree;
  int column;
};

// geometry
struct BudgetExceeded : Error {
  using Error::Error;
};
struct Disconnected : Error {
  using Error::Error;
};

// filling
struct Infeasible : Error {
  using Error::Error;
};

}  // namespace ggt
