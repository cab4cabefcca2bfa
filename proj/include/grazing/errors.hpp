#ifndef GRAZING_ERRORS_HPP
#define GRAZING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace grazing {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax or resolution error in a system-definition source. Carries the
/// 1-based line/column of the offending token.
class ParseError : public Error {
  public:
    int line, column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

/// Division by zero, log of a non-positive value, sqrt of a negative value.
/// Detected on the order-0 coefficient when evaluating jets.
class EvalDomainError : public Error {
  public:
    int line, column;
    EvalDomainError(const std::string& msg, int line_, int col_)
        : Error(msg + " (expression at line " + std::to_string(line_) +
                ", column " + std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

class IntegratorError : public Error {
  public:
    using Error::Error;
};

/// No sign change of the event functional within the requested horizon.
class NoCrossingError : public Error {
  public:
    using Error::Error;
};

/// Two crossings inside one accepted step could not be separated.
class AmbiguousBracketError : public Error {
  public:
    using Error::Error;
};

class NotOnBoundaryError : public Error {
  public:
    using Error::Error;
};

class NoConvergenceError : public Error {
  public:
    using Error::Error;
};

class JacobianSingularError : public Error {
  public:
    using Error::Error;
};

/// L_X^4 H at the base point is not positive; the real fourth root of the
/// leading impact-time term does not exist on this side.
class NonpositiveRadicandError : public Error {
  public:
    using Error::Error;
};

/// The analytic order-4 maps refuse points whose base tangency does not
/// classify as a regular order-4 grazing.
class NotOrder4Error : public Error {
  public:
    using Error::Error;
};

class UnknownSystemError : public Error {
  public:
    using Error::Error;
};

class NoSignChangeError : public Error {
  public:
    using Error::Error;
};

class NotAMultiplicityMRootError : public Error {
  public:
    using Error::Error;
};

class ZeroLeadingDerivativeError : public Error {
  public:
    using Error::Error;
};

class FitError : public Error {
  public:
    using Error::Error;
};

}  // namespace grazing

#endif
