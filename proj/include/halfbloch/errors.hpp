#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "halfbloch/index_vector.hpp"

namespace halfbloch {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document or out-of-range parameter. `field` names the
/// offending entry (dotted path for config documents).
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A mathematical precondition failed: resonance, lost triangularity,
/// unsound truncation, degenerate basis, unclassified potential.
class GuardError : public Error {
 public:
  using Error::Error;
};

class DegenerateBasisError : public GuardError {
 public:
  using GuardError::GuardError;
};

class ClassificationError : public GuardError {
 public:
  using GuardError::GuardError;
};

class CutoffError : public GuardError {
 public:
  CutoffError(double cutoff, double required)
      : GuardError("cutoff " + std::to_string(cutoff) + " is below the required " +
                   std::to_string(required)),
        cutoff_(cutoff),
        required_(required) {}
  double cutoff() const noexcept { return cutoff_; }
  double required() const noexcept { return required_; }

 private:
  double cutoff_;
  double required_;
};

/// A denominator lambda - |b + t|^2 vanished at `index`.
class ResonanceError : public GuardError {
 public:
  ResonanceError(IndexVector index, double denominator, const std::string& context)
      : GuardError(context + ": resonant denominator " + std::to_string(denominator) +
                   " at index " + to_string(index)),
        index_(std::move(index)),
        denominator_(denominator) {}
  const IndexVector& index() const noexcept { return index_; }
  double denominator() const noexcept { return denominator_; }

 private:
  IndexVector index_;
  double denominator_;
};

/// The plane-major Galerkin matrix has a nonzero entry on or above the
/// block diagonal.
class TriangularityError : public GuardError {
 public:
  TriangularityError(IndexVector row, IndexVector column)
      : GuardError("matrix is not strictly triangular: nonzero entry at row " +
                   to_string(row) + ", column " + to_string(column)),
        row_(std::move(row)),
        column_(std::move(column)) {}
  const IndexVector& row() const noexcept { return row_; }
  const IndexVector& column() const noexcept { return column_; }

 private:
  IndexVector row_;
  IndexVector column_;
};

/// Raised by drivers when an iteration left a tail above tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace halfbloch
