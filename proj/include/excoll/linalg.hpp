#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "excoll/cyclotomic.hpp"

namespace excoll {

using Vec = std::vector<CycNum>;

/// Dense rectangular matrix over cyclotomic numbers, row-major.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols);
  static CycMatrix identity(std::size_t n);
  static CycMatrix scalar(std::size_t n, const CycNum& value);
  static CycMatrix from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  CycNum& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycNum& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;

  CycMatrix operator*(const CycMatrix& other) const;
  Vec operator*(const Vec& v) const;
  CycMatrix operator+(const CycMatrix& other) const;
  CycMatrix transpose() const;
  CycMatrix conjugate() const;
  /// Throws Errc::NotInvertible for singular or non-square input.
  CycMatrix inverse() const;
  CycNum trace() const;
  bool is_zero() const;
  bool is_identity() const;
  /// When the matrix is lambda * Id returns lambda.
  std::optional<CycNum> scalar_value() const;
  /// Re-express every entry over Q(zeta_N).
  CycMatrix embed(long conductor) const;
  long conductor() const;

  /// Canonical text form, used for deterministic ordering and hashing.
  std::string key() const;

  friend bool operator==(const CycMatrix& a, const CycMatrix& b);
  friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycNum> data_;
};

/// Kronecker product a (x) b.
CycMatrix kronecker(const CycMatrix& a, const CycMatrix& b);

struct Echelon {
  std::vector<Vec> rows;             // reduced row echelon form, nonzero rows only
  std::vector<std::size_t> pivots;   // pivot column of each row
  std::size_t width = 0;

  std::size_t rank() const { return rows.size(); }
  /// Coordinates of v with respect to rows, or nullopt when v is not in the span.
  std::optional<Vec> coordinates(const Vec& v) const;
  bool contains(const Vec& v) const { return coordinates(v).has_value(); }
};

Echelon rref(std::vector<Vec> rows, std::size_t width);
std::size_t rank_of(const std::vector<Vec>& rows, std::size_t width);
std::size_t rank_of(const CycMatrix& m);
/// Basis of { x : m x = 0 }, one vector per free column, in column order.
std::vector<Vec> nullspace(const CycMatrix& m);

bool is_zero(const Vec& v);
Vec add_scaled(Vec acc, const Vec& v, const CycNum& factor);

}  // namespace excoll
