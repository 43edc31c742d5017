#pragma once

// Exact integer lattice primitives: vectors, matrices, Smith normal form,
// sublattices and rational linear algebra. All arithmetic is arbitrary precision.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace msch {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
/// Floor division for arbitrary signs.
Int floor_div(const Int& a, const Int& b);

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : coords_(rank, Int(0)) {}
  explicit LatticeVector(std::vector<Int> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long long> coords);

  static LatticeVector unit(std::size_t rank, std::size_t i);

  std::size_t rank() const noexcept { return coords_.size(); }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  Int& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Int>& coords() const noexcept { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const;
  /// gcd of the coordinates (0 for the zero vector).
  Int content() const;
  /// The vector divided by its content; the zero vector is returned unchanged.
  LatticeVector primitive() const;

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  LatticeVector operator-() const;
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Int& s, const LatticeVector& v);

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b);

  std::string str() const;

 private:
  std::vector<Int> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

Int dot(const LatticeVector& a, const LatticeVector& b);
/// Block concatenation (a, b).
LatticeVector concat(const LatticeVector& a, const LatticeVector& b);
/// Coordinates [from, from + count).
LatticeVector slice(const LatticeVector& v, std::size_t from, std::size_t count);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<LatticeVector>& cols, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const;
  LatticeVector column(std::size_t c) const;
  IntMatrix transpose() const;
  bool is_identity() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& factor);
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend LatticeVector operator*(const IntMatrix& a, const LatticeVector& v);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// left * m * right = diag(d_1, ..., d_r, 0, ...) with d_1 | d_2 | ... and d_i > 0.
struct SmithForm {
  std::vector<Int> diagonal;  // the nonzero invariant factors
  IntMatrix left;
  IntMatrix right;
  std::size_t rank() const { return diagonal.size(); }
};

SmithForm smith_normal_form(const IntMatrix& m);

Int determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);
std::size_t rank(const std::vector<LatticeVector>& vectors, std::size_t ambient);

/// Exact inverse of a unimodular matrix. Throws if the matrix is not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Saturated basis of { x in Z^cols : m x = 0 }.
std::vector<LatticeVector> integer_kernel(const IntMatrix& m);

/// Some rational solution of m x = b, if one exists.
std::optional<std::vector<Rat>> solve_rational(const IntMatrix& m, const std::vector<Rat>& b);

/// Some integer solution of m x = b, if one exists.
std::optional<LatticeVector> solve_integer(const IntMatrix& m, const LatticeVector& b);

/// A subgroup of Z^n, stored by a row-style Hermite basis.
class Sublattice {
 public:
  Sublattice() = default;
  Sublattice(std::size_t ambient, const std::vector<LatticeVector>& generators);

  static Sublattice full(std::size_t ambient);

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<LatticeVector>& basis() const noexcept { return basis_; }

  bool contains(const LatticeVector& v) const;
  /// Integer coordinates of v in basis(); nullopt if v is outside.
  std::optional<std::vector<Int>> coordinates(const LatticeVector& v) const;
  bool contains(const Sublattice& other) const;
  /// True iff the sublattice equals Z^n intersected with its rational span.
  bool is_saturated() const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<LatticeVector> basis_;   // echelon rows
  std::vector<std::size_t> pivots_;    // pivot column of each row
};

/// Coordinates of a rational subspace: rows [0, dim) of `to_coords` map
/// points of the saturated lattice span ∩ Z^n bijectively onto Z^dim; rows
/// [dim, n) are integral equations of the span. `from_coords` is the inverse.
struct SpanCoordinates {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  IntMatrix to_coords;
  IntMatrix from_coords;

  LatticeVector coords(const LatticeVector& v) const;      // length dim
  LatticeVector lift(const LatticeVector& c) const;        // length ambient
  /// Functional on coordinates, pulled back to a functional on Z^n.
  LatticeVector lift_functional(const LatticeVector& f) const;
  std::vector<LatticeVector> equations() const;
  bool in_span(const LatticeVector& v) const;
};

SpanCoordinates span_coordinates(const std::vector<LatticeVector>& vectors, std::size_t ambient);

}  // namespace msch
