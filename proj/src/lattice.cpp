#include "msch/lattice.hpp"

#include "msch/error.hpp"

#include <algorithm>
#include <sstream>

namespace msch {

Int gcd(const Int& a, const Int& b) {
  Int x = abs(a), y = abs(b);
  while (y != 0) {
    Int r = x % y;
    x = y;
    y = r;
  }
  return x;
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// ---------------------------------------------------------------------------
// LatticeVector

LatticeVector::LatticeVector(std::initializer_list<long long> coords) {
  coords_.reserve(coords.size());
  for (long long c : coords) coords_.emplace_back(c);
}

LatticeVector LatticeVector::unit(std::size_t rank, std::size_t i) {
  LatticeVector v(rank);
  v[i] = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Int& c) { return c == 0; });
}

Int LatticeVector::content() const {
  Int g = 0;
  for (const Int& c : coords_) g = gcd(g, c);
  return g;
}

LatticeVector LatticeVector::primitive() const {
  Int g = content();
  if (g <= 1) return *this;
  LatticeVector out(*this);
  for (Int& c : out.coords_) c /= g;
  return out;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector out(*this);
  for (Int& c : out.coords_) c = -c;
  return out;
}

LatticeVector operator*(const Int& s, const LatticeVector& v) {
  LatticeVector out(v);
  for (Int& c : out.coords_) c *= s;
  return out;
}

std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a[i] < b[i]) return std::strong_ordering::less;
    if (a[i] > b[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string LatticeVector::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.rank(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

Int dot(const LatticeVector& a, const LatticeVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

LatticeVector concat(const LatticeVector& a, const LatticeVector& b) {
  std::vector<Int> c(a.coords());
  c.insert(c.end(), b.begin(), b.end());
  return LatticeVector(std::move(c));
}

LatticeVector slice(const LatticeVector& v, std::size_t from, std::size_t count) {
  return LatticeVector(std::vector<Int>(v.begin() + from, v.begin() + from + count));
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::Precondition, "ragged matrix literal");
    for (long long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<LatticeVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

LatticeVector IntMatrix::row(std::size_t r) const {
  return LatticeVector(std::vector<Int>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_));
}

LatticeVector IntMatrix::column(std::size_t c) const {
  LatticeVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::Precondition, "matrix shape mismatch");
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += x * b(k, j);
    }
  return p;
}

LatticeVector operator*(const IntMatrix& a, const LatticeVector& v) {
  if (a.cols() != v.rank()) throw Error(ErrorCode::Precondition, "matrix/vector shape mismatch");
  LatticeVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) os << (r ? "," : "") << row(r);
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t n = m.rows(), k = m.cols();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(n);
  IntMatrix right = IntMatrix::identity(k);
  std::size_t t = 0;
  while (t < std::min(n, k)) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < k; ++j)
        if (a(i, j) != 0 && (!found || abs(a(i, j)) < best)) {
          found = true;
          best = abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (!found) break;
    a.swap_rows(t, pi);
    left.swap_rows(t, pi);
    a.swap_cols(t, pj);
    right.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        a.add_row(i, t, -q);
        left.add_row(i, t, -q);
        if (a(i, t) != 0) {
          a.swap_rows(i, t);
          left.swap_rows(i, t);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        a.add_col(j, t, -q);
        right.add_col(j, t, -q);
        if (a(t, j) != 0) {
          a.swap_cols(j, t);
          right.swap_cols(j, t);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < k; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1);
            left.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      left.negate_row(t);
    }
    ++t;
  }
  SmithForm out;
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a(i, i));
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

// ---------------------------------------------------------------------------
// Rational elimination helpers

namespace {

using RatMatrix = std::vector<std::vector<Rat>>;

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = Rat(m(i, j));
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rat inv = 1 / a[row][col];
    for (Rat& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::Precondition, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  RatMatrix a = to_rat(m);
  return rref(a, m.cols()).size();
}

std::size_t rank(const std::vector<LatticeVector>& vectors, std::size_t ambient) {
  return rank(IntMatrix::from_rows(vectors, ambient));
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::Precondition, "inverse of non-square matrix");
  RatMatrix a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
    a[i][n + i] = 1;
  }
  if (rref(a, n).size() != n) throw Error(ErrorCode::Precondition, "matrix is singular");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& x = a[i][n + j];
      if (denominator(x) != 1) throw Error(ErrorCode::Precondition, "matrix is not unimodular");
      inv(i, j) = numerator(x);
    }
  return inv;
}

std::vector<LatticeVector> integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<LatticeVector> out;
  for (std::size_t c = s.rank(); c < m.cols(); ++c) out.push_back(s.right.column(c));
  return out;
}

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& m, const std::vector<Rat>& b) {
  const std::size_t n = m.cols();
  RatMatrix a = to_rat(m);
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  std::vector<std::size_t> piv = rref(a, n + 1);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][n];
  return x;
}

// ---------------------------------------------------------------------------
// Sublattice

Sublattice::Sublattice(std::size_t ambient, const std::vector<LatticeVector>& generators)
    : ambient_(ambient) {
  std::vector<LatticeVector> rows;
  for (const auto& g : generators)
    if (!g.is_zero()) rows.push_back(g);
  std::size_t r = 0;
  for (std::size_t col = 0; col < ambient && r < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = rows[i][col] / rows[r][col];
        rows[i] -= q * rows[r];
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows.size() || rows[r][col] == 0) continue;
    if (rows[r][col] < 0) rows[r] = -rows[r];
    for (std::size_t i = 0; i < r; ++i) rows[i] -= floor_div(rows[i][col], rows[r][col]) * rows[r];
    pivots_.push_back(col);
    ++r;
  }
  rows.resize(r);
  basis_ = std::move(rows);
}

Sublattice Sublattice::full(std::size_t ambient) {
  std::vector<LatticeVector> e;
  for (std::size_t i = 0; i < ambient; ++i) e.push_back(LatticeVector::unit(ambient, i));
  return Sublattice(ambient, e);
}

std::optional<std::vector<Int>> Sublattice::coordinates(const LatticeVector& v) const {
  LatticeVector w = v;
  std::vector<Int> c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Int& p = basis_[i][pivots_[i]];
    if (w[pivots_[i]] % p != 0) return std::nullopt;
    c[i] = w[pivots_[i]] / p;
    w -= c[i] * basis_[i];
  }
  if (!w.is_zero()) return std::nullopt;
  return c;
}

bool Sublattice::contains(const LatticeVector& v) const { return coordinates(v).has_value(); }

bool Sublattice::contains(const Sublattice& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const LatticeVector& b) { return contains(b); });
}

bool Sublattice::is_saturated() const {
  SmithForm s = smith_normal_form(IntMatrix::from_rows(basis_, ambient_));
  return std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Int& d) { return d == 1; });
}

// ---------------------------------------------------------------------------
// Span coordinates

SpanCoordinates span_coordinates(const std::vector<LatticeVector>& vectors, std::size_t ambient) {
  SpanCoordinates sc;
  sc.ambient = ambient;
  SmithForm s = smith_normal_form(IntMatrix::from_columns(vectors, ambient));
  sc.dim = s.rank();
  sc.to_coords = std::move(s.left);
  sc.from_coords = unimodular_inverse(sc.to_coords);
  return sc;
}

LatticeVector SpanCoordinates::coords(const LatticeVector& v) const {
  LatticeVector out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < ambient; ++j) out[i] += to_coords(i, j) * v[j];
  return out;
}

LatticeVector SpanCoordinates::lift(const LatticeVector& c) const {
  LatticeVector out(ambient);
  for (std::size_t i = 0; i < ambient; ++i)
    for (std::size_t j = 0; j < dim; ++j) out[i] += from_coords(i, j) * c[j];
  return out;
}

LatticeVector SpanCoordinates::lift_functional(const LatticeVector& f) const {
  LatticeVector out(ambient);
  for (std::size_t j = 0; j < ambient; ++j)
    for (std::size_t i = 0; i < dim; ++i) out[j] += f[i] * to_coords(i, j);
  return out;
}

std::vector<LatticeVector> SpanCoordinates::equations() const {
  std::vector<LatticeVector> out;
  for (std::size_t i = dim; i < ambient; ++i) out.push_back(to_coords.row(i));
  return out;
}

bool SpanCoordinates::in_span(const LatticeVector& v) const {
  for (std::size_t i = dim; i < ambient; ++i)
    if (dot(to_coords.row(i), v) != 0) return false;
  return true;
}

}  // namespace msch

namespace msch {

std::optional<LatticeVector> solve_integer(const IntMatrix& m, const LatticeVector& b) {
  SmithForm s = smith_normal_form(m);
  LatticeVector c = s.left * b;
  LatticeVector y(m.cols());
  for (std::size_t i = 0; i < c.rank(); ++i) {
    if (i < s.rank()) {
      if (c[i] % s.diagonal[i] != 0) return std::nullopt;
      y[i] = c[i] / s.diagonal[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

}  // namespace msch
