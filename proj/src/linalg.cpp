#include "excoll/linalg.hpp"

#include <numeric>
#include <sstream>

#include "excoll/error.hpp"

namespace excoll {

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CycMatrix CycMatrix::identity(std::size_t n) { return scalar(n, CycNum(1)); }

CycMatrix CycMatrix::scalar(std::size_t n, const CycNum& value) {
  CycMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

CycMatrix CycMatrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  CycMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw Error(Errc::InvalidParameter, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vec CycMatrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec CycMatrix::col(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

CycMatrix CycMatrix::operator*(const CycMatrix& other) const {
  if (cols_ != other.rows_) throw Error(Errc::InvalidParameter, "matrix shape mismatch");
  CycMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const CycNum& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const CycNum& b = other(k, j);
        if (b.is_zero()) continue;
        out(i, j) += a * b;
      }
    }
  }
  return out;
}

Vec CycMatrix::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw Error(Errc::InvalidParameter, "matrix-vector shape mismatch");
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k).is_zero() || v[k].is_zero()) continue;
      out[i] += (*this)(i, k) * v[k];
    }
  }
  return out;
}

CycMatrix CycMatrix::operator+(const CycMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(Errc::InvalidParameter, "matrix shape mismatch");
  }
  CycMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

CycMatrix CycMatrix::conjugate() const {
  CycMatrix out = *this;
  for (auto& x : out.data_) x = x.conjugate();
  return out;
}

CycMatrix CycMatrix::inverse() const {
  if (!square()) throw Error(Errc::NotInvertible, "non-square matrix");
  const std::size_t n = rows_;
  std::vector<Vec> aug(n, Vec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = (*this)(i, j);
    aug[i][n + i] = CycNum(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug[p][c].is_zero()) ++p;
    if (p == n) throw Error(Errc::NotInvertible, "singular matrix " + key());
    std::swap(aug[p], aug[c]);
    CycNum inv = aug[c][c].inverse();
    for (auto& x : aug[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || aug[r][c].is_zero()) continue;
      CycNum f = aug[r][c];
      for (std::size_t k = c; k < 2 * n; ++k) {
        if (!aug[c][k].is_zero()) aug[r][k] -= f * aug[c][k];
      }
    }
  }
  CycMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug[i][n + j];
  }
  return out;
}

CycNum CycMatrix::trace() const {
  CycNum t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool CycMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool CycMatrix::is_identity() const {
  auto s = scalar_value();
  return s && *s == CycNum(1);
}

std::optional<CycNum> CycMatrix::scalar_value() const {
  if (!square() || rows_ == 0) return std::nullopt;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j) {
        if ((*this)(i, j) != (*this)(0, 0)) return std::nullopt;
      } else if (!(*this)(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  }
  return (*this)(0, 0);
}

CycMatrix CycMatrix::embed(long conductor) const {
  CycMatrix out = *this;
  for (auto& x : out.data_) x = x.embed(conductor);
  return out;
}

long CycMatrix::conductor() const {
  long n = 1;
  for (const auto& x : data_) n = std::lcm(n, x.conductor());
  return n;
}

std::string CycMatrix::key() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).to_string();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const CycMatrix& a, const CycMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

CycMatrix kronecker(const CycMatrix& a, const CycMatrix& b) {
  CycMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (b(k, l).is_zero()) continue;
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vec add_scaled(Vec acc, const Vec& v, const CycNum& factor) {
  if (factor.is_zero()) return acc;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) acc[i] += factor * v[i];
  }
  return acc;
}

Echelon rref(std::vector<Vec> rows, std::size_t width) {
  Echelon e;
  e.width = width;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    CycNum inv = rows[r][c].inverse();
    for (std::size_t k = c; k < width; ++k) {
      if (!rows[r][k].is_zero()) rows[r][k] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      CycNum f = rows[i][c];
      for (std::size_t k = c; k < width; ++k) {
        if (!rows[r][k].is_zero()) rows[i][k] -= f * rows[r][k];
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

std::optional<Vec> Echelon::coordinates(const Vec& v) const {
  if (v.size() != width) throw Error(Errc::BasisMismatch, "vector width does not match basis");
  Vec coords(rows.size());
  Vec residual = v;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    coords[i] = residual[pivots[i]];
    if (!coords[i].is_zero()) residual = add_scaled(std::move(residual), rows[i], -coords[i]);
  }
  if (!excoll::is_zero(residual)) return std::nullopt;
  return coords;
}

std::size_t rank_of(const std::vector<Vec>& rows, std::size_t width) {
  return rref(rows, width).rank();
}

std::size_t rank_of(const CycMatrix& m) {
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rank_of(rows, m.cols());
}

std::vector<Vec> nullspace(const CycMatrix& m) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  Echelon e = rref(std::move(rows), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(m.cols());
    x[free] = CycNum(1);
    for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace excoll
