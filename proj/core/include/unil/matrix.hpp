#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unil/errors.hpp"
#include "unil/poly.hpp"
#include "unil/poly_f2.hpp"

namespace unil {

enum class RingTag { Zx, F2x, C2x };

template <class R>
struct ring_traits;

template <>
struct ring_traits<PolyInt> {
  static constexpr RingTag tag = RingTag::Zx;
  static constexpr bool integral_domain = true;
  static constexpr const char* name = "Z[x]";
};
template <>
struct ring_traits<PolyF2> {
  static constexpr RingTag tag = RingTag::F2x;
  static constexpr bool integral_domain = true;
  static constexpr const char* name = "F2[x]";
};
template <>
struct ring_traits<C2PolyElt> {
  static constexpr RingTag tag = RingTag::C2x;
  static constexpr bool integral_domain = false;  // (1-T)(1+T) = 0
  static constexpr const char* name = "Z[C2][x]";
};

const char* ring_name(RingTag tag);

/// Dense row-major matrix over one of the three polynomial rings.
template <class R>
class Matrix {
 public:
  using value_type = R;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<R> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionMismatch("matrix entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<R>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
    return m;
  }
  static Matrix scalar(std::size_t n, const R& s) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<R>& entries() const { return data_; }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!unil::is_zero(e)) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    if constexpr (ring_traits<R>::tag != RingTag::F2x)
      for (auto& e : a.data_) e = -e;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("multiply: " + a.shape() + " by " + b.shape());
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (unil::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (unil::is_zero(b(k, j))) continue;
          out(i, j) += aik * b(k, j);
        }
      }
    return out;
  }
  friend Matrix operator*(const R& s, Matrix a) {
    for (auto& e : a.data_) e = s * e;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }
  /// M*: entry-wise involution followed by transpose.
  Matrix conj_transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(j, i) = unil::involute((*this)(i, j));
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
      throw DimensionMismatch("block out of range");
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      throw DimensionMismatch("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  template <class F>
  auto map(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const R&>()))>;
    std::vector<D> out;
    out.reserve(data_.size());
    for (const auto& e : data_) out.push_back(f(e));
    return Matrix<D>(rows_, cols_, std::move(out));
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch(std::string(what) + ": " + shape() + " vs " +
                              o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> data_;
};

using MatrixZ = Matrix<PolyInt>;
using MatrixF2 = Matrix<PolyF2>;
using MatrixC2 = Matrix<C2PolyElt>;

template <class R>
Matrix<R> block_diag(const Matrix<R>& a, const Matrix<R>& b) {
  Matrix<R> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

template <class R>
Matrix<R> vstack(const Matrix<R>& top, const Matrix<R>& bottom) {
  if (top.cols() != bottom.cols())
    throw DimensionMismatch("vstack: column counts differ");
  Matrix<R> out(top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

namespace detail {

// Minors of the rows listed in `rows`, expanded along successive rows, for
// every column subset of matching size: dp[mask] with popcount(mask) rows
// consumed. Works over any commutative ring, including Z[C2][x].
template <class R>
std::vector<R> minor_table(const Matrix<R>& m, const std::vector<std::size_t>& rows,
                           std::uint32_t columns) {
  const std::size_t n = m.cols();
  std::vector<R> dp(std::size_t{1} << n);
  std::vector<bool> known(dp.size(), false);
  dp[0] = R(1);
  known[0] = true;
  // Masks in increasing popcount order are visited by plain increasing order
  // because every submask is numerically smaller.
  for (std::uint32_t mask = 1; mask < dp.size(); ++mask) {
    if ((mask & ~columns) != 0) continue;
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k > rows.size()) continue;
    const std::size_t row = rows[k - 1];
    R acc;
    bool any = false;
    int above = 0;
    for (std::size_t jj = n; jj-- > 0;) {
      const std::uint32_t bit = std::uint32_t{1} << jj;
      if (!(mask & bit)) continue;
      const std::uint32_t rest = mask & ~bit;
      if (known[rest] && !unil::is_zero(m(row, jj)) && !unil::is_zero(dp[rest])) {
        R term = m(row, jj) * dp[rest];
        if (above % 2) term = -term;
        acc += term;
        any = true;
      }
      ++above;
    }
    dp[mask] = any ? std::move(acc) : R{};
    known[mask] = true;
  }
  return dp;
}

}  // namespace detail

/// Determinant by Laplace expansion over column subsets. Valid over any
/// commutative ring; intended for the small (<= 12x12) matrices used here.
template <class R>
R det_laplace(const Matrix<R>& m) {
  if (!m.is_square()) throw DimensionMismatch("det of non-square " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return R(1);
  if (n > 20) throw PreconditionError("det_laplace: matrix too large");
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  const std::uint32_t all = (n == 32) ? ~0U : ((std::uint32_t{1} << n) - 1);
  return detail::minor_table(m, rows, all)[all];
}

/// Fraction-free (Bareiss) elimination; requires an integral domain with
/// exact division.
template <class R>
R det_bareiss(Matrix<R> a) {
  static_assert(ring_traits<R>::integral_domain);
  if (!a.is_square()) throw DimensionMismatch("det of non-square " + a.shape());
  const std::size_t n = a.rows();
  if (n == 0) return R(1);
  R prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (unil::is_zero(a(k, k))) {
      std::size_t piv = k + 1;
      while (piv < n && unil::is_zero(a(piv, k))) ++piv;
      if (piv == n) return R{};
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw NotDivisible("Bareiss step not exact (ring is not a domain?)");
        a(i, j) = std::move(*q);
      }
      a(i, k) = R{};
    }
    prev = a(k, k);
  }
  R d = a(n - 1, n - 1);
  return negate ? -d : d;
}

template <class R>
R det(const Matrix<R>& m) {
  if constexpr (ring_traits<R>::integral_domain) {
    return det_bareiss(m);
  } else {
    return det_laplace(m);
  }
}

/// Classical adjugate, adj(M) * M = det(M) * Id. Uses cofactor tables so it
/// works over Z[C2][x] as well.
template <class R>
Matrix<R> adjugate(const Matrix<R>& m) {
  if (!m.is_square()) throw DimensionMismatch("adjugate of non-square " + m.shape());
  const std::size_t n = m.rows();
  if (n > 16) throw PreconditionError("adjugate: matrix too large");
  Matrix<R> adj(n, n);
  if (n == 1) {
    adj(0, 0) = R(1);
    return adj;
  }
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r)
      if (r != i) rows.push_back(r);
    auto table = detail::minor_table(m, rows, all);
    for (std::size_t j = 0; j < n; ++j) {
      R minor = table[all & ~(std::uint32_t{1} << j)];
      // cofactor C_ij lands at adj(j, i)
      adj(j, i) = ((i + j) % 2) ? -minor : minor;
    }
  }
  return adj;
}

}  // namespace unil
