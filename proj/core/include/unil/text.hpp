#pragma once

// Text grammar shared by every CLI input and output.
//
// Polynomial: terms `c`, `c*x^k`, `x^k`, `x`, `T`, `c*T*x^k` joined by `+`/`-`;
// whitespace ignored. Output is canonical: ascending exponent, the plain
// part of a Z[C2] coefficient before its T part, " + " / " - " separators.
//
// Matrix: `[a, b; c, d]`, rows separated by `;`, entries by `,`.

#include <string>
#include <string_view>
#include <variant>

#include "unil/matrix.hpp"

namespace unil {

std::string format(const PolyInt& p);
std::string format(const PolyF2& p);
std::string format(const C2PolyElt& p);

template <class R>
std::string format(const Matrix<R>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format(m(i, j));
    }
  }
  return out + "]";
}

template <class R>
R parse_poly(std::string_view text);
template <>
PolyInt parse_poly<PolyInt>(std::string_view text);
template <>
PolyF2 parse_poly<PolyF2>(std::string_view text);
template <>
C2PolyElt parse_poly<C2PolyElt>(std::string_view text);

template <class R>
Matrix<R> parse_matrix(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("matrix must be wrapped in [...]: " + std::string(text));
  s = s.substr(1, s.size() - 2);
  std::vector<std::vector<R>> rows;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(';', start);
    std::string row = s.substr(start, end == std::string::npos ? end : end - start);
    std::vector<R> entries;
    std::size_t es = 0;
    while (true) {
      std::size_t ee = row.find(',', es);
      entries.push_back(
          parse_poly<R>(row.substr(es, ee == std::string::npos ? ee : ee - es)));
      if (ee == std::string::npos) break;
      es = ee + 1;
    }
    rows.push_back(std::move(entries));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  const std::size_t cols = rows.front().size();
  std::vector<R> data;
  for (auto& r : rows) {
    if (r.size() != cols) throw ParseError("ragged matrix: " + std::string(text));
    for (auto& e : r) data.push_back(std::move(e));
  }
  return Matrix<R>(rows.size(), cols, std::move(data));
}

/// Run-time tagged values, for callers (the CLI, file loaders) that only learn
/// the ring when reading input. Mixing rings raises RingMismatch.
using AnyElement = std::variant<PolyInt, PolyF2, C2PolyElt>;
using AnyMatrix = std::variant<MatrixZ, MatrixF2, MatrixC2>;

RingTag tag_of(const AnyElement& e);
RingTag tag_of(const AnyMatrix& m);

AnyElement ring_add(const AnyElement& a, const AnyElement& b);
AnyElement ring_mul(const AnyElement& a, const AnyElement& b);
AnyElement ring_neg(const AnyElement& a);
AnyMatrix mat_add(const AnyMatrix& a, const AnyMatrix& b);
AnyMatrix mat_mul(const AnyMatrix& a, const AnyMatrix& b);
AnyMatrix mat_conj_transpose(const AnyMatrix& a);
AnyElement mat_det(const AnyMatrix& a);

AnyElement parse_element(std::string_view text, RingTag tag);
AnyMatrix parse_any_matrix(std::string_view text, RingTag tag);
std::string format(const AnyElement& e);
std::string format(const AnyMatrix& m);

}  // namespace unil
