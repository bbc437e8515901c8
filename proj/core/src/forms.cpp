#include "unil/forms.hpp"

#include <utility>

#include "unil/text.hpp"

namespace unil {

FormF2 make_P(const PolyF2& p, const PolyF2& g) {
  return {MatrixF2{{p, PolyF2(1)}, {PolyF2(), g}}, 1};
}

ArfClass arf_normalize(const PolyF2& q) {
  ArfClass out;
  out.rep_ = q;
  auto d = q.degree();
  if (!d) return out;
  // Every rewrite lands on a strictly smaller exponent, so a single top-down
  // sweep reaches the normal form.
  for (std::size_t k = *d; k >= 2; --k) {
    if (k % 2 == 0 && out.rep_.coeff(k)) {
      out.rep_.set(k, false);
      out.rep_.set(k / 2, !out.rep_.coeff(k / 2));
    }
  }
  return out;
}

ArfClass operator+(const ArfClass& a, const ArfClass& b) {
  // Normal forms are closed under addition: same support rule.
  ArfClass out;
  out.rep_ = a.rep_ + b.rep_;
  return out;
}

std::string format(const ArfClass& a) { return format(a.representative()); }

PolyF2 quadratic_value(const MatrixF2& psi, const MatrixF2& column) {
  MatrixF2 v = column.conj_transpose() * psi * column;
  return v(0, 0);
}

bool is_even(const FormF2& form) {
  MatrixF2 lambda = form.symmetrization();
  for (std::size_t i = 0; i < lambda.rows(); ++i)
    if (!lambda(i, i).is_zero()) return false;
  return true;
}

MatrixF2 standard_symplectic(std::size_t r) {
  MatrixF2 out(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    out(2 * i, 2 * i + 1) = PolyF2(1);
    out(2 * i + 1, 2 * i) = PolyF2(1);
  }
  return out;
}

namespace {

// Working state of the symplectic reduction: the Gram matrix of the pairing
// in the current basis, the quadratic value of each current basis vector,
// and optionally the basis itself.
struct Reduction {
  MatrixF2 gram;
  std::vector<PolyF2> mu;
  MatrixF2* basis = nullptr;

  // b_j <- b_j + t * b_src (characteristic 2, so + and - agree).
  void add_multiple(std::size_t j, std::size_t src, const PolyF2& t) {
    if (t.is_zero()) return;
    const std::size_t n = gram.rows();
    // mu(b_j + t b_src) = mu(b_j) + t^2 mu(b_src) + t lambda(b_j, b_src).
    mu[j] += t * (t * mu[src] + gram(j, src));
    if (basis)
      for (std::size_t i = 0; i < n; ++i)
        if (!(*basis)(i, src).is_zero()) (*basis)(i, j) += t * (*basis)(i, src);
    for (std::size_t i = 0; i < n; ++i)
      if (!gram(i, src).is_zero()) gram(i, j) += t * gram(i, src);
    for (std::size_t i = 0; i < n; ++i)
      if (!gram(src, i).is_zero()) gram(j, i) += t * gram(src, i);
  }

  void swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    const std::size_t n = gram.rows();
    std::swap(mu[a], mu[b]);
    if (basis)
      for (std::size_t i = 0; i < n; ++i) std::swap((*basis)(i, a), (*basis)(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(gram(i, a), gram(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(gram(a, i), gram(b, i));
  }

  void run() {
    const std::size_t n = gram.rows();
    for (std::size_t i = 0; i < n; ++i)
      if (!gram(i, i).is_zero())
        throw PreconditionError("symplectic_reduce: pairing is not alternating");
    if (n % 2) throw PreconditionError("symplectic_reduce: odd rank is singular");

    for (std::size_t k = 0; k < n; k += 2) {
      // Euclid across row k, columns k+1.., until one nonzero entry remains.
      while (true) {
        std::size_t best = n;
        std::size_t nonzero = 0;
        for (std::size_t j = k + 1; j < n; ++j) {
          if (gram(k, j).is_zero()) continue;
          ++nonzero;
          if (best == n || *gram(k, j).degree() < *gram(k, best).degree()) best = j;
        }
        if (nonzero == 0)
          throw PreconditionError("symplectic_reduce: singular pairing (zero row " +
                                  std::to_string(k) + ")");
        if (nonzero == 1) {
          if (!is_unit(gram(k, best)))
            throw PreconditionError("symplectic_reduce: pairing is not unimodular (gcd " +
                                    format(gram(k, best)) + ")");
          swap(k + 1, best);
          break;
        }
        for (std::size_t j = k + 1; j < n; ++j) {
          if (j == best || gram(k, j).is_zero()) continue;
          auto [q, r] = divmod(gram(k, j), gram(k, best));
          add_multiple(j, best, q);
        }
      }
      // Clear the remaining columns against the new pair (e = b_k, f = b_{k+1}).
      for (std::size_t j = k + 2; j < n; ++j) {
        PolyF2 with_f = gram(j, k + 1);
        PolyF2 with_e = gram(j, k);
        add_multiple(j, k, with_f);
        add_multiple(j, k + 1, with_e);
      }
    }
  }
};

Reduction start_reduction(const FormF2& form) {
  if (form.epsilon != 1) throw PreconditionError("symplectic_reduce: epsilon must be +1");
  Reduction r{form.symmetrization(), {}, nullptr};
  r.mu.reserve(form.rank());
  for (std::size_t i = 0; i < form.rank(); ++i) r.mu.push_back(form.psi(i, i));
  return r;
}

}  // namespace

SymplecticBasis symplectic_reduce(const FormF2& form) {
  Reduction r = start_reduction(form);
  MatrixF2 basis = MatrixF2::identity(form.rank());
  r.basis = &basis;
  r.run();
  return {basis};
}

ArfClass arf(const FormF2& form) {
  // run() rejects a pairing with nonzero diagonal, so evenness needs no separate pass.
  Reduction r = start_reduction(form);
  r.run();
  PolyF2 total;
  for (std::size_t i = 0; i + 1 < form.rank(); i += 2) total += r.mu[i] * r.mu[i + 1];
  return arf_normalize(total);
}

bool witt_equal(const FormF2& a, const FormF2& b) { return arf(a) == arf(b); }

}  // namespace unil
