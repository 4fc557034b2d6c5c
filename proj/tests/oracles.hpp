#pragma once

// Independent brute-force reference computations used by the unit and
// acceptance tests. None of these call into the character machinery.

#include <map>
#include <numeric>
#include <vector>

#include "excoll/cyclotomic.hpp"
#include "excoll/linalg.hpp"
#include "excoll/matrix_group.hpp"

namespace oracle {

using excoll::CycMatrix;
using excoll::CycNum;
using Poly = std::map<std::vector<int>, CycNum>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return out;
}

inline void monomials(std::size_t vars, int degree, std::vector<int>& cur, std::size_t pos,
                      std::vector<std::vector<int>>& out) {
  if (pos + 1 == vars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int k = degree; k >= 0; --k) {
    cur[pos] = k;
    monomials(vars, degree - k, cur, pos + 1, out);
  }
}

inline std::vector<std::vector<int>> all_monomials(std::size_t vars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(vars, 0);
  monomials(vars, degree, cur, 0, out);
  return out;
}

/// Trace of the substitution x_i -> sum_k a(k, i) x_k on degree-m polynomials.
inline CycNum sym_trace(const CycMatrix& a, int m) {
  std::size_t n = a.rows();
  std::vector<Poly> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a(k, i).is_zero()) continue;
      std::vector<int> e(n, 0);
      e[k] = 1;
      images[i][e] = a(k, i);
    }
  }
  CycNum trace;
  for (const auto& mono : all_monomials(n, m)) {
    Poly p{{std::vector<int>(n, 0), CycNum(1)}};
    for (std::size_t i = 0; i < n; ++i) {
      for (int t = 0; t < mono[i]; ++t) p = poly_mul(p, images[i]);
    }
    auto it = p.find(mono);
    if (it != p.end()) trace += it->second;
  }
  return trace;
}

inline CycNum determinant(const CycMatrix& a) {
  std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CycNum total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    CycNum term(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Trace on Lambda^k as the sum of principal k x k minors.
inline CycNum ext_trace(const CycMatrix& a, std::size_t k) {
  std::size_t n = a.rows();
  if (k > n) return CycNum(0);
  if (k == 0) return CycNum(1);
  CycNum total;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    CycMatrix sub(k, k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) sub(r, c) = a(idx[r], idx[c]);
    }
    total += determinant(sub);
  }
  return total;
}

/// dim of G-invariant degree-m polynomials on V: average of traces of the
/// contragredient action.
inline excoll::Rat invariant_dimension(const excoll::FiniteMatrixGroup& g, int m) {
  CycNum sum;
  for (const auto& el : g.elements()) sum += sym_trace(el.inverse().transpose(), m);
  sum /= CycNum(static_cast<long>(g.order()));
  return sum.rational_part();
}

/// Coefficients of prod(1 - t^a) / prod(1 - t^b) up to degree max.
inline std::vector<long> series(const std::vector<int>& numerator_degrees,
                                const std::vector<int>& denominator_degrees, int max) {
  std::vector<long> c(static_cast<std::size_t>(max + 1), 0);
  c[0] = 1;
  for (int a : numerator_degrees) {
    for (int i = max; i >= a; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - a)];
  }
  for (int b : denominator_degrees) {
    for (int i = b; i <= max; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - b)];
  }
  return c;
}

}  // namespace oracle
