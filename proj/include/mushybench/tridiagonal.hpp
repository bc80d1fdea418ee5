#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "mushybench/error.hpp"

namespace mushybench {

/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored.
template <std::floating_point Real>
struct TridiagonalSystem {
  std::vector<Real> lower;
  std::vector<Real> diag;
  std::vector<Real> upper;
  std::vector<Real> rhs;

  std::size_t size() const { return diag.size(); }

  explicit TridiagonalSystem(std::size_t n = 0) : lower(n), diag(n), upper(n), rhs(n) {}
};

/// Thomas algorithm. No pivoting; intended for diagonally dominant systems.
template <std::floating_point Real>
std::vector<Real> solve_tridiagonal(const TridiagonalSystem<Real>& sys) {
  const std::size_t n = sys.size();
  if (sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n) {
    throw SolverError("tridiagonal: band sizes differ");
  }
  std::vector<Real> c(n);
  std::vector<Real> x(n);
  if (n == 0) return x;

  Real pivot = sys.diag[0];
  if (pivot == Real(0)) throw SolverError("tridiagonal: zero pivot in row 0");
  c[0] = sys.upper[0] / pivot;
  x[0] = sys.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.lower[i] * c[i - 1];
    if (pivot == Real(0)) throw SolverError("tridiagonal: zero pivot in row " + std::to_string(i));
    c[i] = i + 1 < n ? sys.upper[i] / pivot : Real(0);
    x[i] = (sys.rhs[i] - sys.lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace mushybench
