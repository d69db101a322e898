#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "orbicheck/rational.hpp"

namespace orbicheck {

// int64 arithmetic that throws std::overflow_error instead of wrapping.
long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  // Block-diagonal sum.
  static IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long long& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  long long operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator-() const;
  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_diagonal() const;
  long long determinant() const;  // square only; fraction-free elimination
  std::string str() const;

  // M x with x rational.
  std::vector<Rat> apply(const std::vector<Rat>& x) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<long long> data_;
};

// Inverse over Q; InputError if singular.
std::vector<std::vector<Rat>> rational_inverse(const IntMatrix& m);
// Inverse over Z; InputError unless |det| = 1.
IntMatrix unimodular_inverse(const IntMatrix& m);

struct SmithForm {
  IntMatrix U, S, V;  // U A V = S
  std::vector<long long> diagonal() const;
  std::size_t rank() const;
};

// Diagonal entries nonnegative with d_1 | d_2 | ... . The product U A V is re-multiplied and
// compared against S, and |det U| = |det V| = 1 re-checked, before returning.
SmithForm smith_normal_form(const IntMatrix& a);

// Solutions of A x = b in (Q/Z)^n, i.e. A x - b in Z^m.
struct CongruenceSolution {
  bool solvable = false;
  // One representative per component, entries reduced into [0, 1).
  std::vector<std::vector<Rat>> translates;
  // Integer column vectors spanning the continuous part (empty when finitely many solutions).
  std::vector<std::vector<long long>> directions;
};

CongruenceSolution solve_congruence(const IntMatrix& a, const std::vector<Rat>& b);

// Representative of x mod 1 in [0, 1).
Rat frac(const Rat& x);

}  // namespace orbicheck
