#include "orbicheck/int_matrix.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <gmpxx.h>

#include "orbicheck/errors.hpp"

namespace orbicheck {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("int64 overflow in multiplication");
  return r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      long long a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        m(i, j) = checked_add(m(i, j), checked_mul(a, o(k, j)));
    }
  return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape");
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = checked_add(data_[i], o.data_[i]);
  return m;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = checked_mul(-1, data_[i]);
  return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const { return *this + (-o); }

IntMatrix IntMatrix::transpose() const {
  IntMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

bool IntMatrix::is_zero() const {
  for (long long v : data_)
    if (v != 0) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

long long IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  // Bareiss elimination; intermediate minors can exceed int64 even when the result does not.
  std::vector<mpz_class> a;
  a.reserve(data_.size());
  for (long long v : data_) a.emplace_back(static_cast<long>(v));
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * n + j]; };
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  mpz_class d = at(n - 1, n - 1) * sign;
  if (!d.fits_slong_p()) throw std::overflow_error("determinant exceeds int64");
  return d.get_si();
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<Rat> IntMatrix::apply(const std::vector<Rat>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
  std::vector<Rat> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) y[i] += Rat((*this)(i, j)) * x[j];
  return y;
}

std::vector<std::vector<Rat>> rational_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
    a[i][n + i] = Rat(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw InputError("matrix " + m.str() + " is singular");
    std::swap(a[p], a[c]);
    Rat inv = a[c][c].reciprocal();
    for (auto& v : a[c]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rat f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  auto inv = rational_inverse(m);
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!inv[i][j].is_integer()) throw InputError("matrix " + m.str() + " is not unimodular");
      r(i, j) = inv[i][j].to_int();
    }
  return r;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row dst += f * row src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, long long f) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    m(dst, j) = checked_add(m(dst, j), checked_mul(f, m(src, j)));
}
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, long long f) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    m(i, dst) = checked_add(m(i, dst), checked_mul(f, m(i, src)));
}

}  // namespace

std::vector<long long> SmithForm::diagonal() const {
  std::vector<long long> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (long long v : diagonal())
    if (v != 0) ++r;
  return r;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix s = a, u = IntMatrix::identity(m), v = IntMatrix::identity(n);
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (pr == m || std::llabs(s(i, j)) < std::llabs(s(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == m) break;
      if (pr != t) {
        swap_rows(s, pr, t);
        swap_rows(u, pr, t);
      }
      if (pc != t) {
        swap_cols(s, pc, t);
        swap_cols(v, pc, t);
      }
      bool clear = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        long long q = s(i, t) / s(t, t);
        if (q != 0) {
          add_row(s, i, t, -q);
          add_row(u, i, t, -q);
        }
        if (s(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        long long q = s(t, j) / s(t, t);
        if (q != 0) {
          add_col(s, j, t, -q);
          add_col(v, j, t, -q);
        }
        if (s(t, j) != 0) clear = false;
      }
      if (!clear) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(s, t, bad, 1);
      add_row(u, t, bad, 1);
    }
    if (s(t, t) < 0) {
      add_row(s, t, t, -2);
      add_row(u, t, t, -2);
    }
  }
  if (!(u * a * v == s) || !s.is_diagonal())
    throw InconsistencyError("Smith normal form failed re-verification for " + a.str());
  if (std::llabs(u.determinant()) != 1 || std::llabs(v.determinant()) != 1)
    throw InconsistencyError("Smith normal form transforms are not unimodular for " + a.str());
  for (std::size_t t = 0; t + 1 < std::min(m, n); ++t) {
    long long d = s(t, t), e = s(t + 1, t + 1);
    if (d == 0 ? e != 0 : e % d != 0)
      throw InconsistencyError("Smith normal form divisibility chain broken for " + a.str());
  }
  return SmithForm{std::move(u), std::move(s), std::move(v)};
}

Rat frac(const Rat& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return x - Rat::parse(fl.get_str());
}

CongruenceSolution solve_congruence(const IntMatrix& a, const std::vector<Rat>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("congruence: shape mismatch");
  SmithForm snf = smith_normal_form(a);
  const std::size_t n = a.cols();
  std::vector<Rat> ub = snf.U.apply(b);
  std::vector<long long> d = snf.diagonal();
  const std::size_t r = snf.rank();
  CongruenceSolution sol;
  for (std::size_t k = r; k < ub.size(); ++k)
    if (!ub[k].is_integer()) return sol;
  sol.solvable = true;
  for (std::size_t k = r; k < n; ++k) {
    std::vector<long long> dir(n);
    for (std::size_t i = 0; i < n; ++i) dir[i] = snf.V(i, k);
    sol.directions.push_back(std::move(dir));
  }
  // Odometer over y_k = (ub_k + j_k) / d_k, 0 <= j_k < d_k.
  std::vector<long long> j(r, 0);
  for (;;) {
    std::vector<Rat> y(n);
    for (std::size_t k = 0; k < r; ++k) y[k] = (ub[k] + Rat(j[k])) / Rat(d[k]);
    std::vector<Rat> x = snf.V.apply(y);
    for (Rat& xi : x) xi = frac(xi);
    sol.translates.push_back(std::move(x));
    std::size_t k = 0;
    while (k < r && ++j[k] == d[k]) j[k++] = 0;
    if (k == r) break;
  }
  return sol;
}

}  // namespace orbicheck
