#include "nfdyn/qlinalg.hpp"

#include <cassert>
#include <cstdlib>

namespace nfdyn {

QMat QMat::identity(std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ZMat ZMat::identity(std::size_t n) {
  ZMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat mul(const QMat& x, const QMat& y) {
  assert(x.cols == y.rows);
  QMat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

QVec mul(const QMat& x, const QVec& v) {
  assert(x.cols == v.size());
  QVec r(x.rows, mpq_class(0));
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
  return r;
}

ZMat mul(const ZMat& x, const ZMat& y) {
  assert(x.cols == y.rows);
  ZMat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

ZVec mul(const ZMat& x, const ZVec& v) {
  assert(x.cols == v.size());
  ZVec r(x.rows, mpz_class(0));
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
  return r;
}

QMat to_rational(const ZMat& m) {
  QMat r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = mpq_class(m.a[i]);
  return r;
}

mpq_class det(QMat m) {
  assert(m.rows == m.cols);
  const std::size_t n = m.rows;
  mpq_class d(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return mpq_class(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      mpq_class f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return d;
}

namespace {

// Row echelon reduction in place; returns pivot column list.
std::vector<std::size_t> row_echelon(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && m(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    mpq_class inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      mpq_class f = m(i, col);
      for (std::size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(QMat m) { return row_echelon(m).size(); }

std::optional<QVec> solve(QMat m, QVec b) {
  assert(m.rows == m.cols && b.size() == m.rows);
  const std::size_t n = m.rows;
  QMat aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = row_echelon(aug);
  if (pivots.size() != n || (!pivots.empty() && pivots.back() == n)) return std::nullopt;
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

std::vector<QVec> nullspace(QMat m) {
  const std::size_t nc = m.cols;
  auto pivots = row_echelon(m);
  std::vector<bool> is_pivot(nc, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t free_col = 0; free_col < nc; ++free_col) {
    if (is_pivot[free_col]) continue;
    QVec v(nc, mpq_class(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (pivots[r] < free_col) v[pivots[r]] = -m(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

QVec charpoly(const QMat& m) {
  assert(m.rows == m.cols);
  const std::size_t n = m.rows;
  QVec c(n + 1, mpq_class(0));
  c[n] = 1;
  QMat mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      QMat t = mk;
      for (std::size_t i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
      mk = mul(m, t);
    }
    mpq_class tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
    c[n - k] = -tr / mpq_class(static_cast<unsigned long>(k));
  }
  return c;
}

namespace {

void swap_cols(ZMat& m, std::size_t j1, std::size_t j2) {
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, j1), m(i, j2));
}

void addmul_col(ZMat& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  for (std::size_t i = 0; i < m.rows; ++i) m(i, dst) += f * m(i, src);
}

void negate_col(ZMat& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = -m(i, j);
}

// Column Hermite reduction of h with optional unimodular transform tracking.
// Returns the number of pivot columns; zero columns end up on the right.
std::size_t hnf_transform(ZMat& h, ZMat* u) {
  std::size_t pc = 0;
  for (std::size_t row = 0; row < h.rows && pc < h.cols; ++row) {
    // gcd elimination across columns pc..end on this row
    for (;;) {
      std::size_t best = h.cols;
      for (std::size_t j = pc; j < h.cols; ++j) {
        if (h(row, j) == 0) continue;
        if (best == h.cols || cmp(abs(h(row, j)), abs(h(row, best))) < 0) best = j;
      }
      if (best == h.cols) break;  // all-zero row segment
      if (best != pc) {
        swap_cols(h, pc, best);
        if (u) swap_cols(*u, pc, best);
      }
      bool done = true;
      for (std::size_t j = pc + 1; j < h.cols; ++j) {
        if (h(row, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), h(row, j).get_mpz_t(), h(row, pc).get_mpz_t());
        addmul_col(h, j, pc, -q);
        if (u) addmul_col(*u, j, pc, -q);
        if (h(row, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, pc) == 0) continue;  // no pivot in this row
    if (h(row, pc) < 0) {
      negate_col(h, pc);
      if (u) negate_col(*u, pc);
    }
    for (std::size_t j = 0; j < pc; ++j) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), h(row, j).get_mpz_t(), h(row, pc).get_mpz_t());
      if (q != 0) {
        addmul_col(h, j, pc, -q);
        if (u) addmul_col(*u, j, pc, -q);
      }
    }
    ++pc;
  }
  return pc;
}

}  // namespace

ZMat hnf(const ZMat& m) {
  ZMat h = m;
  hnf_transform(h, nullptr);
  return h;
}

std::vector<ZVec> integer_kernel(const ZMat& m) {
  const std::size_t nc = m.cols;
  if (m.rows == 0) {
    std::vector<ZVec> basis;
    for (std::size_t j = 0; j < nc; ++j) {
      ZVec e(nc, mpz_class(0));
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  ZMat h = m;
  ZMat u = ZMat::identity(nc);
  std::size_t pc = hnf_transform(h, &u);
  std::vector<ZVec> basis;
  for (std::size_t j = pc; j < nc; ++j) {
    ZVec v(nc);
    for (std::size_t i = 0; i < nc; ++i) v[i] = u(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

ZVec primitive_integer(const QVec& v) {
  mpz_class den(1);
  for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  ZVec z(v.size());
  mpz_class g(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class s = v[i] * den;
    z[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : z) x /= g;
  return z;
}

std::vector<ZVec> annihilator(const std::vector<QVec>& span, std::size_t dim) {
  ZMat m(span.size(), dim);
  for (std::size_t i = 0; i < span.size(); ++i) {
    ZVec row = primitive_integer(span[i]);
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = row[j];
  }
  return integer_kernel(m);
}

std::vector<ZVec> saturate_span(const std::vector<QVec>& span, std::size_t dim) {
  auto ann = annihilator(span, dim);
  ZMat c(ann.size(), dim);
  for (std::size_t i = 0; i < ann.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) c(i, j) = ann[i][j];
  auto basis = integer_kernel(c);
  // canonicalize via HNF of the basis matrix
  if (basis.empty()) return basis;
  ZMat b(dim, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) b(i, j) = basis[j][i];
  hnf_transform(b, nullptr);
  std::vector<ZVec> out;
  for (std::size_t j = 0; j < b.cols; ++j) {
    ZVec v(dim);
    bool zero = true;
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] = b(i, j);
      if (v[i] != 0) zero = false;
    }
    if (!zero) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace nfdyn
