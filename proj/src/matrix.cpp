#include "nilaff/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace nilaff {

QMatrix::QMatrix(int rows, int cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != static_cast<size_t>(rows) * cols)
    fail(ErrorKind::Dimension, "matrix entry count does not match shape");
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

QMatrix QMatrix::unit(int n, int m, int i, int j) {
  QMatrix r(n, m);
  r.at(i, j) = Rat(1);
  return r;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return QMatrix(0, 0);
  QMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i) {
    if (rows[i].size() != static_cast<size_t>(m.cols_))
      fail(ErrorKind::Dimension, "ragged rows");
    for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols) {
  if (cols.empty()) return QMatrix(0, 0);
  QMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols_; ++j) {
    if (cols[j].size() != static_cast<size_t>(m.rows_))
      fail(ErrorKind::Dimension, "ragged columns");
    for (int i = 0; i < m.rows_; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

QVector QMatrix::row(int i) const {
  QVector r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

QVector QMatrix::col(int j) const {
  QVector c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Dimension, "matrix sum shape");
  for (size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::Dimension, "matrix diff shape");
  for (size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::Dimension, "matrix product shape");
  QMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rat& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b.at(k, j).is_zero()) continue;
        c.at(i, j) += aik * b.at(k, j);
      }
    }
  return c;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  if (a.cols_ != static_cast<int>(v.size()))
    fail(ErrorKind::Dimension, "matrix-vector shape");
  QVector r(a.rows_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      if (!a.at(i, j).is_zero()) r[i] += a.at(i, j) * v[j];
  return r;
}

QMatrix operator*(const Rat& c, QMatrix a) {
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) a.at(i, j) *= c;
  return a;
}

bool QMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Rat& r) { return r.is_zero(); });
}

bool QMatrix::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? Rat(1) : Rat(0))) return false;
  return true;
}

QMatrix QMatrix::pow(unsigned k) const {
  if (!is_square()) fail(ErrorKind::Dimension, "power of non-square matrix");
  QMatrix r = identity(rows_);
  QMatrix base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

std::string QMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

QVector operator+(QVector a, const QVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::Dimension, "vector sum shape");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

QVector operator-(QVector a, const QVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::Dimension, "vector diff shape");
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

QVector operator*(const Rat& c, QVector v) {
  for (auto& x : v) x *= c;
  return v;
}

QVector negate(QVector v) {
  for (auto& x : v) x = -x;
  return v;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r.is_zero(); });
}

std::vector<int> rref_in_place(QMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = m.at(r, c).inv();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(const QMatrix& a) {
  QMatrix m = a;
  return static_cast<int>(rref_in_place(m).size());
}

std::vector<QVector> kernel_basis(const QMatrix& a) {
  QMatrix m = a;
  std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<QVector> basis;
  for (int c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    QVector v(a.cols());
    v[c] = Rat(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  // Reduced column echelon form: echelonize the basis vectors and rescale so
  // each leading entry is 1, for deterministic output.
  if (!basis.empty()) {
    QMatrix bm = QMatrix::from_rows(basis);
    rref_in_place(bm);
    basis.clear();
    for (int i = 0; i < bm.rows(); ++i) {
      QVector v = bm.row(i);
      if (!is_zero(v)) basis.push_back(std::move(v));
    }
  }
  return basis;
}

AffineSolutionSpace solve_linear(const QMatrix& a, const QVector& b) {
  if (static_cast<int>(b.size()) != a.rows())
    fail(ErrorKind::Dimension, "solve_linear: rhs length != rows");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<int> pivots = rref_in_place(aug);

  AffineSolutionSpace out;
  out.kernel_basis = kernel_basis(a);
  if (!pivots.empty() && pivots.back() == a.cols()) return out;  // b not in image

  QVector x(a.cols());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
  out.particular = std::move(x);
  return out;
}

std::optional<QMatrix> try_inverse(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Dimension, "inverse of non-square matrix");
  int n = a.rows();
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Rat(1);
  }
  std::vector<int> pivots = rref_in_place(aug);
  if (static_cast<int>(pivots.size()) < n || (n > 0 && pivots[n - 1] != n - 1))
    return std::nullopt;
  QMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

QMatrix inverse(const QMatrix& a) {
  auto inv = try_inverse(a);
  if (!inv) fail(ErrorKind::Input, "matrix is singular");
  return *inv;
}

Rat determinant(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Dimension, "determinant of non-square matrix");
  QMatrix m = a;
  int n = m.rows();
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!m.at(i, c).is_zero()) { p = i; break; }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    Rat inv = m.at(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      Rat f = m.at(i, c) * inv;
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

Rat trace(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Dimension, "trace of non-square matrix");
  Rat t;
  for (int i = 0; i < a.rows(); ++i) t += a.at(i, i);
  return t;
}

QVector SpanBuilder::reduce(QVector v, QVector* coeffs) const {
  if (coeffs) coeffs->assign(basis_.size(), Rat(0));
  for (size_t k = 0; k < basis_.size(); ++k) {
    const Rat& c = v[pivots_[k]];
    if (c.is_zero()) continue;
    Rat f = c;  // basis vectors have pivot entry 1
    if (coeffs) (*coeffs)[k] = f;
    for (int j = 0; j < dim_; ++j)
      if (!basis_[k][j].is_zero()) v[j] -= f * basis_[k][j];
  }
  return v;
}

bool SpanBuilder::add(const QVector& v) {
  if (static_cast<int>(v.size()) != dim_) fail(ErrorKind::Dimension, "span add shape");
  QVector r = reduce(v, nullptr);
  int piv = -1;
  for (int j = 0; j < dim_; ++j)
    if (!r[j].is_zero()) { piv = j; break; }
  if (piv < 0) return false;
  Rat inv = r[piv].inv();
  for (auto& x : r) x *= inv;
  // keep the stored basis fully reduced against the new vector
  for (size_t k = 0; k < basis_.size(); ++k) {
    Rat f = basis_[k][piv];
    if (f.is_zero()) continue;
    for (int j = 0; j < dim_; ++j) basis_[k][j] -= f * r[j];
  }
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  basis_.insert(basis_.begin() + pos, std::move(r));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool SpanBuilder::contains(const QVector& v) const { return is_zero(reduce(v, nullptr)); }

std::optional<QVector> SpanBuilder::coordinates(const QVector& v) const {
  QVector coeffs;
  QVector r = reduce(v, &coeffs);
  if (!is_zero(r)) return std::nullopt;
  return coeffs;
}

}  // namespace nilaff
