#ifndef NILAFF_MATRIX_HPP
#define NILAFF_MATRIX_HPP

#include <optional>
#include <vector>

#include "nilaff/rational.hpp"

namespace nilaff {

using QVector = std::vector<Rat>;

/// Dense rational matrix, row-major.
class QMatrix {
public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
  QMatrix(int rows, int cols, std::vector<Rat> entries);

  static QMatrix identity(int n);
  static QMatrix zero(int n, int m) { return QMatrix(n, m); }
  /// Elementary matrix with a single 1 at (i, j), zero-based.
  static QMatrix unit(int n, int m, int i, int j);
  static QMatrix from_rows(const std::vector<QVector>& rows);
  static QMatrix from_columns(const std::vector<QVector>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  QVector row(int i) const;
  QVector col(int j) const;
  QMatrix transpose() const;
  /// Entries flattened row-major; used to treat matrices as vectors.
  const std::vector<Rat>& entries() const { return e_; }

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QVector operator*(const QMatrix& a, const QVector& v);
  friend QMatrix operator*(const Rat& c, QMatrix a);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

  bool is_zero() const;
  bool is_identity() const;

  QMatrix pow(unsigned k) const;

  std::string str() const;

private:
  int rows_, cols_;
  std::vector<Rat> e_;
};

QMatrix commutator(const QMatrix& a, const QMatrix& b);  // ab - ba

QVector operator+(QVector a, const QVector& b);
QVector operator-(QVector a, const QVector& b);
QVector operator*(const Rat& c, QVector v);
QVector negate(QVector v);
bool is_zero(const QVector& v);

/// Result of solving A x = b: a particular solution when one exists plus a
/// basis of ker A in reduced column echelon form.
struct AffineSolutionSpace {
  std::optional<QVector> particular;
  std::vector<QVector> kernel_basis;
  bool empty() const { return !particular.has_value(); }
};

AffineSolutionSpace solve_linear(const QMatrix& a, const QVector& b);
std::vector<QVector> kernel_basis(const QMatrix& a);

/// Reduced row echelon form; returns pivot columns.
std::vector<int> rref_in_place(QMatrix& m);
int rank(const QMatrix& a);
std::optional<QMatrix> try_inverse(const QMatrix& a);
QMatrix inverse(const QMatrix& a);  // throws on singular input
Rat determinant(const QMatrix& a);
Rat trace(const QMatrix& a);

/// Incrementally maintained row space with an echelonized basis. Used for
/// span membership, Lie algebra closures and deterministic basis extraction.
class SpanBuilder {
public:
  explicit SpanBuilder(int ambient_dim) : dim_(ambient_dim) {}

  /// Adds a vector; returns true if it enlarged the span.
  bool add(const QVector& v);
  bool contains(const QVector& v) const;
  /// Coordinates of v in the echelon basis, if v lies in the span.
  std::optional<QVector> coordinates(const QVector& v) const;
  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient_dim() const { return dim_; }
  const std::vector<QVector>& basis() const { return basis_; }

private:
  QVector reduce(QVector v, QVector* coeffs) const;
  int dim_;
  std::vector<QVector> basis_;  // echelonized: pivot entry 1, pivots increasing
  std::vector<int> pivots_;
};

}  // namespace nilaff

#endif
