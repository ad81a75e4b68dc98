#include "nilaff/jordan.hpp"

namespace nilaff {

int nilpotency_index(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Dimension, "nilpotency of non-square matrix");
  if (a.rows() == 0) return 1;
  QMatrix p = a;
  for (int k = 1; k <= a.rows(); ++k) {
    if (p.is_zero()) return k;
    p = p * a;
  }
  return -1;
}

bool is_nilpotent(const QMatrix& a) { return nilpotency_index(a) >= 0; }

bool is_unipotent_matrix(const QMatrix& a) {
  return is_nilpotent(a - QMatrix::identity(a.rows()));
}

QMatrix nilpotent_log(const QMatrix& a) {
  QMatrix x = a - QMatrix::identity(a.rows());
  int idx = nilpotency_index(x);
  if (idx < 0) fail(ErrorKind::Input, "nilpotent_log: matrix is not unipotent");
  QMatrix result = QMatrix::zero(a.rows(), a.rows());
  QMatrix p = x;
  for (int k = 1; k < idx; ++k) {
    Rat c(k % 2 == 1 ? 1 : -1, k);
    result += c * p;
    p = p * x;
  }
  return result;
}

QMatrix nilpotent_exp(const QMatrix& x) {
  int idx = nilpotency_index(x);
  if (idx < 0) fail(ErrorKind::Input, "nilpotent_exp: matrix is not nilpotent");
  QMatrix result = QMatrix::identity(x.rows());
  QMatrix p = x;
  Rat fact(1);
  for (int k = 1; k < idx; ++k) {
    fact /= Rat(k);
    result += fact * p;
    p = p * x;
  }
  return result;
}

JordanPair jordan_chevalley(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Dimension, "jordan_chevalley of non-square matrix");
  int n = a.rows();
  if (n == 0) return {a, a};
  UniPoly chi = char_poly(a);
  if (chi.coeff(0).is_zero()) fail(ErrorKind::Input, "jordan_chevalley: singular matrix");

  UniPoly f = squarefree_part(chi);
  // f and f' are coprime, so f'(S) is invertible modulo the f-adic filtration:
  // with u*f + v*f' = 1, the Newton step S -> S - f(S) v(S) squares the order
  // of vanishing of f(S). f(A) is nilpotent since f^n is divisible by chi.
  XGcd e = xgcd(f, f.derivative());
  if (e.g.degree() != 0)
    fail(ErrorKind::Internal, "squarefree part shares a factor with its derivative");
  Rat norm = e.g.coeff(0).inv();
  UniPoly v = norm * e.v;

  QMatrix s = a;
  int guard = 0;
  while (true) {
    QMatrix fs = f.eval(s);
    if (fs.is_zero()) break;
    if (++guard > n + 2) fail(ErrorKind::Internal, "jordan_chevalley did not converge");
    s = s - fs * v.eval(s);
  }
  QMatrix u = inverse(s) * a;
  if (!is_unipotent_matrix(u)) fail(ErrorKind::Internal, "jordan_chevalley: unipotent factor check failed");
  if (s * u != u * s) fail(ErrorKind::Internal, "jordan_chevalley: factors do not commute");
  return {s, u};
}

}  // namespace nilaff
