#ifndef NILAFF_JORDAN_HPP
#define NILAFF_JORDAN_HPP

#include "nilaff/matrix.hpp"
#include "nilaff/unipoly.hpp"

namespace nilaff {

/// Multiplicative Jordan decomposition A = semisimple * unipotent with the
/// two factors commuting; both are polynomials in A over Q.
struct JordanPair {
  QMatrix semisimple;
  QMatrix unipotent;
};

/// Nilpotency index (smallest k with A^k = 0), or -1 if A is not nilpotent.
int nilpotency_index(const QMatrix& a);
bool is_nilpotent(const QMatrix& a);
/// True iff (A - I) is nilpotent.
bool is_unipotent_matrix(const QMatrix& a);

/// Finite logarithm series of a unipotent matrix; log(exp(X)) = X exactly.
QMatrix nilpotent_log(const QMatrix& a);
/// Finite exponential series of a nilpotent matrix.
QMatrix nilpotent_exp(const QMatrix& x);

/// Jordan-Chevalley decomposition of an invertible rational matrix, computed
/// by Newton iteration against the squarefree part of the characteristic
/// polynomial; stays inside Q throughout.
JordanPair jordan_chevalley(const QMatrix& a);

}  // namespace nilaff

#endif
