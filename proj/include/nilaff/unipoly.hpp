#ifndef NILAFF_UNIPOLY_HPP
#define NILAFF_UNIPOLY_HPP

#include <vector>

#include "nilaff/matrix.hpp"

namespace nilaff {

/// Dense univariate polynomial over Q, coefficient of t^i at index i.
/// Normal form: no trailing zero coefficients (zero polynomial is {}).
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UniPoly constant(const Rat& r) { return UniPoly({r}); }
  static UniPoly x() { return UniPoly({Rat(0), Rat(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Rat& coeff(int i) const;
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat lead() const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rat& c, UniPoly a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly derivative() const;
  UniPoly monic() const;
  Rat eval(const Rat& t) const;
  QMatrix eval(const QMatrix& m) const;  // Horner

  std::string str() const;

private:
  void trim();
  std::vector<Rat> c_;
};

/// Quotient and remainder of a by b.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic
/// Extended gcd: g = u*a + v*b with g monic.
struct XGcd { UniPoly g, u, v; };
XGcd xgcd(const UniPoly& a, const UniPoly& b);
/// Squarefree part a / gcd(a, a').
UniPoly squarefree_part(const UniPoly& a);
bool is_squarefree(const UniPoly& a);

/// Characteristic polynomial det(tI - A) by the Faddeev-LeVerrier recursion.
UniPoly char_poly(const QMatrix& a);
UniPoly min_poly(const QMatrix& a);

}  // namespace nilaff

#endif
