#ifndef NILAFF_MULTIPOLY_HPP
#define NILAFF_MULTIPOLY_HPP

#include <map>
#include <vector>

#include "nilaff/matrix.hpp"

namespace nilaff {

using Exponents = std::vector<int>;

/// Multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept in a map keyed by exponent vector (lexicographic order),
/// with no zero coefficients stored.
class MultiPoly {
public:
  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {}
  static MultiPoly constant(int nvars, const Rat& c);
  static MultiPoly variable(int nvars, int i);
  static MultiPoly monomial(int nvars, const Exponents& e, const Rat& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  Rat coeff(const Exponents& e) const;
  Rat constant_term() const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int weighted_degree(const std::vector<int>& weights) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Rat& c, MultiPoly a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  Rat eval(const QVector& point) const;
  /// Substitutes args[i] for variable i; args share a common variable count.
  MultiPoly substitute(const std::vector<MultiPoly>& args) const;

  std::string str(const std::vector<std::string>& var_names = {}) const;

private:
  void set(const Exponents& e, Rat c);
  int nvars_;
  std::map<Exponents, Rat> terms_;
};

/// Ring tags for code that is generic over Q and Q[x1..xn].
struct RatRing {
  using Elem = Rat;
  Rat zero() const { return Rat(0); }
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat sub(const Rat& a, const Rat& b) const { return a - b; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
  Rat scale(const Rat& c, const Rat& a) const { return c * a; }
};

struct PolyRing {
  using Elem = MultiPoly;
  int nvars;
  MultiPoly zero() const { return MultiPoly(nvars); }
  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const { return a + b; }
  MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const { return a - b; }
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const { return a * b; }
  MultiPoly scale(const Rat& c, const MultiPoly& a) const { return c * a; }
};

}  // namespace nilaff

#endif
