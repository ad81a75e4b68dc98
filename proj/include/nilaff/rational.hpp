#ifndef NILAFF_RATIONAL_HPP
#define NILAFF_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace nilaff {

enum class ErrorKind {
  Dimension,   // shape mismatch between operands
  Input,       // invalid mathematical input (singular matrix, failed invariant, ...)
  Scope,       // outside the supported class (needs a declared hull, etc.)
  Parse,       // workspace syntax error
  Internal,    // contradicts a theorem; indicates a bug or lying input
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator. Equality is structural, which by the normal form is the
/// same as numeric equality.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long n, long d) : v_(n, d) {
    if (d == 0) fail(ErrorKind::Input, "rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) fail(ErrorKind::Input, "rational with zero denominator");
    v_.canonicalize();
  }

  /// Parses "p", "-p" or "p/q".
  static Rat parse(const std::string& s);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) fail(ErrorKind::Input, "rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat inv() const {
    if (is_zero()) fail(ErrorKind::Input, "inverse of zero");
    return Rat(mpq_class(1) / v_);
  }

  std::string str() const;

private:
  explicit Rat(const mpq_class& q) : v_(q) {}
  mpq_class v_;  // invariant: canonical (reduced, positive denominator)
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

}  // namespace nilaff

#endif
