#include "nilaff/unipoly.hpp"

#include <sstream>

namespace nilaff {

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rat& UniPoly::coeff(int i) const {
  static const Rat zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[i];
}

Rat UniPoly::lead() const {
  if (is_zero()) fail(ErrorKind::Input, "leading coefficient of zero polynomial");
  return c_.back();
}

UniPoly UniPoly::operator-() const {
  std::vector<Rat> r = c_;
  for (auto& x : r) x = -x;
  return UniPoly(std::move(r));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(r));
}

UniPoly operator*(const Rat& c, UniPoly a) {
  for (auto& x : a.c_) x *= c;
  a.trim();
  return a;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rat> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return lead().inv() * *this;
}

Rat UniPoly::eval(const Rat& t) const {
  Rat r;
  for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
  return r;
}

QMatrix UniPoly::eval(const QMatrix& m) const {
  if (!m.is_square()) fail(ErrorKind::Dimension, "polynomial of non-square matrix");
  QMatrix r = QMatrix::zero(m.rows(), m.rows());
  for (size_t i = c_.size(); i-- > 0;) {
    r = r * m;
    for (int d = 0; d < m.rows(); ++d) r.at(d, d) += c_[i];
  }
  return r;
}

std::string UniPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || !c_[i].is_one()) os << c_[i].str();
    if (i > 0) {
      if (!c_[i].is_one()) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) fail(ErrorKind::Input, "polynomial division by zero");
  UniPoly rem = a;
  std::vector<Rat> q(std::max<int>(a.degree() - b.degree() + 1, 0));
  Rat lead_inv = b.lead().inv();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int d = rem.degree() - b.degree();
    Rat f = rem.lead() * lead_inv;
    q[d] = f;
    std::vector<Rat> shift(d + b.degree() + 1);
    for (int i = 0; i <= b.degree(); ++i) shift[d + i] = f * b.coeff(i);
    rem = rem - UniPoly(std::move(shift));
  }
  return {UniPoly(std::move(q)), rem};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

XGcd xgcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(Rat(1)), s1;
  UniPoly t0, t1 = UniPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1; r1 = r;
    UniPoly s = s0 - q * s1; s0 = s1; s1 = s;
    UniPoly t = t0 - q * t1; t0 = t1; t1 = t;
  }
  Rat norm = r0.lead().inv();
  return {norm * r0, norm * s0, norm * t0};
}

UniPoly squarefree_part(const UniPoly& a) {
  if (a.is_zero() || a.degree() == 0) return a.monic();
  UniPoly g = gcd(a, a.derivative());
  return divmod(a, g).first.monic();
}

bool is_squarefree(const UniPoly& a) {
  if (a.is_zero()) return false;
  if (a.degree() == 0) return true;
  return gcd(a, a.derivative()).degree() == 0;
}

UniPoly char_poly(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Dimension, "char_poly of non-square matrix");
  int n = a.rows();
  // p(t) = t^n + c[1] t^(n-1) + ... + c[n]
  std::vector<Rat> c(n + 1);
  QMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      QMatrix shifted = m;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += c[k - 1];
      m = a * shifted;
    }
    c[k] = -(Rat(1, k) * trace(m));
  }
  std::vector<Rat> coeffs(n + 1);
  coeffs[n] = Rat(1);
  for (int k = 1; k <= n; ++k) coeffs[n - k] = c[k];
  return UniPoly(std::move(coeffs));
}

UniPoly min_poly(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Dimension, "min_poly of non-square matrix");
  int n = a.rows();
  // Smallest k with I, A, ..., A^k linearly dependent, via the span of
  // flattened powers.
  SpanBuilder span(n * n);
  std::vector<QMatrix> powers;
  QMatrix p = QMatrix::identity(n);
  while (true) {
    if (!span.add(p.entries())) {
      QMatrix rows(static_cast<int>(powers.size()), n * n);
      for (size_t i = 0; i < powers.size(); ++i) {
        const auto& e = powers[i].entries();
        for (int j = 0; j < n * n; ++j) rows.at(static_cast<int>(i), j) = e[j];
      }
      auto sol = solve_linear(rows.transpose(), p.entries());
      if (sol.empty()) fail(ErrorKind::Internal, "min_poly: dependency lost");
      std::vector<Rat> coeffs(powers.size() + 1);
      for (size_t i = 0; i < powers.size(); ++i) coeffs[i] = -(*sol.particular)[i];
      coeffs[powers.size()] = Rat(1);
      return UniPoly(std::move(coeffs));
    }
    powers.push_back(p);
    p = p * a;
  }
}

}  // namespace nilaff
