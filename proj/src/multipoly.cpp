#include "nilaff/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace nilaff {

MultiPoly MultiPoly::constant(int nvars, const Rat& c) {
  MultiPoly p(nvars);
  p.set(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) fail(ErrorKind::Dimension, "variable index out of range");
  MultiPoly p(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.set(e, Rat(1));
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, const Exponents& e, const Rat& c) {
  if (static_cast<int>(e.size()) != nvars) fail(ErrorKind::Dimension, "monomial exponent size");
  MultiPoly p(nvars);
  p.set(e, c);
  return p;
}

void MultiPoly::set(const Exponents& e, Rat c) {
  if (c.is_zero()) terms_.erase(e);
  else terms_[e] = std::move(c);
}

Rat MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat MultiPoly::constant_term() const { return coeff(Exponents(nvars_, 0)); }

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::weighted_degree(const std::vector<int>& weights) const {
  if (static_cast<int>(weights.size()) != nvars_)
    fail(ErrorKind::Dimension, "weighted_degree: weight count");
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int i = 0; i < nvars_; ++i) s += e[i] * weights[i];
    d = std::max(d, s);
  }
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (nvars_ != o.nvars_) fail(ErrorKind::Dimension, "polynomial sum variable count");
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) terms_[e] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) fail(ErrorKind::Dimension, "polynomial product variable count");
  MultiPoly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(a.nvars_);
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) r.terms_[e] = ca * cb;
      else {
        it->second += ca * cb;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  return r;
}

MultiPoly operator*(const Rat& c, MultiPoly a) {
  if (c.is_zero()) return MultiPoly(a.nvars_);
  for (auto& [e, x] : a.terms_) x *= c;
  return a;
}

Rat MultiPoly::eval(const QVector& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    fail(ErrorKind::Dimension, "polynomial evaluation point size");
  Rat r;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& args) const {
  if (static_cast<int>(args.size()) != nvars_)
    fail(ErrorKind::Dimension, "substitution argument count");
  int out_vars = args.empty() ? 0 : args[0].nvars();
  for (const auto& a : args)
    if (a.nvars() != out_vars) fail(ErrorKind::Dimension, "substitution arguments disagree");
  // Cache powers of each argument as needed.
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  for (int i = 0; i < nvars_; ++i) powers[i].push_back(MultiPoly::constant(out_vars, Rat(1)));
  auto power = [&](int i, int k) -> const MultiPoly& {
    while (static_cast<int>(powers[i].size()) <= k)
      powers[i].push_back(powers[i].back() * args[i]);
    return powers[i][k];
  };
  MultiPoly r(out_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = MultiPoly::constant(out_vars, c);
    for (int i = 0; i < nvars_; ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    r += t;
  }
  return r;
}

std::string MultiPoly::str(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int i) {
    if (i < static_cast<int>(var_names.size())) return var_names[i];
    return "x" + std::to_string(i + 1);
  };
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
    if (!has_var || !c.is_one()) os << c.str();
    bool printed = !has_var || !c.is_one();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << name(i);
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace nilaff
