#include "nilaff/affine.hpp"

#include <algorithm>
#include <sstream>

namespace nilaff {

AffTrans::AffTrans(GroupPoint translation, LieMorphism automorphism)
    : translation_(std::move(translation)), aut_(std::move(automorphism)) {
  require_same_algebra(translation_.algebra, aut_.source(), "AffTrans");
  require_same_algebra(aut_.source(), aut_.target(), "AffTrans automorphism");
  if (!aut_.is_invertible())
    fail(ErrorKind::Input, "affine transformation needs an invertible automorphism part");
}

AffTrans AffTrans::identity(AlgebraRef alg) {
  return AffTrans(GroupPoint::identity(alg), LieMorphism::identity(alg));
}

AffTrans AffTrans::left_translation(GroupPoint m) {
  LieMorphism id = LieMorphism::identity(m.algebra);
  return AffTrans(std::move(m), std::move(id));
}

AffTrans AffTrans::automorphism(LieMorphism d) {
  GroupPoint e = GroupPoint::identity(d.source());
  return AffTrans(std::move(e), std::move(d));
}

GroupPoint AffTrans::act(const GroupPoint& n) const {
  return bch_multiply(translation_, aut_.apply(n));
}

bool AffTrans::is_identity() const {
  return translation_.is_identity() && aut_.matrix().is_identity();
}

std::string AffTrans::str() const {
  std::ostringstream os;
  os << "(translation = " << translation_.str() << "; auto = " << aut_.matrix().str() << ")";
  return os.str();
}

GroupPoint aff_act(const AffTrans& g, const GroupPoint& n) { return g.act(n); }

AffTrans aff_compose(const AffTrans& g, const AffTrans& h) {
  require_same_algebra(g.algebra(), h.algebra(), "aff_compose");
  GroupPoint x = bch_multiply(g.translation(), g.aut().apply(h.translation()));
  return AffTrans(std::move(x), g.aut().compose(h.aut()));
}

AffTrans aff_inverse(const AffTrans& g) {
  LieMorphism inv = g.aut().inverse();
  GroupPoint x = inv.apply(g.translation().inverse());
  return AffTrans(std::move(x), std::move(inv));
}

AffTrans aff_conjugate(const AffTrans& g, const AffTrans& h) {
  return aff_compose(aff_compose(g, h), aff_inverse(g));
}

AffTrans aff_power(const AffTrans& g, long k) {
  AffTrans base = k < 0 ? aff_inverse(g) : g;
  long n = k < 0 ? -k : k;
  AffTrans r = AffTrans::identity(g.algebra());
  for (long i = 0; i < n; ++i) r = aff_compose(r, base);
  return r;
}

AffMap::AffMap(GroupPoint x, LieMorphism delta)
    : translation(std::move(x)), morphism(std::move(delta)) {
  require_same_algebra(translation.algebra, morphism.target(), "AffMap");
}

GroupPoint AffMap::apply(const GroupPoint& n) const {
  return bch_multiply(morphism.apply(n), translation);
}

std::string AffMap::str() const {
  std::ostringstream os;
  os << "(translation = " << translation.str() << "; morphism = " << morphism.matrix().str()
     << ")";
  return os.str();
}

GroupPoint affmap_apply(const AffMap& alpha, const GroupPoint& n) { return alpha.apply(n); }

std::pair<GroupPoint, LieMorphism> affmap_to_left_form(const AffMap& alpha) {
  QMatrix ad_inv = ad_action(alpha.translation.inverse());
  LieMorphism tilde(alpha.morphism.source(), alpha.morphism.target(),
                    ad_inv * alpha.morphism.matrix());
  return {alpha.translation, std::move(tilde)};
}

AffMap affmap_compose_left(const AffTrans& g, const AffMap& alpha) {
  require_same_algebra(g.algebra(), alpha.target(), "affmap_compose_left");
  GroupPoint x = bch_multiply(g.translation(), g.aut().apply(alpha.translation));
  QMatrix m = ad_action(g.translation()) * g.aut().matrix() * alpha.morphism.matrix();
  return AffMap(std::move(x), LieMorphism(alpha.source(), alpha.target(), std::move(m)));
}

AffMap affmap_compose_right(const AffMap& alpha, const AffTrans& g) {
  require_same_algebra(g.algebra(), alpha.source(), "affmap_compose_right");
  GroupPoint dx = alpha.morphism.apply(g.translation());
  GroupPoint x = bch_multiply(dx, alpha.translation);
  QMatrix m = ad_action(dx) * alpha.morphism.matrix() * g.aut().matrix();
  return AffMap(std::move(x), LieMorphism(alpha.source(), alpha.target(), std::move(m)));
}

Linearization::Linearization(AlgebraRef alg) : alg_(std::move(alg)) {
  int n = alg_->dim();
  int c = std::max(alg_->nilpotency_class(), 1);
  // All monomials of weighted degree in [1, c], graded, lexicographically
  // descending within a grade; the constant function goes last.
  std::vector<std::pair<int, Exponents>> graded;
  std::function<void(Exponents&, int, int)> enumerate = [&](Exponents& e, int from, int wdeg) {
    if (wdeg > 0) graded.push_back({wdeg, e});
    for (int i = from; i < n; ++i) {
      if (wdeg + alg_->weight(i) > c) continue;
      ++e[i];
      enumerate(e, i, wdeg + alg_->weight(i));
      --e[i];
    }
  };
  Exponents e(n, 0);
  enumerate(e, 0, 0);
  std::sort(graded.begin(), graded.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;  // lexicographically descending exponents
  });
  for (auto& [w, exps] : graded) monomials_.push_back(exps);
  monomials_.push_back(Exponents(n, 0));
  for (size_t i = 0; i < monomials_.size(); ++i) index_[monomials_[i]] = static_cast<int>(i);

  for (int i = 0; i < n; ++i) {
    QVector ei(n);
    ei[i] = Rat(1);
    AffTrans li = AffTrans::left_translation(GroupPoint(alg_, ei));
    trans_logs_.push_back(nilpotent_log(hom(li)));
  }
  trans_span_ = std::make_unique<SpanBuilder>(dim() * dim());
  for (const auto& m : trans_logs_) trans_span_->add(m.entries());
}

std::vector<MultiPoly> Linearization::action_polynomials(const AffTrans& g) const {
  require_same_algebra(g.algebra(), alg_, "action_polynomials");
  int n = alg_->dim();
  PolyRing ring{n};
  std::vector<MultiPoly> xs, dn;
  for (int i = 0; i < n; ++i)
    xs.push_back(MultiPoly::constant(n, g.translation().coords[i]));
  const QMatrix& d = g.aut().matrix();
  for (int i = 0; i < n; ++i) {
    MultiPoly p(n);
    for (int j = 0; j < n; ++j)
      if (!d.at(i, j).is_zero()) p += d.at(i, j) * MultiPoly::variable(n, j);
    dn.push_back(std::move(p));
  }
  return alg_->bch(ring, xs, dn);
}

QMatrix Linearization::pullback(const AffTrans& g) const {
  std::vector<MultiPoly> act = action_polynomials(g);
  int n = alg_->dim();
  QMatrix t(dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    MultiPoly p = MultiPoly::constant(n, Rat(1));
    const Exponents& exps = monomials_[j];
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < exps[i]; ++k) p = p * act[i];
    for (const auto& [mono, coeff] : p.terms()) {
      auto it = index_.find(mono);
      if (it == index_.end())
        fail(ErrorKind::Internal, "pullback left the filtered polynomial space");
      t.at(it->second, j) = coeff;
    }
  }
  return t;
}

AffTrans Linearization::delinearize_hom(const QMatrix& m) const {
  if (m.rows() != dim() || m.cols() != dim())
    fail(ErrorKind::Dimension, "delinearize: matrix size != linearization dimension");
  QMatrix t = m.transpose();
  int n = alg_->dim();
  int const_row = index_.at(Exponents(n, 0));
  QVector x(n);
  for (int i = 0; i < n; ++i) {
    Exponents ei(n, 0);
    ei[i] = 1;
    x[i] = t.at(const_row, index_.at(ei));
  }
  AffTrans lx = AffTrans::left_translation(GroupPoint(alg_, x));
  QMatrix th = t * inverse(pullback(lx));
  QMatrix d(n, n);
  for (int k = 0; k < n; ++k) {
    Exponents ek(n, 0);
    ek[k] = 1;
    int col = index_.at(ek);
    for (int j = 0; j < n; ++j) {
      Exponents ej(n, 0);
      ej[j] = 1;
      d.at(k, j) = th.at(index_.at(ej), col);
    }
  }
  AffTrans result;
  try {
    result = AffTrans(GroupPoint(alg_, x), LieMorphism(alg_, alg_, d));
  } catch (const Error& e) {
    fail(ErrorKind::Input, std::string("matrix is not in the image of Aff(N): ") + e.what());
  }
  if (hom(result) != m)
    fail(ErrorKind::Input, "matrix is not in the image of Aff(N)");
  return result;
}

QMatrix Linearization::translation_log(const QVector& xi) const {
  if (static_cast<int>(xi.size()) != alg_->dim())
    fail(ErrorKind::Dimension, "translation_log coordinate size");
  QMatrix r(dim(), dim());
  for (int i = 0; i < alg_->dim(); ++i)
    if (!xi[i].is_zero()) r += xi[i] * trans_logs_[i];
  return r;
}

bool Linearization::in_translation_logs(const QMatrix& x) const {
  return trans_span_->contains(x.entries());
}

bool Linearization::is_unipotent(const AffTrans& g) const {
  return is_unipotent_matrix(pullback(g));
}

}  // namespace nilaff
