#ifndef NILAFF_AFFINE_HPP
#define NILAFF_AFFINE_HPP

#include <map>

#include "nilaff/jordan.hpp"
#include "nilaff/lie.hpp"

namespace nilaff {

/// Element (x, delta) of Aff(N) = N x| Aut(N), acting as n -> x . delta(n)
/// with the translation part on the left.
class AffTrans {
public:
  AffTrans() = default;
  /// Requires an exact rational inverse for the automorphism part.
  AffTrans(GroupPoint translation, LieMorphism automorphism);
  static AffTrans identity(AlgebraRef alg);
  static AffTrans left_translation(GroupPoint m);
  static AffTrans automorphism(LieMorphism d);

  const AlgebraRef& algebra() const { return translation_.algebra; }
  const GroupPoint& translation() const { return translation_; }
  const LieMorphism& aut() const { return aut_; }

  GroupPoint act(const GroupPoint& n) const;
  bool is_identity() const;

  friend bool operator==(const AffTrans& a, const AffTrans& b) {
    return a.translation_ == b.translation_ && a.aut_ == b.aut_;
  }
  friend bool operator!=(const AffTrans& a, const AffTrans& b) { return !(a == b); }

  std::string str() const;

private:
  GroupPoint translation_;
  LieMorphism aut_;
};

GroupPoint aff_act(const AffTrans& g, const GroupPoint& n);
AffTrans aff_compose(const AffTrans& g, const AffTrans& h);
AffTrans aff_inverse(const AffTrans& g);
AffTrans aff_conjugate(const AffTrans& g, const AffTrans& h);  // g h g^-1
AffTrans aff_power(const AffTrans& g, long k);

/// Affine map alpha in aff(N1, N2): alpha(n) = delta(n) . x with the
/// translation part x in N2 acting on the right.
struct AffMap {
  GroupPoint translation;  // x in N2
  LieMorphism morphism;    // delta: N1 -> N2, possibly non-invertible

  AffMap() = default;
  AffMap(GroupPoint x, LieMorphism delta);

  const AlgebraRef& source() const { return morphism.source(); }
  const AlgebraRef& target() const { return morphism.target(); }

  GroupPoint apply(const GroupPoint& n) const;

  friend bool operator==(const AffMap& a, const AffMap& b) {
    return a.translation == b.translation && a.morphism == b.morphism;
  }
  friend bool operator!=(const AffMap& a, const AffMap& b) { return !(a == b); }

  std::string str() const;
};

GroupPoint affmap_apply(const AffMap& alpha, const GroupPoint& n);
/// The same map written with the translation acting on the left:
/// x . tilde(n) = delta(n) . x pointwise, where tilde = Ad(x^-1) . delta.
std::pair<GroupPoint, LieMorphism> affmap_to_left_form(const AffMap& alpha);
/// g . alpha as an affine map, for g in Aff(N2).
AffMap affmap_compose_left(const AffTrans& g, const AffMap& alpha);
/// alpha . g as an affine map, for g in Aff(N1).
AffMap affmap_compose_right(const AffMap& alpha, const AffTrans& g);

/// Faithful rational linearization of Aff(N) on the space of polynomials in
/// Mal'cev coordinates of weighted degree <= nilpotency class (constant
/// included). Composition with any affine transformation preserves that
/// space because the weight filtration matches the lower central series.
///
/// pullback(g) is the matrix of f -> f . g on the monomial basis; it is an
/// antihomomorphism: pullback(g h) = pullback(h) pullback(g). Its transpose
/// hom(g) is a homomorphism and is the convention used for closure data.
class Linearization {
public:
  explicit Linearization(AlgebraRef alg);

  const AlgebraRef& algebra() const { return alg_; }
  int dim() const { return static_cast<int>(monomials_.size()); }
  const std::vector<Exponents>& monomials() const { return monomials_; }

  /// Coordinates of g . n as polynomials in the coordinates of n.
  std::vector<MultiPoly> action_polynomials(const AffTrans& g) const;

  QMatrix pullback(const AffTrans& g) const;
  QMatrix hom(const AffTrans& g) const { return pullback(g).transpose(); }

  /// Inverse of hom() on the image of Aff(N); rejects matrices outside it.
  AffTrans delinearize_hom(const QMatrix& m) const;

  /// d(lambda): the Lie algebra embedding of n into gl(V) in the hom
  /// convention; lambda(log m) = log hom(L_m).
  QMatrix translation_log(const QVector& xi) const;
  const std::vector<QMatrix>& translation_log_basis() const { return trans_logs_; }
  /// Membership test of a matrix in the translation log space.
  bool in_translation_logs(const QMatrix& x) const;

  bool is_unipotent(const AffTrans& g) const;

private:
  AlgebraRef alg_;
  std::vector<Exponents> monomials_;
  std::map<Exponents, int> index_;
  std::vector<QMatrix> trans_logs_;  // lambda(e_i)
  std::unique_ptr<SpanBuilder> trans_span_;
};

}  // namespace nilaff

#endif
