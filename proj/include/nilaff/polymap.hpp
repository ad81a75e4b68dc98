#ifndef NILAFF_POLYMAP_HPP
#define NILAFF_POLYMAP_HPP

#include "nilaff/morphism.hpp"

namespace nilaff {

/// Polynomial map between coordinate spaces, optionally carrying an exact
/// inverse. When a degree bound is set (nonzero), the map, its inverse and
/// every composition result derived from it must stay within the bound;
/// violations are reported, never truncated.
struct PolyMap {
  int source_dim = 0;
  int target_dim = 0;
  std::vector<MultiPoly> components;
  std::optional<std::vector<MultiPoly>> inverse_components;
  int degree_bound = 0;  // 0 = unbounded

  PolyMap() = default;
  PolyMap(int source_dim, int target_dim, std::vector<MultiPoly> components,
          std::optional<std::vector<MultiPoly>> inverse = std::nullopt, int degree_bound = 0);

  static PolyMap identity(int n);

  int degree() const;
  bool has_inverse() const { return inverse_components.has_value(); }
  PolyMap inverse() const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.source_dim == b.source_dim && a.target_dim == b.target_dim &&
           a.components == b.components;
  }

  std::string str() const;
};

QVector poly_apply(const PolyMap& p, const QVector& point);
/// p . q, with inverse data composed when both carry it.
PolyMap poly_compose(const PolyMap& p, const PolyMap& q);

/// Truncated-iteration inverse of a polynomial automorphism with invertible
/// linear part; verified exactly, std::nullopt when no polynomial inverse of
/// degree <= cap exists.
std::optional<std::vector<MultiPoly>> poly_formal_inverse(const std::vector<MultiPoly>& comps,
                                                          int cap);

/// The action n -> g . n in Mal'cev coordinates, with its exact inverse.
PolyMap affine_action_polymap(const Linearization& lin, const AffTrans& g);
/// The map n -> delta(n) . x of an affine map in aff(N1, N2).
PolyMap affmap_polymap(const AffMap& alpha);

/// p . rho(gen) . p^-1 for every generator; checks that the relators still
/// evaluate to the identity map.
std::vector<PolyMap> conjugate_action(const GroupPresentation& pres, const PolyMap& p);

/// Result of the orbit-chart construction: the translation-like presentation
/// on N' = exp(u) together with the chart p: U -> U . x0 identifying it with
/// the original action. The chart carries an inverse exactly when the action
/// is crystallographic (dim u = dim N).
struct TranslationLikeModel {
  GroupPresentation presentation;  // on the rebuilt radical algebra
  SpanModel u_model;
  GroupPoint basepoint;            // x0
  PolyMap chart;                   // U-coordinates -> N-coordinates
};

TranslationLikeModel make_translation_like(const GroupPresentation& pres,
                                           const ClosureData& closure, const GroupPoint& x0);
/// Convenience overload: x0 = the canonical fixed point of the Levi part.
TranslationLikeModel make_translation_like(const GroupPresentation& pres);

/// Polynomial intertwiner rho2(phi(gamma)) . p = p . rho1(gamma) between
/// crystallographic actions, through the translation-like models.
struct PolyIntertwiner {
  PolyMap map;
  AffMap affine_core;  // the affine intertwiner between the models
};

PolyIntertwiner induce_polynomial_map(const GroupMorphism& phi);

/// Symbolic check of the intertwining identity for one word.
bool poly_intertwines_on_word(const GroupMorphism& phi, const PolyMap& p, const Word& w);

}  // namespace nilaff

#endif
