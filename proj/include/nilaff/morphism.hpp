#ifndef NILAFF_MORPHISM_HPP
#define NILAFF_MORPHISM_HPP

#include "nilaff/closure.hpp"

namespace nilaff {

/// Group morphism between presented groups: one target word per source
/// generator, with an optional surjectivity certificate expressing every
/// target generator as a word in the images.
struct GroupMorphism {
  GroupPresentation source;
  GroupPresentation target;
  std::vector<Word> images;                       // per source generator
  std::vector<std::optional<Word>> certificate;   // per target generator, word over source gens

  /// Image of a word over source generators as a word over target generators.
  Word map_word(const Word& w) const;
  AffTrans image_of(const Word& w) const { return target.evaluate(map_word(w)); }
};

struct VerifyResult {
  bool ok = true;
  Word violated;
};

VerifyResult verify_morphism(const GroupMorphism& phi);

/// phi(Gamma_1) as a presentation on the target group: image generators,
/// transported relators, holonomy shrunk to the image of the tags.
GroupPresentation image_presentation(const GroupMorphism& phi);

/// Extension of a surjective morphism to the algebraic hulls: the unipotent
/// part as a morphism between the rebuilt radicals, plus the images of the
/// source Levi section elements.
struct HullMorphism {
  SpanModel source_u;
  SpanModel target_u;
  LieMorphism unipotent_part;        // source_u.algebra -> target_u.algebra
  std::vector<int> levi_elements;    // source holonomy indices
  std::vector<AffTrans> levi_images; // values in the target affine group

  /// Image of a unipotent element of the source closure.
  AffTrans map_unipotent(const Linearization& source_lin, const Linearization& target_lin,
                         const AffTrans& u) const;
};

HullMorphism extend_to_hulls(const GroupMorphism& phi);

/// Fixed-point set of a reductive subgroup, as a right coset M n0.
struct FixedCoset {
  std::vector<QVector> subalgebra_basis;  // basis of m = Lie(M)
  GroupPoint basepoint;                   // n0
  bool is_empty = false;

  bool contains(const GroupPoint& p) const;
};

FixedCoset fixed_points_reductive(AlgebraRef algebra, const std::vector<AffTrans>& gens,
                                  LeviKind kind);

/// Restriction of an action to an invariant coset M n0.
struct RestrictedAction {
  SpanModel m_model;        // M inside the ambient algebra
  GroupPoint basepoint;     // n0
  GroupPresentation restricted;

  /// r_M(alpha) for any affine transformation preserving the coset.
  AffTrans restrict(const AffTrans& g) const;
  /// The coset chart p(m) = m . n0 into the ambient group.
  GroupPoint chart(const GroupPoint& m) const;
};

RestrictedAction restrict_action(const GroupPresentation& pres,
                                 const std::vector<QVector>& subalgebra,
                                 const GroupPoint& basepoint);

/// The affine map intertwining two translation-like actions along phi, plus
/// the data the classification reuses.
struct InduceResult {
  AffMap alpha;
  GroupPresentation image;        // phi(Gamma_1) on N_2
  ClosureData image_closure;
};

InduceResult induce_affine_map(const GroupMorphism& phi);

/// All affine maps realizing phi: the unique morphism part and the coset of
/// valid translation parts.
struct ClassifyResult {
  LieMorphism delta;       // N1 -> N2
  FixedCoset translations; // valid right-translation parts
};

ClassifyResult classify_affine_maps(const GroupMorphism& phi);

bool image_coset_cocompact(const GroupMorphism& phi, const AffMap& alpha);

/// Exact check of rho2(phi(gamma)) . alpha = alpha . rho1(gamma) for a word.
bool intertwines_on_word(const GroupMorphism& phi, const AffMap& alpha, const Word& w);

}  // namespace nilaff

#endif
