#ifndef NILAFF_PRESENTATION_HPP
#define NILAFF_PRESENTATION_HPP

#include <optional>
#include <string>

#include "nilaff/affine.hpp"

namespace nilaff {

/// Finite group given by a full multiplication table over named elements.
class FiniteGroup {
public:
  FiniteGroup();  // trivial group {e}
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table);
  static FiniteGroup trivial() { return FiniteGroup(); }
  static FiniteGroup cyclic(int n);

  int order() const { return static_cast<int>(names_.size()); }
  int identity() const { return identity_; }
  const std::string& name(int i) const { return names_[i]; }
  std::optional<int> index_of(const std::string& name) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int power(int a, long k) const;
  /// Indices of the subgroup generated by the given elements, identity first,
  /// then in discovery order.
  std::vector<int> subgroup_generated(const std::vector<int>& gens) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.names_ == b.names_ && a.table_ == b.table_;
  }

private:
  void validate();
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
};

/// Word over generator symbols: sequence of (generator index, exponent).
struct Word {
  std::vector<std::pair<int, int>> letters;

  static Word empty() { return {}; }
  static Word gen(int i, int exp = 1) { return {{{i, exp}}}; }
  Word inverse() const;
  Word concat(const Word& o) const;
  Word commutator_with(const Word& o) const;  // w o w^-1 o^-1
  bool trivial() const { return letters.empty(); }

  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }

  std::string str(const std::vector<std::string>& names) const;
};

/// Declared algebraic-hull data for groups outside the quasi-unipotent class:
/// a torus Levi part given by words plus words whose logs generate the
/// unipotent radical. Density of the group in the declared hull is taken on
/// assertion and reported as such.
struct DeclaredHull {
  std::vector<Word> torus_words;
  std::vector<Word> unipotent_words;
  bool density_asserted = false;
};

/// A virtually polycyclic group acting on N by affine transformations,
/// given by generators, declared relators and a finite holonomy tagging.
class GroupPresentation {
public:
  GroupPresentation() = default;

  /// Validates: every relator evaluates to the identity, the tag map kills
  /// every relator, and (without a declared hull) every generator tagged with
  /// the identity of F is unipotent.
  static GroupPresentation create(AlgebraRef algebra, std::vector<std::string> gen_names,
                                  std::vector<AffTrans> generators, std::vector<Word> relators,
                                  FiniteGroup holonomy, std::vector<int> tags,
                                  std::vector<std::string> series_names = {},
                                  bool properly_discontinuous = false,
                                  std::optional<DeclaredHull> hull = std::nullopt);

  const AlgebraRef& algebra() const { return algebra_; }
  const std::vector<std::string>& gen_names() const { return gen_names_; }
  const std::vector<AffTrans>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  const FiniteGroup& holonomy() const { return holonomy_; }
  const std::vector<int>& tags() const { return tags_; }
  const std::vector<std::string>& series_names() const { return series_names_; }
  std::optional<int> declared_hirsch() const;
  bool properly_discontinuous() const { return properly_discontinuous_; }
  const std::optional<DeclaredHull>& declared_hull() const { return hull_; }
  const std::shared_ptr<const Linearization>& lin() const { return lin_; }

  int gen_index(const std::string& name) const;
  AffTrans evaluate(const Word& w) const;
  int tag_of(const Word& w) const;

  friend bool operator==(const GroupPresentation& a, const GroupPresentation& b) {
    return same_algebra(a.algebra_, b.algebra_) && a.gen_names_ == b.gen_names_ &&
           a.generators_ == b.generators_ && a.relators_ == b.relators_ &&
           a.holonomy_ == b.holonomy_ && a.tags_ == b.tags_ &&
           a.series_names_ == b.series_names_ &&
           a.properly_discontinuous_ == b.properly_discontinuous_;
  }

private:
  AlgebraRef algebra_;
  std::vector<std::string> gen_names_;
  std::vector<AffTrans> generators_;
  std::vector<Word> relators_;
  FiniteGroup holonomy_;
  std::vector<int> tags_;
  std::vector<std::string> series_names_;
  bool properly_discontinuous_ = false;
  std::optional<DeclaredHull> hull_;
  std::shared_ptr<const Linearization> lin_;
};

}  // namespace nilaff

#endif
