#ifndef NILAFF_TEST_FIXTURES_HPP
#define NILAFF_TEST_FIXTURES_HPP

#include <random>

#include "nilaff/closure.hpp"

namespace nilaff::testfix {

inline AlgebraRef r1() { return NilLieAlgebra::abelian(1); }
inline AlgebraRef r2() { return NilLieAlgebra::abelian(2); }

inline AlgebraRef h3() {
  return NilLieAlgebra::create({1, 1, 2}, {{0, 1, {Rat(0), Rat(0), Rat(1)}}});
}

inline AffTrans translation(const AlgebraRef& alg, QVector v) {
  return AffTrans::left_translation(GroupPoint(alg, std::move(v)));
}

// rho(s,t) = ((s + t^2/2, t), [[1, t], [0, 1]])
inline AffTrans poly_z2_gen(const AlgebraRef& alg, long s, long t) {
  GroupPoint x(alg, {Rat(s) + Rat(t * t, 2), Rat(t)});
  QMatrix d(2, 2, {Rat(1), Rat(t), Rat(0), Rat(1)});
  return AffTrans(std::move(x), LieMorphism(alg, alg, std::move(d)));
}

inline GroupPresentation z2_standard(AlgebraRef alg = r2()) {
  std::vector<AffTrans> gens{translation(alg, {Rat(1), Rat(0)}),
                             translation(alg, {Rat(0), Rat(1)})};
  Word commut = Word::gen(0).commutator_with(Word::gen(1));
  return GroupPresentation::create(alg, {"a", "b"}, gens, {commut}, FiniteGroup::trivial(),
                                   {0, 0}, {"a", "b"}, true);
}

inline GroupPresentation z1_standard(AlgebraRef alg = r1()) {
  std::vector<AffTrans> gens{translation(alg, {Rat(1)})};
  return GroupPresentation::create(alg, {"t"}, gens, {}, FiniteGroup::trivial(), {0}, {"t"},
                                   true);
}

inline GroupPresentation poly_z2(AlgebraRef alg = r2()) {
  std::vector<AffTrans> gens{poly_z2_gen(alg, 1, 0), poly_z2_gen(alg, 0, 1)};
  Word commut = Word::gen(0).commutator_with(Word::gen(1));
  return GroupPresentation::create(alg, {"a", "b"}, gens, {commut}, FiniteGroup::trivial(),
                                   {0, 0}, {"a", "b"}, true);
}

inline GroupPresentation klein(AlgebraRef alg = r2()) {
  AffTrans a = translation(alg, {Rat(1), Rat(0)});
  GroupPoint xb(alg, {Rat(0), Rat(1, 2)});
  AffTrans b(xb, LieMorphism(alg, alg, QMatrix(2, 2, {Rat(-1), Rat(0), Rat(0), Rat(1)})));
  // b a b^-1 a = 1
  Word rel = Word::gen(1).concat(Word::gen(0)).concat(Word::gen(1, -1)).concat(Word::gen(0));
  return GroupPresentation::create(alg, {"a", "b"}, {a, b}, {rel}, FiniteGroup::cyclic(2),
                                   {0, 1}, {"a", "b"}, true);
}

inline GroupPresentation heisenberg_lattice(AlgebraRef alg = h3()) {
  std::vector<AffTrans> gens{translation(alg, {Rat(1), Rat(0), Rat(0)}),
                             translation(alg, {Rat(0), Rat(1), Rat(0)}),
                             translation(alg, {Rat(0), Rat(0), Rat(1)})};
  // a b a^-1 b^-1 c^-1 = 1
  Word rel = Word::gen(0).commutator_with(Word::gen(1)).concat(Word::gen(2, -1));
  return GroupPresentation::create(alg, {"a", "b", "c"}, gens, {rel}, FiniteGroup::trivial(),
                                   {0, 0, 0}, {"a", "b", "c"}, true);
}

// Z = <diag(2)> acting on the line; outside the quasi-unipotent class, loaded
// through a declared torus hull. Not properly discontinuous.
inline GroupPresentation semisimple_z(AlgebraRef alg = r1()) {
  QMatrix d(1, 1, {Rat(2)});
  AffTrans t(GroupPoint::identity(alg), LieMorphism(alg, alg, d));
  DeclaredHull hull;
  hull.torus_words = {Word::gen(0)};
  hull.density_asserted = true;
  return GroupPresentation::create(alg, {"t"}, {t}, {}, FiniteGroup::trivial(), {0}, {"t"},
                                   false, hull);
}

inline Rat rnd_rat(std::mt19937& rng, int lim = 4) {
  std::uniform_int_distribution<int> num(-lim, lim), den(1, 3);
  return Rat(num(rng), den(rng));
}

inline GroupPoint rnd_point(std::mt19937& rng, const AlgebraRef& alg) {
  QVector v(alg->dim());
  for (auto& x : v) x = rnd_rat(rng);
  return GroupPoint(alg, v);
}

inline AffTrans rnd_aff(std::mt19937& rng, const AlgebraRef& alg) {
  if (alg->dim() == 2 && alg->nilpotency_class() == 1) {
    while (true) {
      QMatrix d(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d.at(i, j) = rnd_rat(rng);
      if (!try_inverse(d)) continue;
      return AffTrans(rnd_point(rng, alg), LieMorphism(alg, alg, d));
    }
  }
  if (alg->dim() == 3 && alg->nilpotency_class() == 2) {
    while (true) {
      Rat a = rnd_rat(rng), b = rnd_rat(rng), c = rnd_rat(rng), d = rnd_rat(rng);
      Rat det = a * d - b * c;
      if (det.is_zero()) continue;
      QMatrix m(3, 3);
      m.at(0, 0) = a; m.at(0, 1) = b;
      m.at(1, 0) = c; m.at(1, 1) = d;
      m.at(2, 0) = rnd_rat(rng);
      m.at(2, 1) = rnd_rat(rng);
      m.at(2, 2) = det;
      return AffTrans(rnd_point(rng, alg), LieMorphism(alg, alg, m));
    }
  }
  // fallback: inner automorphism times a translation
  return AffTrans(rnd_point(rng, alg),
                  LieMorphism(alg, alg, ad_action(rnd_point(rng, alg))));
}

}  // namespace nilaff::testfix

#endif
