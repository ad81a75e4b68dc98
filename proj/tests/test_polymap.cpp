#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "nilaff/polymap.hpp"

using namespace nilaff;
using namespace nilaff::testfix;

namespace {

// p(x, y) = (x - y^2/2, y) with inverse (x + y^2/2, y)
PolyMap explicit_chart() {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  std::vector<MultiPoly> comps{x - Rat(1, 2) * (y * y), y};
  std::vector<MultiPoly> inv{x + Rat(1, 2) * (y * y), y};
  return PolyMap(2, 2, comps, inv);
}

PolyMap translation_polymap(long s, long t) {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  std::vector<MultiPoly> comps{x + MultiPoly::constant(2, Rat(s)),
                               y + MultiPoly::constant(2, Rat(t))};
  std::vector<MultiPoly> inv{x + MultiPoly::constant(2, Rat(-s)),
                             y + MultiPoly::constant(2, Rat(-t))};
  return PolyMap(2, 2, comps, inv);
}

GroupMorphism identity_morphism(const GroupPresentation& p, const GroupPresentation& q) {
  GroupMorphism phi;
  phi.source = p;
  phi.target = q;
  for (size_t i = 0; i < p.generators().size(); ++i)
    phi.images.push_back(Word::gen(static_cast<int>(i)));
  for (size_t j = 0; j < q.generators().size(); ++j)
    phi.certificate.push_back(Word::gen(static_cast<int>(j)));
  return phi;
}

}  // namespace

TEST_CASE("poly compose and apply") {
  PolyMap p = explicit_chart();
  CHECK(poly_compose(PolyMap::identity(2), p) == p);
  CHECK(poly_compose(p, PolyMap::identity(2)) == p);
  CHECK(poly_compose(p, p.inverse()) == PolyMap::identity(2));
  CHECK(poly_apply(p, {Rat(1), Rat(2)}) == QVector{Rat(-1), Rat(2)});
  CHECK(p.degree() == 2);

  // declared inverse is verified
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK_THROWS_AS(PolyMap(2, 2, {x, y}, std::vector<MultiPoly>{y, x + y}), Error);
  // dimension mismatch
  CHECK_THROWS_AS(poly_compose(p, PolyMap::identity(3)), Error);
  // degree bound violations are reported, not truncated
  PolyMap swapped(2, 2, {y, x + y * y}, std::vector<MultiPoly>{MultiPoly::variable(2, 1) - x * x, x}, 2);
  CHECK_THROWS_AS(poly_compose(swapped, swapped), Error);
}

TEST_CASE("formal inversion of polynomial automorphisms") {
  auto inv = poly_formal_inverse(explicit_chart().components, 4);
  REQUIRE(inv.has_value());
  CHECK(*inv == explicit_chart().inverse_components.value());
  // a non-invertible map has no inverse within any cap
  MultiPoly x = MultiPoly::variable(1, 0);
  CHECK(!poly_formal_inverse({x * x}, 8).has_value());
}

TEST_CASE("affine actions as polynomial maps") {
  GroupPresentation p = poly_z2();
  PolyMap g = affine_action_polymap(*p.lin(), p.generators()[1]);
  // rho(0,1): (x, y) -> (1/2 + x + y, 1 + y)
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK(g.components[0] == MultiPoly::constant(2, Rat(1, 2)) + x + y);
  CHECK(g.components[1] == MultiPoly::constant(2, Rat(1)) + y);
  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    GroupPoint n = rnd_point(rng, p.algebra());
    CHECK(poly_apply(g, n.coords) == aff_act(p.generators()[1], n).coords);
  }
}

TEST_CASE("conjugating the plane action by the explicit chart straightens it") {
  GroupPresentation p = poly_z2();
  std::vector<PolyMap> conj = conjugate_action(p, explicit_chart());
  CHECK(conj[0] == translation_polymap(1, 0));
  CHECK(conj[1] == translation_polymap(0, 1));

  // all nine words with s, t in {-1, 0, 1}
  PolyMap chart = explicit_chart();
  for (long s = -1; s <= 1; ++s)
    for (long t = -1; t <= 1; ++t) {
      Word w = Word::gen(0, static_cast<int>(s)).concat(Word::gen(1, static_cast<int>(t)));
      PolyMap moved = poly_compose(
          poly_compose(chart, affine_action_polymap(*p.lin(), p.evaluate(w))),
          chart.inverse());
      CHECK(moved == translation_polymap(s, t));
    }
}

TEST_CASE("conjugating translations by a linear map moves the vectors") {
  GroupPresentation p = z2_standard();
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  // (x, y) -> (2x + y, x + y), determinant 1
  PolyMap lin(2, 2, {Rat(2) * x + y, x + y}, std::vector<MultiPoly>{x - y, -x + Rat(2) * y});
  std::vector<PolyMap> conj = conjugate_action(p, lin);
  CHECK(conj[0] == translation_polymap(2, 1));
  CHECK(conj[1] == translation_polymap(1, 1));
  CHECK(conjugate_action(p, PolyMap::identity(2))[0] == translation_polymap(1, 0));
}

TEST_CASE("make_translation_like: standard lattice is untouched") {
  GroupPresentation p = z2_standard();
  TranslationLikeModel m = make_translation_like(p);
  CHECK(m.chart == PolyMap::identity(2));
  CHECK(m.basepoint.is_identity());
  for (size_t i = 0; i < p.generators().size(); ++i) {
    CHECK(m.presentation.generators()[i].translation().coords ==
          p.generators()[i].translation().coords);
    CHECK(m.presentation.generators()[i].aut().matrix() == QMatrix::identity(2));
  }
  CHECK(is_translation_like(m.presentation).value);
}

TEST_CASE("make_translation_like straightens the plane action") {
  GroupPresentation p = poly_z2();
  TranslationLikeModel m = make_translation_like(p);

  // conjugated generators are pure translations
  for (const auto& g : m.presentation.generators())
    CHECK(g.aut().matrix() == QMatrix::identity(2));
  CHECK(m.presentation.generators()[0].translation().coords == QVector{Rat(0), Rat(1)});
  CHECK(m.presentation.generators()[1].translation().coords == QVector{Rat(1), Rat(0)});
  CHECK(is_translation_like(m.presentation).value);
  CHECK(is_crystallographic(m.presentation));

  // crystallographic case: the chart is an invertible polynomial map and
  // conjugating by its inverse recovers the new generators
  REQUIRE(m.chart.has_inverse());
  CHECK(m.chart.degree() == 2);
  std::vector<PolyMap> conj = conjugate_action(p, m.chart.inverse());
  const Linearization& lin2 = *m.presentation.lin();
  for (size_t i = 0; i < conj.size(); ++i)
    CHECK(conj[i] == affine_action_polymap(lin2, m.presentation.generators()[i]));

  // the chart agrees with the closure picture: p(c1, c2) = (c2 + c1^2/2, c1)
  MultiPoly c1 = MultiPoly::variable(2, 0), c2 = MultiPoly::variable(2, 1);
  CHECK(m.chart.components[0] == c2 + Rat(1, 2) * (c1 * c1));
  CHECK(m.chart.components[1] == c1);
}

TEST_CASE("make_translation_like: the Klein group is already translation-like") {
  GroupPresentation p = klein();
  TranslationLikeModel m = make_translation_like(p);
  CHECK(m.chart == PolyMap::identity(2));
  for (size_t i = 0; i < p.generators().size(); ++i) {
    CHECK(m.presentation.generators()[i].translation().coords ==
          p.generators()[i].translation().coords);
    CHECK(m.presentation.generators()[i].aut().matrix() == p.generators()[i].aut().matrix());
  }
}

TEST_CASE("make_translation_like on the Heisenberg lattice") {
  GroupPresentation p = heisenberg_lattice();
  TranslationLikeModel m = make_translation_like(p);
  CHECK(m.chart == PolyMap::identity(3));
  CHECK(is_translation_like(m.presentation).value);
}

TEST_CASE("induce_polynomial_map: identity between standard lattices") {
  GroupPresentation p = z2_standard();
  PolyIntertwiner r = induce_polynomial_map(identity_morphism(p, p));
  CHECK(r.map == PolyMap::identity(2));
}

TEST_CASE("induce_polynomial_map recovers the explicit chart") {
  GroupPresentation src = poly_z2();
  GroupPresentation tgt = z2_standard();
  GroupMorphism phi = identity_morphism(src, tgt);
  PolyIntertwiner r = induce_polynomial_map(phi);
  CHECK(r.map.degree() == 2);
  CHECK(r.map.components == explicit_chart().components);
  for (int i = 0; i < 2; ++i) CHECK(poly_intertwines_on_word(phi, r.map, Word::gen(i)));

  // and the reverse direction gives the inverse chart
  GroupMorphism back = identity_morphism(tgt, src);
  PolyIntertwiner rb = induce_polynomial_map(back);
  CHECK(rb.map.components == explicit_chart().inverse_components.value());
  for (int i = 0; i < 2; ++i) CHECK(poly_intertwines_on_word(back, rb.map, Word::gen(i)));
}

TEST_CASE("induce_polynomial_map collapses to the affine answer for Z into Klein") {
  GroupMorphism phi;
  phi.source = z1_standard();
  phi.target = klein();
  phi.images = {Word::gen(1)};
  phi.certificate = {std::nullopt, std::nullopt};
  PolyIntertwiner r = induce_polynomial_map(phi);
  CHECK(r.map.degree() == 1);
  MultiPoly t = MultiPoly::variable(1, 0);
  CHECK(r.map.components[0] == MultiPoly(1));
  CHECK(r.map.components[1] == Rat(1, 2) * t);
  CHECK(poly_intertwines_on_word(phi, r.map, Word::gen(0)));
  // degree bookkeeping: within the compositional bound of the pipeline
  CHECK(r.map.degree() <= std::max(1, r.affine_core.morphism.matrix().rows()));
}

TEST_CASE("induce_polynomial_map rejects non-crystallographic inputs") {
  AlgebraRef alg = r2();
  GroupPresentation line = GroupPresentation::create(
      alg, {"a"}, {translation(alg, {Rat(1), Rat(0)})}, {}, FiniteGroup::trivial(), {0}, {"a"},
      true);
  GroupMorphism phi = identity_morphism(line, line);
  CHECK_THROWS_AS(induce_polynomial_map(phi), Error);
}
