#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nilaff/jordan.hpp"
#include "nilaff/lie.hpp"

using namespace nilaff;

namespace {

AlgebraRef heisenberg() {
  return NilLieAlgebra::create({1, 1, 2}, {{0, 1, {Rat(0), Rat(0), Rat(1)}}});
}

// Filiform dim 4, class 3: [e1,e2] = e3, [e1,e3] = e4.
AlgebraRef filiform4() {
  return NilLieAlgebra::create({1, 1, 2, 3},
                               {{0, 1, {Rat(0), Rat(0), Rat(1), Rat(0)}},
                                {0, 2, {Rat(0), Rat(0), Rat(0), Rat(1)}}});
}

// Model filiform dim 7, class 6: [e1, e_j] = e_{j+1} for j = 2..6.
AlgebraRef filiform7() {
  std::vector<std::tuple<int, int, QVector>> brackets;
  for (int j = 1; j <= 5; ++j) {
    QVector v(7);
    v[j + 1] = Rat(1);
    brackets.push_back({0, j, v});
  }
  return NilLieAlgebra::create({1, 1, 2, 3, 4, 5, 6}, brackets);
}

Rat rnd_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  return Rat(num(rng), den(rng));
}

GroupPoint rnd_point(std::mt19937& rng, const AlgebraRef& alg) {
  QVector v(alg->dim());
  for (auto& x : v) x = rnd_rat(rng);
  return GroupPoint(alg, v);
}

// Independent realization of the BCH product through nilpotent matrices:
// represent the algebra faithfully, exponentiate, multiply, take the log and
// solve for coordinates. Uses only the exactalg kernel.
GroupPoint matrix_oracle_product(const AlgebraRef& alg, const std::vector<QMatrix>& rep,
                                 const GroupPoint& x, const GroupPoint& y) {
  int n = rep[0].rows();
  auto realize = [&](const GroupPoint& p) {
    QMatrix m = QMatrix::zero(n, n);
    for (int i = 0; i < alg->dim(); ++i) m += p.coords[i] * rep[i];
    return m;
  };
  QMatrix prod = nilpotent_exp(realize(x)) * nilpotent_exp(realize(y));
  QMatrix log = nilpotent_log(prod);
  std::vector<QVector> cols;
  for (const auto& m : rep) cols.push_back(m.entries());
  auto sol = solve_linear(QMatrix::from_columns(cols), log.entries());
  REQUIRE(!sol.empty());
  return GroupPoint(alg, *sol.particular);
}

std::vector<QMatrix> heisenberg_rep() {
  return {QMatrix::unit(3, 3, 0, 1), QMatrix::unit(3, 3, 1, 2), QMatrix::unit(3, 3, 0, 2)};
}

std::vector<QMatrix> filiform4_rep() {
  // x = E12+E23+E34, y = E23, z1 = [x,y] = E13-E24, z2 = [x,z1] = -2 E14
  QMatrix x = QMatrix::unit(4, 4, 0, 1) + QMatrix::unit(4, 4, 1, 2) + QMatrix::unit(4, 4, 2, 3);
  QMatrix y = QMatrix::unit(4, 4, 1, 2);
  QMatrix z1 = QMatrix::unit(4, 4, 0, 2) - QMatrix::unit(4, 4, 1, 3);
  QMatrix z2 = Rat(-2) * QMatrix::unit(4, 4, 0, 3);
  return {x, y, z1, z2};
}

std::vector<QMatrix> filiform7_rep() {
  QMatrix shift = QMatrix::zero(7, 7);
  for (int i = 0; i < 6; ++i) shift.at(i + 1, i) = Rat(1);
  std::vector<QMatrix> rep{shift};
  QMatrix cur = QMatrix::unit(7, 7, 6, 5);
  rep.push_back(cur);
  for (int j = 2; j <= 6; ++j) {
    cur = commutator(shift, cur);
    rep.push_back(cur);
  }
  return rep;
}

}  // namespace

TEST_CASE("algebra validation rejects bad input") {
  // grading violated: [e1,e2] = e1 needs weight(e1) >= 2
  CHECK_THROWS_AS(NilLieAlgebra::create({1, 1}, {{0, 1, {Rat(1), Rat(0)}}}), Error);
  // weights not matching the lower central series (abelian but weight 2 declared)
  CHECK_THROWS_AS(NilLieAlgebra::create({1, 2}, {}), Error);
  // antisymmetry conflict
  CHECK_THROWS_AS(NilLieAlgebra::create(
                      {1, 1, 2}, {{0, 1, {Rat(0), Rat(0), Rat(1)}}, {1, 0, {Rat(0), Rat(0), Rat(1)}}}),
                  Error);
  // grading violated through a weight-2 vector: [e1,e4] = e4
  CHECK_THROWS_AS(NilLieAlgebra::create({1, 1, 1, 2},
                                        {{0, 1, {Rat(0), Rat(0), Rat(0), Rat(1)}},
                                         {0, 3, {Rat(0), Rat(0), Rat(0), Rat(1)}}}),
                  Error);
  // class above 6 rejected
  std::vector<std::tuple<int, int, QVector>> brackets;
  for (int j = 1; j <= 6; ++j) {
    QVector v(8);
    v[j + 1] = Rat(1);
    brackets.push_back({0, j, v});
  }
  CHECK_THROWS_AS(NilLieAlgebra::create({1, 1, 2, 3, 4, 5, 6, 7}, brackets), Error);
}

TEST_CASE("Jacobi violation is rejected") {
  // weights (1,1,1,2,2,3) with [e1,e2]=e4, [e1,e3]=e5, [e1,e5]=e6, [e3,e4]=e6:
  // Jacobi(e1,e2,e3) = [e4,e3] + 0 + [-e5,e2] = -e6 != 0.
  QVector e4(6), e5(6), e6(6);
  e4[3] = Rat(1);
  e5[4] = Rat(1);
  e6[5] = Rat(1);
  CHECK_THROWS_AS(NilLieAlgebra::create({1, 1, 1, 2, 2, 3},
                                        {{0, 1, e4}, {0, 2, e5}, {0, 4, e6}, {2, 3, e6}}),
                  Error);
}

TEST_CASE("bch on abelian algebras is addition") {
  auto r2 = NilLieAlgebra::abelian(2);
  GroupPoint x(r2, {Rat(1), Rat(2)});
  GroupPoint y(r2, {Rat(3), Rat(4)});
  CHECK(bch_multiply(x, y) == GroupPoint(r2, {Rat(4), Rat(6)}));
}

TEST_CASE("bch on the Heisenberg group matches the matrix oracle") {
  auto h3 = heisenberg();
  GroupPoint x(h3, {Rat(1), Rat(0), Rat(0)});
  GroupPoint y(h3, {Rat(0), Rat(1), Rat(0)});
  GroupPoint expected(h3, {Rat(1), Rat(1), Rat(1, 2)});
  CHECK(bch_multiply(x, y) == expected);
  CHECK(matrix_oracle_product(h3, heisenberg_rep(), x, y) == expected);

  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    GroupPoint a = rnd_point(rng, h3), b = rnd_point(rng, h3);
    CHECK(bch_multiply(a, b) == matrix_oracle_product(h3, heisenberg_rep(), a, b));
  }
}

TEST_CASE("bch against the matrix oracle in class 3 and class 6") {
  std::mt19937 rng(5);
  auto f4 = filiform4();
  auto rep4 = filiform4_rep();
  for (int i = 0; i < 40; ++i) {
    GroupPoint a = rnd_point(rng, f4), b = rnd_point(rng, f4);
    CHECK(bch_multiply(a, b) == matrix_oracle_product(f4, rep4, a, b));
  }
  auto f7 = filiform7();
  auto rep7 = filiform7_rep();
  for (int i = 0; i < 10; ++i) {
    GroupPoint a = rnd_point(rng, f7), b = rnd_point(rng, f7);
    CHECK(bch_multiply(a, b) == matrix_oracle_product(f7, rep7, a, b));
  }
}

TEST_CASE("bch associativity, inverses, truncation stability") {
  std::mt19937 rng(9);
  for (const auto& alg :
       {NilLieAlgebra::abelian(2), heisenberg(), filiform4(), filiform7()}) {
    int triples = alg->dim() >= 7 ? 60 : 200;
    for (int i = 0; i < triples; ++i) {
      GroupPoint a = rnd_point(rng, alg), b = rnd_point(rng, alg), c = rnd_point(rng, alg);
      CHECK(bch_multiply(bch_multiply(a, b), c) == bch_multiply(a, bch_multiply(b, c)));
    }
    for (int i = 0; i < 20; ++i) {
      GroupPoint a = rnd_point(rng, alg);
      CHECK(bch_multiply(a, a.inverse()).is_identity());
      GroupPoint b = rnd_point(rng, alg);
      // one extra BCH order changes nothing
      RatRing ring;
      CHECK(alg->bch(ring, a.coords, b.coords, alg->nilpotency_class() + 1) ==
            bch_multiply(a, b).coords);
    }
  }
}

TEST_CASE("algebra mismatch is rejected") {
  auto a = NilLieAlgebra::abelian(2);
  auto h = heisenberg();
  CHECK_THROWS_AS(bch_multiply(GroupPoint::identity(a), GroupPoint::identity(h)), Error);
}

TEST_CASE("lie morphism application and homomorphy") {
  auto h3 = heisenberg();
  LieMorphism id = LieMorphism::identity(h3);
  GroupPoint p(h3, {Rat(1), Rat(2), Rat(3)});
  CHECK(lie_morphism_apply(id, p) == p);

  QMatrix d(3, 3);
  d.at(0, 0) = Rat(2);
  d.at(1, 1) = Rat(3);
  d.at(2, 2) = Rat(6);
  LieMorphism dm(h3, h3, d);
  CHECK(lie_morphism_apply(dm, GroupPoint(h3, {Rat(1), Rat(1), Rat(0)})) ==
        GroupPoint(h3, {Rat(2), Rat(3), Rat(0)}));
  GroupPoint x(h3, {Rat(1), Rat(0), Rat(0)});
  GroupPoint y(h3, {Rat(0), Rat(1), Rat(0)});
  CHECK(lie_morphism_apply(dm, bch_multiply(x, y)) ==
        bch_multiply(lie_morphism_apply(dm, x), lie_morphism_apply(dm, y)));

  LieMorphism zero = LieMorphism::zero(h3, h3);
  CHECK(lie_morphism_apply(zero, p).is_identity());

  std::mt19937 rng(17);
  for (int i = 0; i < 50; ++i) {
    GroupPoint a = rnd_point(rng, h3), b = rnd_point(rng, h3);
    CHECK(lie_morphism_apply(dm, bch_multiply(a, b)) ==
          bch_multiply(lie_morphism_apply(dm, a), lie_morphism_apply(dm, b)));
  }
}

TEST_CASE("bracket-violating matrices are rejected") {
  auto h3 = heisenberg();
  QMatrix d(3, 3);
  d.at(0, 0) = Rat(2);
  d.at(1, 1) = Rat(3);
  d.at(2, 2) = Rat(5);  // must be 6 to preserve [e1,e2] = e3
  CHECK_THROWS_AS(LieMorphism(h3, h3, d), Error);
}

TEST_CASE("extend_from_lattice") {
  auto r2 = NilLieAlgebra::abelian(2);
  std::vector<GroupPoint> std_basis{GroupPoint(r2, {Rat(1), Rat(0)}),
                                    GroupPoint(r2, {Rat(0), Rat(1)})};
  CHECK(extend_from_lattice(std_basis, std_basis).matrix() == QMatrix::identity(2));

  auto h3 = heisenberg();
  std::vector<GroupPoint> gens{GroupPoint(h3, {Rat(1), Rat(0), Rat(0)}),
                               GroupPoint(h3, {Rat(0), Rat(1), Rat(0)}),
                               GroupPoint(h3, {Rat(0), Rat(0), Rat(1)})};
  std::vector<GroupPoint> images{GroupPoint(h3, {Rat(2), Rat(0), Rat(0)}),
                                 GroupPoint(h3, {Rat(0), Rat(3), Rat(0)}),
                                 GroupPoint(h3, {Rat(0), Rat(0), Rat(6)})};
  LieMorphism d = extend_from_lattice(gens, images);
  QMatrix expected(3, 3);
  expected.at(0, 0) = Rat(2);
  expected.at(1, 1) = Rat(3);
  expected.at(2, 2) = Rat(6);
  CHECK(d.matrix() == expected);
  for (size_t i = 0; i < gens.size(); ++i) CHECK(d.apply(gens[i]) == images[i]);

  // shear on the abelian plane
  std::vector<GroupPoint> sheared{GroupPoint(r2, {Rat(1), Rat(0)}),
                                  GroupPoint(r2, {Rat(1), Rat(1)})};
  CHECK(extend_from_lattice(std_basis, sheared).matrix() ==
        QMatrix(2, 2, {Rat(1), Rat(1), Rat(0), Rat(1)}));

  // failure: generators do not span
  CHECK_THROWS_AS(extend_from_lattice({gens[0]}, {images[0]}), Error);
  // failure: inconsistent images (same generator twice, different images)
  CHECK_THROWS_AS(extend_from_lattice({gens[0], gens[0], gens[1], gens[2]},
                                      {images[0], images[1], images[1], images[2]}),
                  Error);
  // failure: no bracket-preserving solution (2 * 3 != 5)
  std::vector<GroupPoint> bad{GroupPoint(h3, {Rat(2), Rat(0), Rat(0)}),
                              GroupPoint(h3, {Rat(0), Rat(3), Rat(0)}),
                              GroupPoint(h3, {Rat(0), Rat(0), Rat(5)})};
  CHECK_THROWS_AS(extend_from_lattice(gens, bad), Error);
}

TEST_CASE("extend_from_lattice agrees across spanning subsets") {
  auto h3 = heisenberg();
  QMatrix d(3, 3);
  d.at(0, 0) = Rat(2);
  d.at(1, 1) = Rat(3);
  d.at(2, 2) = Rat(6);
  d.at(2, 0) = Rat(1, 2);
  LieMorphism dm(h3, h3, d);
  std::mt19937 rng(23);
  std::vector<GroupPoint> gens, images;
  for (int i = 0; i < 6; ++i) {
    GroupPoint g = rnd_point(rng, h3);
    gens.push_back(g);
    images.push_back(dm.apply(g));
  }
  LieMorphism a = extend_from_lattice(gens, images);
  std::reverse(gens.begin(), gens.end());
  std::reverse(images.begin(), images.end());
  LieMorphism b = extend_from_lattice(gens, images);
  CHECK(a.matrix() == b.matrix());
  CHECK(a.matrix() == d);
}

TEST_CASE("span model rebuilds subalgebras with adapted weights") {
  auto h3 = heisenberg();
  RatRing ring;
  auto bracket = [&](const QVector& a, const QVector& b) { return h3->bracket(ring, a, b); };
  // the whole Heisenberg algebra from two generators' span closure is not
  // bracket-closed; give the full span
  std::vector<QVector> span{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
                            {Rat(0), Rat(0), Rat(1)}};
  SpanModel model = build_span_model(3, bracket, span);
  CHECK(model.algebra->dim() == 3);
  CHECK(model.algebra->weights() == std::vector<int>{1, 1, 2});
  CHECK(*model.algebra == *h3);

  // a one-dimensional central subalgebra
  SpanModel center = build_span_model(3, bracket, {{Rat(0), Rat(0), Rat(2)}});
  CHECK(center.algebra->dim() == 1);
  CHECK(center.algebra->weights() == std::vector<int>{1});

  // not bracket-closed: span{e1, e2} inside Heisenberg
  CHECK_THROWS_AS(build_span_model(3, bracket, {span[0], span[1]}), Error);
}
