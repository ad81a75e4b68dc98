#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nilaff/jordan.hpp"
#include "nilaff/matrix.hpp"
#include "nilaff/unipoly.hpp"

using namespace nilaff;

namespace {

QMatrix m2(long a, long b, long c, long d) {
  return QMatrix(2, 2, {Rat(a), Rat(b), Rat(c), Rat(d)});
}

Rat rnd_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
  return Rat(num(rng), den(rng));
}

QMatrix rnd_matrix(std::mt19937& rng, int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rnd_rat(rng);
  return m;
}

QMatrix rnd_invertible(std::mt19937& rng, int n) {
  while (true) {
    QMatrix m = rnd_matrix(rng, n);
    if (try_inverse(m)) return m;
  }
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(Rat(2, 6) == Rat(1, 3));
  CHECK(Rat(-2, -6) == Rat(1, 3));
  CHECK(Rat(2, -6) == Rat(-1, 3));
  CHECK(Rat(2, 6).den() == 3);
  CHECK((Rat(1, 3) + Rat(1, 6)).str() == "1/2");
  CHECK(Rat::parse("-7/2") == Rat(-7, 2));
  CHECK(Rat::parse("5") == Rat(5));
  CHECK_THROWS_AS(Rat(1, 0), Error);
  CHECK_THROWS_AS(Rat::parse("x"), Error);
}

TEST_CASE("solve_linear identity case") {
  auto s = solve_linear(QMatrix::identity(2), {Rat(3), Rat(5)});
  REQUIRE(!s.empty());
  CHECK(*s.particular == QVector{Rat(3), Rat(5)});
  CHECK(s.kernel_basis.empty());
}

TEST_CASE("solve_linear rank-deficient case") {
  QMatrix a = m2(1, 1, 2, 2);
  auto s = solve_linear(a, {Rat(1), Rat(2)});
  REQUIRE(!s.empty());
  CHECK(*s.particular == QVector{Rat(1), Rat(0)});
  REQUIRE(s.kernel_basis.size() == 1);
  CHECK(s.kernel_basis[0] == QVector{Rat(1), Rat(-1)});
  // contract checked by substitution
  CHECK(a * *s.particular == QVector{Rat(1), Rat(2)});
  CHECK(is_zero(a * s.kernel_basis[0]));
}

TEST_CASE("solve_linear empty marker") {
  auto s = solve_linear(QMatrix::zero(2, 2), {Rat(1), Rat(0)});
  CHECK(s.empty());
}

TEST_CASE("solve_linear substitution property") {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    int rows = 1 + it % 4, cols = 1 + (it / 2) % 4;
    QMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a.at(i, j) = rnd_rat(rng);
    QVector b(rows);
    for (auto& x : b) x = rnd_rat(rng);
    auto s = solve_linear(a, b);
    if (!s.empty()) CHECK(a * *s.particular == b);
    for (const auto& k : s.kernel_basis) CHECK(is_zero(a * k));
    CHECK(static_cast<int>(s.kernel_basis.size()) == cols - rank(a));
  }
}

TEST_CASE("jordan_chevalley on already-unipotent input") {
  QMatrix a = m2(1, 1, 0, 1);
  auto [s, u] = jordan_chevalley(a);
  CHECK(s == QMatrix::identity(2));
  CHECK(u == a);
}

TEST_CASE("jordan_chevalley on already-semisimple input") {
  QMatrix a = m2(2, 0, 0, 3);
  auto [s, u] = jordan_chevalley(a);
  CHECK(s == a);
  CHECK(u == QMatrix::identity(2));
}

TEST_CASE("jordan_chevalley on the Klein reflection block") {
  QMatrix a(3, 3,
            {Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(1, 2), Rat(0), Rat(0), Rat(1)});
  auto [s, u] = jordan_chevalley(a);
  QMatrix expected_s(3, 3, {Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)});
  QMatrix expected_u(3, 3, {Rat(1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(1, 2), Rat(0), Rat(0), Rat(1)});
  CHECK(s == expected_s);
  CHECK(u == expected_u);
  CHECK(s * u == a);
  CHECK(u * s == a);
  CHECK(is_squarefree(min_poly(s)));
  CHECK(is_nilpotent(u - QMatrix::identity(3)));
}

TEST_CASE("jordan_chevalley rejects singular input") {
  CHECK_THROWS_AS(jordan_chevalley(m2(1, 0, 0, 0)), Error);
}

TEST_CASE("jordan_chevalley invariants on random quasi-unipotent matrices") {
  // Conjugates of block-diagonal matrices with roots of unity on the diagonal
  // blocks and commuting unipotent parts.
  std::mt19937 rng(11);
  int checked = 0;
  while (checked < 50) {
    int n = 2 + checked % 3;  // 2..4
    QMatrix block = QMatrix::zero(n, n);
    int pos = 0;
    std::uniform_int_distribution<int> pick(0, 2);
    while (pos < n) {
      int kind = pick(rng);
      if (kind == 2 && pos + 2 <= n) {
        // order-4 rotation block
        block.at(pos, pos + 1) = Rat(-1);
        block.at(pos + 1, pos) = Rat(1);
        pos += 2;
      } else {
        block.at(pos, pos) = Rat(kind == 0 ? 1 : -1);
        if (pos > 0 && block.at(pos - 1, pos - 1) == block.at(pos, pos) && pick(rng) == 0)
          block.at(pos - 1, pos) = rnd_rat(rng);  // Jordan-type superdiagonal
        pos += 1;
      }
    }
    QMatrix p = rnd_invertible(rng, n);
    QMatrix a = p * block * inverse(p);
    auto [s, u] = jordan_chevalley(a);
    CHECK(s * u == a);
    CHECK(u * s == a);
    CHECK(is_nilpotent(u - QMatrix::identity(n)));
    CHECK(is_squarefree(min_poly(s)));
    // idempotence
    auto [ss, si] = jordan_chevalley(s);
    CHECK(ss == s);
    CHECK(si == QMatrix::identity(n));
    auto [us, uu] = jordan_chevalley(u);
    CHECK(us == QMatrix::identity(n));
    CHECK(uu == u);
    ++checked;
  }
}

TEST_CASE("nilpotent log and exp") {
  CHECK(nilpotent_log(QMatrix::identity(3)) == QMatrix::zero(3, 3));

  QMatrix a(3, 3, {Rat(1), Rat(1), Rat(1, 2), Rat(0), Rat(1), Rat(1), Rat(0), Rat(0), Rat(1)});
  QMatrix expected(3, 3, {Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0)});
  CHECK(nilpotent_log(a) == expected);
  CHECK(nilpotent_exp(nilpotent_log(a)) == a);

  QMatrix e13 = QMatrix::unit(3, 3, 0, 2);
  CHECK(nilpotent_exp(e13) == QMatrix::identity(3) + e13);

  CHECK_THROWS_AS(nilpotent_log(m2(2, 0, 0, 1)), Error);
  CHECK_THROWS_AS(nilpotent_exp(m2(1, 0, 0, 1)), Error);
}

TEST_CASE("exp of commuting nilpotents multiplies") {
  std::mt19937 rng(13);
  int done = 0;
  while (done < 30) {
    int n = 3 + done % 2;
    // commuting pair: polynomials in one strictly upper-triangular matrix
    QMatrix base(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) base.at(i, j) = rnd_rat(rng);
    QMatrix x = rnd_rat(rng) * base + rnd_rat(rng) * (base * base);
    QMatrix y = rnd_rat(rng) * base + rnd_rat(rng) * (base * base * base);
    REQUIRE(x * y == y * x);
    CHECK(nilpotent_exp(x + y) == nilpotent_exp(x) * nilpotent_exp(y));
    CHECK(nilpotent_log(nilpotent_exp(x)) == x);
    ++done;
  }
}

TEST_CASE("characteristic and minimal polynomials") {
  QMatrix a = m2(2, 1, 0, 2);
  UniPoly chi = char_poly(a);
  CHECK(chi == UniPoly({Rat(4), Rat(-4), Rat(1)}));  // (t-2)^2
  CHECK(min_poly(a) == chi);
  CHECK(min_poly(QMatrix::identity(3)) == UniPoly({Rat(-1), Rat(1)}));
  CHECK(squarefree_part(chi) == UniPoly({Rat(-2), Rat(1)}));
}
