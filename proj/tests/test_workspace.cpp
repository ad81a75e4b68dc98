#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilaff/closure.hpp"
#include "nilaff/workspace.hpp"

using namespace nilaff;

namespace {

const char* kMinimal = R"(
# minimal plane lattice
[algebra r2]
dim = 2

[group z2]
algebra = r2
holonomy trivial
generator a = (translation = (1, 0); auto = [[1, 0], [0, 1]])
generator b = (translation = (0, 1); auto = [[1, 0], [0, 1]])
relator a b a^-1 b^-1
series a b
assert properly-discontinuous
)";

const char* kKlein = R"(
[algebra r2]
dim = 2
weights = 1 1

[group klein]
algebra = r2
holonomy cyclic 2
generator a = (translation = (1, 0); auto = [[1, 0], [0, 1]])
generator b = (translation = (0, 1/2); auto = [[-1, 0], [0, 1]])
relator b a b^-1 a
tag a = 0
tag b = 1
series a b
assert properly-discontinuous
)";

}  // namespace

TEST_CASE("minimal workspace loads") {
  Workspace w = parse_workspace(kMinimal);
  CHECK(w.algebras.size() == 1);
  CHECK(w.groups.size() == 1);
  const GroupPresentation& p = w.group("z2");
  CHECK(p.generators().size() == 2);
  CHECK(p.declared_hirsch() == 2);
  CHECK(p.properly_discontinuous());
}

TEST_CASE("klein fixture loads with the relator verified") {
  Workspace w = parse_workspace(kKlein);
  const GroupPresentation& k = w.group("klein");
  CHECK(k.holonomy().order() == 2);
  CHECK(k.tags() == std::vector<int>{0, 1});
  CHECK(k.evaluate(k.relators()[0]).is_identity());
}

TEST_CASE("load failures carry diagnostics") {
  // Jacobi failure names the algebra
  const char* bad_algebra = R"(
[algebra broken]
dim = 6
weights = 1 1 1 2 2 3
bracket e1 e2 = e4
bracket e1 e3 = e5
bracket e1 e5 = e6
bracket e3 e4 = e6
)";
  CHECK_THROWS_WITH_AS(parse_workspace(bad_algebra),
                       doctest::Contains("algebra 'broken'"), Error);

  // failing relator names the word
  const char* bad_relator = R"(
[algebra r1]
dim = 1
[group g]
algebra = r1
holonomy trivial
generator t = (translation = (1); auto = [[1]])
relator t t
)";
  CHECK_THROWS_AS(parse_workspace(bad_relator), Error);

  // syntax error carries the line number
  try {
    parse_workspace("[algebra a]\ndim = 1\nnonsense line here\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  // unresolved references
  CHECK_THROWS_AS(parse_workspace("[group g]\nalgebra = missing\n"), Error);
}

TEST_CASE("declared hull section attaches to its group") {
  const char* text = R"(
[algebra r1]
dim = 1

[group zsemi]
algebra = r1
holonomy trivial
generator t = (translation = (0); auto = [[2]])
series t

[hull zsemi]
torus t
density = asserted
)";
  Workspace w = parse_workspace(text);
  const GroupPresentation& z = w.group("zsemi");
  REQUIRE(z.declared_hull().has_value());
  CHECK(z.declared_hull()->density_asserted);
  CHECK(z.declared_hull()->torus_words.size() == 1);
  // without the hull the same group must be rejected (scope)
  const char* no_hull = R"(
[algebra r1]
dim = 1
[group zsemi]
algebra = r1
holonomy trivial
generator t = (translation = (0); auto = [[2]])
)";
  CHECK_THROWS_AS(parse_workspace(no_hull), Error);
}

TEST_CASE("morphism sections load and verify") {
  std::string text = std::string(kKlein) + R"(
[algebra r1]
dim = 1

[group z1]
algebra = r1
holonomy trivial
generator t = (translation = (1); auto = [[1]])
series t
assert properly-discontinuous

[morphism quot]
source = klein
target = z1
map a -> 1
map b -> t
certificate t = b
)";
  Workspace w = parse_workspace(text);
  const GroupMorphism& q = w.morphism("quot");
  CHECK(q.images[0].trivial());
  CHECK(q.images[1] == Word::gen(0));
  REQUIRE(q.certificate.size() == 1);
  CHECK(q.certificate[0].has_value());

  // a non-morphism is rejected at load
  std::string bad = std::string(kKlein) + R"(
[morphism swap]
source = klein
target = klein
map a -> b
map b -> a
)";
  CHECK_THROWS_AS(parse_workspace(bad), Error);
}

TEST_CASE("serialize-parse round trip is the identity") {
  std::string text = std::string(kKlein) + R"(
[algebra r1]
dim = 1

[group z1]
algebra = r1
holonomy trivial
generator t = (translation = (1); auto = [[1]])
series t
assert properly-discontinuous

[morphism quot]
source = klein
target = z1
map a -> 1
map b -> t
certificate t = b

[group zsemi]
algebra = r1
holonomy trivial
generator s = (translation = (0); auto = [[3]])

[hull zsemi]
torus s
density = asserted
)";
  Workspace w = parse_workspace(text);
  std::string dumped = serialize_workspace(w);
  Workspace w2 = parse_workspace(dumped);
  REQUIRE(w2.groups.size() == w.groups.size());
  for (size_t i = 0; i < w.groups.size(); ++i) {
    CHECK(w2.groups[i].first == w.groups[i].first);
    CHECK(w2.groups[i].second == w.groups[i].second);
  }
  REQUIRE(w2.morphisms.size() == 1);
  CHECK(w2.morphisms[0].value.images == w.morphisms[0].value.images);
  // byte-identical re-serialization
  CHECK(serialize_workspace(w2) == dumped);
}
