#include "nilaff/presentation.hpp"

#include <algorithm>
#include <sstream>

namespace nilaff {

FiniteGroup::FiniteGroup() : names_{"e"}, table_{{0}}, identity_(0) {}

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  validate();
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorKind::Input, "cyclic group order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return FiniteGroup(std::move(names), std::move(table));
}

void FiniteGroup::validate() {
  int n = static_cast<int>(names_.size());
  if (n == 0) fail(ErrorKind::Input, "holonomy group must be nonempty");
  if (static_cast<int>(table_.size()) != n)
    fail(ErrorKind::Input, "holonomy table row count");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::Input, "holonomy table column count");
    for (int x : row)
      if (x < 0 || x >= n) fail(ErrorKind::Input, "holonomy table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a) ok = ok && table_[e][a] == a && table_[a][e] == a;
    if (ok) { identity_ = e; break; }
  }
  if (identity_ < 0) fail(ErrorKind::Input, "holonomy table has no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          fail(ErrorKind::Input, "holonomy table is not associative");
  for (int a = 0; a < n; ++a) {
    bool has_inv = false;
    for (int b = 0; b < n; ++b) has_inv = has_inv || table_[a][b] == identity_;
    if (!has_inv) fail(ErrorKind::Input, "holonomy element without inverse");
  }
}

std::optional<int> FiniteGroup::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int FiniteGroup::mul(int a, int b) const { return table_[a][b]; }

int FiniteGroup::inv(int a) const {
  for (int b = 0; b < order(); ++b)
    if (table_[a][b] == identity_) return b;
  fail(ErrorKind::Internal, "element without inverse slipped through validation");
}

int FiniteGroup::power(int a, long k) const {
  int base = k < 0 ? inv(a) : a;
  long n = k < 0 ? -k : k;
  int r = identity_;
  for (long i = 0; i < n; ++i) r = mul(r, base);
  return r;
}

std::vector<int> FiniteGroup::subgroup_generated(const std::vector<int>& gens) const {
  std::vector<int> members{identity_};
  std::vector<bool> seen(order(), false);
  seen[identity_] = true;
  for (size_t i = 0; i < members.size(); ++i)
    for (int g : gens) {
      for (int x : {mul(members[i], g), mul(members[i], inv(g))}) {
        if (!seen[x]) {
          seen[x] = true;
          members.push_back(x);
        }
      }
    }
  return members;
}

Word Word::inverse() const {
  Word r;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    r.letters.push_back({it->first, -it->second});
  return r;
}

Word Word::concat(const Word& o) const {
  Word r = *this;
  r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
  return r;
}

Word Word::commutator_with(const Word& o) const {
  return concat(o).concat(inverse()).concat(o.inverse());
}

std::string Word::str(const std::vector<std::string>& names) const {
  if (letters.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < letters.size(); ++i) {
    if (i) os << " ";
    os << names[letters[i].first];
    if (letters[i].second != 1) os << "^" << letters[i].second;
  }
  return os.str();
}

GroupPresentation GroupPresentation::create(AlgebraRef algebra,
                                            std::vector<std::string> gen_names,
                                            std::vector<AffTrans> generators,
                                            std::vector<Word> relators, FiniteGroup holonomy,
                                            std::vector<int> tags,
                                            std::vector<std::string> series_names,
                                            bool properly_discontinuous,
                                            std::optional<DeclaredHull> hull) {
  GroupPresentation p;
  p.algebra_ = std::move(algebra);
  p.gen_names_ = std::move(gen_names);
  p.generators_ = std::move(generators);
  p.relators_ = std::move(relators);
  p.holonomy_ = std::move(holonomy);
  p.tags_ = std::move(tags);
  p.series_names_ = std::move(series_names);
  p.properly_discontinuous_ = properly_discontinuous;
  p.hull_ = std::move(hull);

  if (p.gen_names_.size() != p.generators_.size())
    fail(ErrorKind::Input, "generator name/value count mismatch");
  if (p.tags_.size() != p.generators_.size())
    fail(ErrorKind::Input, "every generator needs a holonomy tag");
  for (int t : p.tags_)
    if (t < 0 || t >= p.holonomy_.order()) fail(ErrorKind::Input, "tag out of range");
  for (const auto& g : p.generators_)
    require_same_algebra(g.algebra(), p.algebra_, "presentation generator");
  for (const auto& n : p.series_names_) p.gen_index(n);

  for (const Word& r : p.relators_) {
    if (!p.evaluate(r).is_identity())
      fail(ErrorKind::Input,
           "relator " + r.str(p.gen_names_) + " does not evaluate to the identity");
    if (p.tag_of(r) != p.holonomy_.identity())
      fail(ErrorKind::Input, "tag map is not a homomorphism: relator " + r.str(p.gen_names_));
  }

  p.lin_ = std::make_shared<const Linearization>(p.algebra_);
  if (!p.hull_) {
    for (size_t i = 0; i < p.generators_.size(); ++i)
      if (p.tags_[i] == p.holonomy_.identity() && !p.lin_->is_unipotent(p.generators_[i]))
        fail(ErrorKind::Scope, "generator '" + p.gen_names_[i] +
                                   "' is tagged with the identity but is not unipotent; "
                                   "outside the quasi-unipotent scope (declare a hull)");
  }
  return p;
}

std::optional<int> GroupPresentation::declared_hirsch() const {
  if (series_names_.empty()) return std::nullopt;
  return static_cast<int>(series_names_.size());
}

int GroupPresentation::gen_index(const std::string& name) const {
  for (size_t i = 0; i < gen_names_.size(); ++i)
    if (gen_names_[i] == name) return static_cast<int>(i);
  fail(ErrorKind::Input, "unknown generator '" + name + "'");
}

AffTrans GroupPresentation::evaluate(const Word& w) const {
  AffTrans r = AffTrans::identity(algebra_);
  for (const auto& [g, e] : w.letters) {
    if (g < 0 || g >= static_cast<int>(generators_.size()))
      fail(ErrorKind::Input, "word references an unknown generator");
    r = aff_compose(r, aff_power(generators_[g], e));
  }
  return r;
}

int GroupPresentation::tag_of(const Word& w) const {
  int r = holonomy_.identity();
  for (const auto& [g, e] : w.letters) r = holonomy_.mul(r, holonomy_.power(tags_[g], e));
  return r;
}

}  // namespace nilaff
