#include "nilaff/lie.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nilaff/jordan.hpp"

namespace nilaff {

namespace {

// Enumerates the Dynkin expansion of log(exp X exp Y): blocks (r_i, s_i) with
// r_i + s_i >= 1, summed with coefficient (-1)^(n-1) / (n * d * prod r_i! s_i!)
// where d is the total degree. Words are aggregated; words whose two innermost
// letters coincide are dropped since their right-nested bracket vanishes.
void enumerate_blocks(int max_degree, int used, int blocks,
                      std::vector<unsigned char>& word, const Rat& factorials,
                      std::map<std::vector<unsigned char>, Rat>& acc) {
  if (used > 0) {
    Rat coeff = Rat(blocks % 2 == 1 ? 1 : -1) / (Rat(blocks) * Rat(used)) * factorials;
    acc[word] += coeff;
  }
  if (used >= max_degree) return;
  for (int r = 0; r + used <= max_degree; ++r) {
    for (int s = (r == 0 ? 1 : 0); r + s + used <= max_degree; ++s) {
      Rat fact = factorials;
      for (int k = 2; k <= r; ++k) fact /= Rat(k);
      for (int k = 2; k <= s; ++k) fact /= Rat(k);
      for (int k = 0; k < r; ++k) word.push_back(0);
      for (int k = 0; k < s; ++k) word.push_back(1);
      enumerate_blocks(max_degree, used + r + s, blocks + 1, word, fact, acc);
      word.resize(word.size() - r - s);
    }
  }
}

}  // namespace

std::vector<BchTerm> bch_word_table(int max_degree) {
  std::map<std::vector<unsigned char>, Rat> acc;
  std::vector<unsigned char> word;
  enumerate_blocks(max_degree, 0, 0, word, Rat(1), acc);
  std::vector<BchTerm> table;
  for (auto& [w, c] : acc) {
    if (c.is_zero()) continue;
    if (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2]) continue;
    table.push_back({w, c});
  }
  return table;
}

AlgebraRef NilLieAlgebra::create(std::vector<int> weights,
                                 const std::vector<std::tuple<int, int, QVector>>& brackets) {
  auto alg = std::shared_ptr<NilLieAlgebra>(new NilLieAlgebra());
  int n = static_cast<int>(weights.size());
  alg->dim_ = n;
  alg->weights_ = std::move(weights);
  alg->c_.assign(static_cast<size_t>(n) * n, QVector(n));
  std::vector<bool> given(static_cast<size_t>(n) * n, false);
  for (const auto& [i, j, v] : brackets) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      fail(ErrorKind::Input, "bracket index out of range");
    if (i == j) {
      if (!is_zero(v)) fail(ErrorKind::Input, "nonzero bracket [e_i, e_i]");
      continue;
    }
    if (static_cast<int>(v.size()) != n) fail(ErrorKind::Dimension, "bracket coordinate size");
    size_t idx = static_cast<size_t>(i) * n + j;
    size_t tdx = static_cast<size_t>(j) * n + i;
    if (given[idx] && alg->c_[idx] != v)
      fail(ErrorKind::Input, "conflicting bracket entries (antisymmetry violated)");
    if (given[tdx] && alg->c_[tdx] != negate(v))
      fail(ErrorKind::Input, "conflicting bracket entries (antisymmetry violated)");
    alg->c_[idx] = v;
    alg->c_[tdx] = negate(v);
    given[idx] = given[tdx] = true;
  }
  alg->class_ = 0;
  for (int w : alg->weights_) alg->class_ = std::max(alg->class_, w);
  alg->validate();
  alg->bch_table_ = bch_word_table(std::max(alg->class_, 1));
  return alg;
}

AlgebraRef NilLieAlgebra::abelian(int dim) {
  return create(std::vector<int>(dim, 1), {});
}

void NilLieAlgebra::validate() const {
  for (int w : weights_)
    if (w < 1) fail(ErrorKind::Input, "basis weights must be positive");
  if (class_ > 6) fail(ErrorKind::Scope, "nilpotency class above 6 is not supported");

  RatRing ring;
  auto e = [&](int i) {
    QVector v(dim_);
    v[i] = Rat(1);
    return v;
  };
  // grading compatibility
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (!basis_bracket(i, j)[k].is_zero() && weights_[k] < weights_[i] + weights_[j])
          fail(ErrorKind::Input, "bracket violates the weight grading");
  // Jacobi
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = j + 1; k < dim_; ++k) {
        QVector s = bracket(ring, basis_bracket(i, j), e(k));
        s = s + bracket(ring, basis_bracket(j, k), e(i));
        s = s + bracket(ring, basis_bracket(k, i), e(j));
        if (!is_zero(s))
          fail(ErrorKind::Input, "Jacobi identity fails on basis triple (" +
                                     std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                     std::to_string(k + 1) + ")");
      }
  // Weights must realize the lower central series: span{e_i : w_i >= j} = gamma_j.
  SpanBuilder whole(dim_);
  for (int i = 0; i < dim_; ++i) whole.add(e(i));
  std::vector<QVector> layer = whole.basis();
  for (int j = 2; j <= class_ + 1; ++j) {
    SpanBuilder next(dim_);
    for (int i = 0; i < dim_; ++i)
      for (const QVector& v : layer) next.add(bracket(ring, e(i), v));
    SpanBuilder declared(dim_);
    for (int i = 0; i < dim_; ++i)
      if (weights_[i] >= j) declared.add(e(i));
    if (declared.dim() != next.dim())
      fail(ErrorKind::Input,
           "weights do not match the lower central series at depth " + std::to_string(j));
    for (const QVector& v : next.basis())
      if (!declared.contains(v))
        fail(ErrorKind::Input,
             "basis is not adapted to the lower central series at depth " + std::to_string(j));
    layer = next.basis();
  }
}

QMatrix NilLieAlgebra::ad(const QVector& xi) const {
  RatRing ring;
  QMatrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    QVector ej(dim_);
    ej[j] = Rat(1);
    QVector col = bracket(ring, xi, ej);
    for (int i = 0; i < dim_; ++i) m.at(i, j) = col[i];
  }
  return m;
}

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_algebra(const AlgebraRef& a, const AlgebraRef& b, const char* where) {
  if (!same_algebra(a, b)) fail(ErrorKind::Dimension, std::string(where) + ": algebra mismatch");
}

GroupPoint::GroupPoint(AlgebraRef alg, QVector c) : algebra(std::move(alg)), coords(std::move(c)) {
  if (static_cast<int>(coords.size()) != algebra->dim())
    fail(ErrorKind::Dimension, "point coordinate count != algebra dimension");
}

GroupPoint GroupPoint::identity(AlgebraRef alg) {
  int n = alg->dim();
  return GroupPoint(std::move(alg), QVector(n));
}

std::string GroupPoint::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i) os << (i ? ", " : "") << coords[i].str();
  os << ")";
  return os.str();
}

GroupPoint bch_multiply(const GroupPoint& x, const GroupPoint& y) {
  require_same_algebra(x.algebra, y.algebra, "bch_multiply");
  RatRing ring;
  return GroupPoint(x.algebra, x.algebra->bch(ring, x.coords, y.coords));
}

QMatrix ad_action(const GroupPoint& x) {
  return nilpotent_exp(x.algebra->ad(x.coords));
}

GroupPoint group_conjugate(const GroupPoint& x, const GroupPoint& y) {
  require_same_algebra(x.algebra, y.algebra, "group_conjugate");
  return GroupPoint(x.algebra, ad_action(x) * y.coords);
}

GroupPoint group_commutator(const GroupPoint& x, const GroupPoint& y) {
  return bch_multiply(group_conjugate(x, y), y.inverse());
}

LieMorphism::LieMorphism(AlgebraRef source, AlgebraRef target, QMatrix m)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(m)) {
  if (m_.rows() != target_->dim() || m_.cols() != source_->dim())
    fail(ErrorKind::Dimension, "morphism matrix shape");
  RatRing ring;
  for (int i = 0; i < source_->dim(); ++i)
    for (int j = i + 1; j < source_->dim(); ++j) {
      QVector lhs = m_ * source_->basis_bracket(i, j);
      QVector rhs = target_->bracket(ring, m_.col(i), m_.col(j));
      if (lhs != rhs)
        fail(ErrorKind::Input, "matrix does not preserve brackets (pair " +
                                   std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
}

LieMorphism LieMorphism::identity(AlgebraRef alg) {
  QMatrix id = QMatrix::identity(alg->dim());
  return LieMorphism(alg, alg, std::move(id));
}

LieMorphism LieMorphism::zero(AlgebraRef source, AlgebraRef target) {
  QMatrix z(target->dim(), source->dim());
  return LieMorphism(std::move(source), std::move(target), std::move(z));
}

bool LieMorphism::is_invertible() const {
  return m_.is_square() && try_inverse(m_).has_value();
}

LieMorphism LieMorphism::inverse() const {
  if (!m_.is_square()) fail(ErrorKind::Input, "inverse of non-square morphism");
  return LieMorphism(target_, source_, nilaff::inverse(m_));
}

LieMorphism LieMorphism::compose(const LieMorphism& inner) const {
  require_same_algebra(inner.target_, source_, "morphism composition");
  return LieMorphism(inner.source_, target_, m_ * inner.m_);
}

GroupPoint LieMorphism::apply(const GroupPoint& x) const {
  require_same_algebra(x.algebra, source_, "morphism application");
  return GroupPoint(target_, m_ * x.coords);
}

GroupPoint lie_morphism_apply(const LieMorphism& d, const GroupPoint& x) { return d.apply(x); }

LieMorphism extend_from_lattice(const std::vector<GroupPoint>& gens,
                                const std::vector<GroupPoint>& images) {
  if (gens.empty()) fail(ErrorKind::Input, "extend_from_lattice: no generators");
  if (gens.size() != images.size())
    fail(ErrorKind::Dimension, "extend_from_lattice: generator/image count mismatch");
  AlgebraRef src = gens[0].algebra;
  AlgebraRef tgt = images[0].algebra;
  for (const auto& g : gens) require_same_algebra(g.algebra, src, "extend_from_lattice");
  for (const auto& h : images) require_same_algebra(h.algebra, tgt, "extend_from_lattice");

  // Pick a spanning subset of generator logs.
  SpanBuilder span(src->dim());
  std::vector<int> chosen;
  for (size_t i = 0; i < gens.size(); ++i)
    if (span.add(gens[i].coords)) chosen.push_back(static_cast<int>(i));
  if (span.dim() != src->dim())
    fail(ErrorKind::Input, "extend_from_lattice: generator logs do not span the source");

  std::vector<QVector> cols, img_cols;
  for (int i : chosen) {
    cols.push_back(gens[i].coords);
    img_cols.push_back(images[i].coords);
  }
  QMatrix g = QMatrix::from_columns(cols);
  QMatrix h = QMatrix::from_columns(img_cols);
  QMatrix d = h * inverse(g);

  for (size_t i = 0; i < gens.size(); ++i)
    if (d * gens[i].coords != images[i].coords)
      fail(ErrorKind::Input, "extend_from_lattice: images are inconsistent with a linear map");

  // LieMorphism construction re-checks bracket preservation; translate its
  // failure into the contract's error.
  try {
    return LieMorphism(src, tgt, std::move(d));
  } catch (const Error& e) {
    fail(ErrorKind::Input, std::string("extend_from_lattice: ") + e.what());
  }
}

QVector SpanModel::to_coords(const QVector& ambient) const {
  std::vector<QVector> cols = basis;
  if (cols.empty()) {
    if (!nilaff::is_zero(ambient))
      fail(ErrorKind::Input, "vector outside the zero subalgebra");
    return {};
  }
  auto sol = solve_linear(QMatrix::from_columns(cols), ambient);
  if (sol.empty()) fail(ErrorKind::Input, "vector outside the subalgebra span");
  return *sol.particular;
}

QVector SpanModel::from_coords(const QVector& coords) const {
  QVector out(ambient_dim);
  if (static_cast<int>(coords.size()) != static_cast<int>(basis.size()))
    fail(ErrorKind::Dimension, "SpanModel::from_coords size");
  for (size_t i = 0; i < basis.size(); ++i) out = out + coords[i] * basis[i];
  return out;
}

bool SpanModel::contains(const QVector& ambient) const {
  SpanBuilder sb(ambient_dim);
  for (const auto& b : basis) sb.add(b);
  return sb.contains(ambient);
}

SpanModel build_span_model(
    int ambient_dim, const std::function<QVector(const QVector&, const QVector&)>& bracket,
    const std::vector<QVector>& span) {
  SpanBuilder whole(ambient_dim);
  for (const auto& v : span) whole.add(v);
  for (const auto& a : whole.basis())
    for (const auto& b : whole.basis())
      if (!whole.contains(bracket(a, b)))
        fail(ErrorKind::Input, "span is not bracket-closed");

  // Lower central series of the subalgebra.
  std::vector<std::vector<QVector>> gammas;
  gammas.push_back(whole.basis());
  while (!gammas.back().empty()) {
    SpanBuilder next(ambient_dim);
    for (const auto& a : whole.basis())
      for (const auto& b : gammas.back()) next.add(bracket(a, b));
    if (next.dim() == static_cast<int>(gammas.back().size())) {
      if (next.dim() != 0) fail(ErrorKind::Internal, "lower central series stalled (not nilpotent)");
      break;
    }
    gammas.push_back(next.basis());
    if (static_cast<int>(gammas.size()) > ambient_dim + 2)
      fail(ErrorKind::Internal, "lower central series did not terminate");
  }

  // Adapted basis: deepest layers first, then reorder by ascending weight.
  SpanBuilder selected(ambient_dim);
  std::vector<std::pair<int, QVector>> picked;  // (weight, vector)
  for (int j = static_cast<int>(gammas.size()); j-- > 0;)
    for (const auto& v : gammas[j])
      if (selected.add(v)) picked.push_back({j + 1, v});
  std::stable_sort(picked.begin(), picked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  SpanModel model;
  model.ambient_dim = ambient_dim;
  std::vector<int> weights;
  for (auto& [w, v] : picked) {
    weights.push_back(w);
    model.basis.push_back(v);
  }
  int k = static_cast<int>(model.basis.size());
  std::vector<std::tuple<int, int, QVector>> constants;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      constants.push_back({i, j, [&] {
                             QVector amb = bracket(model.basis[i], model.basis[j]);
                             // coordinates w.r.t. the adapted basis
                             if (k == 0) return QVector{};
                             auto sol = solve_linear(QMatrix::from_columns(model.basis), amb);
                             if (sol.empty())
                               fail(ErrorKind::Internal, "bracket left the subalgebra");
                             return *sol.particular;
                           }()});
  model.algebra = NilLieAlgebra::create(weights, constants);
  return model;
}

}  // namespace nilaff
