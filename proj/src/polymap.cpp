#include "nilaff/polymap.hpp"

#include <algorithm>
#include <sstream>

namespace nilaff {

namespace {

std::vector<MultiPoly> identity_components(int n) {
  std::vector<MultiPoly> out;
  for (int i = 0; i < n; ++i) out.push_back(MultiPoly::variable(n, i));
  return out;
}

std::vector<MultiPoly> substitute_all(const std::vector<MultiPoly>& outer,
                                      const std::vector<MultiPoly>& inner) {
  std::vector<MultiPoly> out;
  for (const auto& c : outer) out.push_back(c.substitute(inner));
  return out;
}

bool is_identity_map(const std::vector<MultiPoly>& comps) {
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i] != MultiPoly::variable(static_cast<int>(comps.size()), static_cast<int>(i)))
      return false;
  return true;
}

MultiPoly truncate(const MultiPoly& p, int max_degree) {
  MultiPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (int x : e) d += x;
    if (d <= max_degree) out += MultiPoly::monomial(p.nvars(), e, c);
  }
  return out;
}

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b, int nvars) {
  size_t n = a.size();
  PolyMatrix c(n, std::vector<MultiPoly>(n, MultiPoly(nvars)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        c[i][j] += a[i][k] * b[k][j];
      }
    }
  return c;
}

bool poly_matrix_zero(const PolyMatrix& a) {
  for (const auto& row : a)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

}  // namespace

PolyMap::PolyMap(int source_dim, int target_dim, std::vector<MultiPoly> components,
                 std::optional<std::vector<MultiPoly>> inverse, int degree_bound)
    : source_dim(source_dim),
      target_dim(target_dim),
      components(std::move(components)),
      inverse_components(std::move(inverse)),
      degree_bound(degree_bound) {
  if (static_cast<int>(this->components.size()) != target_dim)
    fail(ErrorKind::Dimension, "polynomial map needs one component per target coordinate");
  for (const auto& c : this->components)
    if (c.nvars() != source_dim)
      fail(ErrorKind::Dimension, "polynomial map component variable count");
  if (inverse_components) {
    if (source_dim != target_dim)
      fail(ErrorKind::Dimension, "only square polynomial maps carry inverses");
    if (static_cast<int>(inverse_components->size()) != source_dim)
      fail(ErrorKind::Dimension, "inverse component count");
    for (const auto& c : *inverse_components)
      if (c.nvars() != target_dim) fail(ErrorKind::Dimension, "inverse component variable count");
    if (!is_identity_map(substitute_all(this->components, *inverse_components)) ||
        !is_identity_map(substitute_all(*inverse_components, this->components)))
      fail(ErrorKind::Input, "declared inverse does not invert the map");
  }
  if (degree_bound > 0) {
    if (degree() > degree_bound)
      fail(ErrorKind::Input, "polynomial map exceeds its degree bound");
    if (inverse_components)
      for (const auto& c : *inverse_components)
        if (c.total_degree() > degree_bound)
          fail(ErrorKind::Input, "inverse exceeds the degree bound");
  }
}

PolyMap PolyMap::identity(int n) {
  return PolyMap(n, n, identity_components(n), identity_components(n));
}

int PolyMap::degree() const {
  int d = 0;
  for (const auto& c : components) d = std::max(d, c.total_degree());
  return d;
}

PolyMap PolyMap::inverse() const {
  if (!inverse_components) fail(ErrorKind::Input, "polynomial map carries no inverse");
  return PolyMap(target_dim, source_dim, *inverse_components, components, degree_bound);
}

std::string PolyMap::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < components.size(); ++i)
    os << (i ? ", " : "") << components[i].str();
  os << ")";
  return os.str();
}

QVector poly_apply(const PolyMap& p, const QVector& point) {
  if (static_cast<int>(point.size()) != p.source_dim)
    fail(ErrorKind::Dimension, "poly_apply point size");
  QVector out;
  for (const auto& c : p.components) out.push_back(c.eval(point));
  return out;
}

PolyMap poly_compose(const PolyMap& p, const PolyMap& q) {
  if (p.source_dim != q.target_dim)
    fail(ErrorKind::Dimension, "poly_compose dimension mismatch");
  std::vector<MultiPoly> comps = substitute_all(p.components, q.components);
  std::optional<std::vector<MultiPoly>> inv;
  if (p.inverse_components && q.inverse_components)
    inv = substitute_all(*q.inverse_components, *p.inverse_components);
  int bound = std::max(p.degree_bound, q.degree_bound);
  if (bound > 0) {
    for (const auto& c : comps)
      if (c.total_degree() > bound)
        fail(ErrorKind::Input, "composition exceeds the configured degree bound " +
                                   std::to_string(bound) + " (degree " +
                                   std::to_string(c.total_degree()) + ")");
  }
  return PolyMap(q.source_dim, p.target_dim, std::move(comps), std::move(inv), bound);
}

std::optional<std::vector<MultiPoly>> poly_formal_inverse(const std::vector<MultiPoly>& comps,
                                                          int cap) {
  int n = static_cast<int>(comps.size());
  for (const auto& c : comps)
    if (c.nvars() != n) return std::nullopt;
  // split p = b + A x + h with h of order >= 2
  QMatrix a(n, n);
  QVector b(n);
  std::vector<MultiPoly> h(n, MultiPoly(n));
  for (int i = 0; i < n; ++i) {
    b[i] = comps[i].constant_term();
    for (const auto& [e, c] : comps[i].terms()) {
      int d = 0, var = -1;
      for (int k = 0; k < n; ++k) {
        d += e[k];
        if (e[k] > 0) var = k;
      }
      if (d == 1)
        a.at(i, var) = c;
      else if (d >= 2)
        h[i] += MultiPoly::monomial(n, e, c);
    }
  }
  auto a_inv = try_inverse(a);
  if (!a_inv) return std::nullopt;

  auto linear_solve = [&](const std::vector<MultiPoly>& rhs) {
    std::vector<MultiPoly> out(n, MultiPoly(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!a_inv->at(i, j).is_zero()) out[i] += a_inv->at(i, j) * rhs[j];
    return out;
  };

  std::vector<MultiPoly> q = identity_components(n);
  for (int i = 0; i < n; ++i) q[i] -= MultiPoly::constant(n, b[i]);
  q = linear_solve(q);
  for (int it = 0; it <= cap + 1; ++it) {
    std::vector<MultiPoly> rhs = identity_components(n);
    std::vector<MultiPoly> hq = substitute_all(h, q);
    for (int i = 0; i < n; ++i) rhs[i] = truncate(rhs[i] - MultiPoly::constant(n, b[i]) - hq[i], cap);
    std::vector<MultiPoly> next = linear_solve(rhs);
    for (auto& c : next) c = truncate(c, cap);
    if (next == q) break;
    q = std::move(next);
  }
  if (!is_identity_map(substitute_all(comps, q)) ||
      !is_identity_map(substitute_all(q, comps)))
    return std::nullopt;
  return q;
}

PolyMap affine_action_polymap(const Linearization& lin, const AffTrans& g) {
  std::vector<MultiPoly> comps = lin.action_polynomials(g);
  std::vector<MultiPoly> inv = lin.action_polynomials(aff_inverse(g));
  return PolyMap(lin.algebra()->dim(), lin.algebra()->dim(), std::move(comps), std::move(inv));
}

PolyMap affmap_polymap(const AffMap& alpha) {
  const AlgebraRef& src = alpha.source();
  const AlgebraRef& tgt = alpha.target();
  int n1 = src->dim();
  int n2 = tgt->dim();
  PolyRing ring{n1};
  std::vector<MultiPoly> dn, xs;
  const QMatrix& d = alpha.morphism.matrix();
  for (int i = 0; i < n2; ++i) {
    MultiPoly p(n1);
    for (int j = 0; j < n1; ++j)
      if (!d.at(i, j).is_zero()) p += d.at(i, j) * MultiPoly::variable(n1, j);
    dn.push_back(std::move(p));
    xs.push_back(MultiPoly::constant(n1, alpha.translation.coords[i]));
  }
  return PolyMap(n1, n2, tgt->bch(ring, dn, xs));
}

std::vector<PolyMap> conjugate_action(const GroupPresentation& pres, const PolyMap& p) {
  if (!p.has_inverse()) fail(ErrorKind::Input, "conjugation needs an invertible polynomial map");
  if (p.source_dim != pres.algebra()->dim())
    fail(ErrorKind::Dimension, "conjugator dimension mismatch");
  const Linearization& lin = *pres.lin();
  PolyMap p_inv = p.inverse();
  std::vector<PolyMap> out;
  for (const auto& g : pres.generators())
    out.push_back(poly_compose(poly_compose(p, affine_action_polymap(lin, g)), p_inv));
  // relators still evaluate to the identity map
  for (const Word& r : pres.relators()) {
    PolyMap acc = PolyMap::identity(p.target_dim);
    for (const auto& [g, e] : r.letters) {
      PolyMap step = e >= 0 ? out[g] : out[g].inverse();
      for (int k = 0; k < (e >= 0 ? e : -e); ++k) acc = poly_compose(acc, step);
    }
    if (!is_identity_map(acc.components))
      fail(ErrorKind::Internal, "conjugated relator is not the identity map");
  }
  return out;
}

TranslationLikeModel make_translation_like(const GroupPresentation& pres,
                                           const ClosureData& closure, const GroupPoint& x0) {
  require_same_algebra(x0.algebra, pres.algebra(), "make_translation_like");
  if (!pres.properly_discontinuous())
    fail(ErrorKind::Scope,
         "make-translation-like requires the properly-discontinuous input assertion");
  const Linearization& lin = *pres.lin();
  int nv = lin.dim();

  // the basepoint must be fixed by the Levi part
  for (const auto& l : closure.levi.section)
    if (aff_act(l, x0) != x0)
      fail(ErrorKind::Input, "basepoint is not fixed by the Levi part");
  if (closure.levi.kind != LeviKind::Finite)
    fail(ErrorKind::Scope, "make-translation-like supports the quasi-unipotent class only");

  TranslationLikeModel out;
  out.u_model = closure.u_model();
  out.basepoint = x0;
  int k = static_cast<int>(out.u_model.basis.size());

  // generators of the new action on U: gamma = v l with l the Levi section
  // value over tag(gamma); the action is (v l) . u = v (l u l^-1).
  std::vector<AffTrans> new_gens;
  for (size_t i = 0; i < pres.generators().size(); ++i) {
    int tag = pres.tags()[i];
    int pos = -1;
    for (size_t e = 0; e < closure.levi.elements.size(); ++e)
      if (closure.levi.elements[e] == tag) pos = static_cast<int>(e);
    if (pos < 0) fail(ErrorKind::Internal, "generator tag missing from the Levi section");
    const AffTrans& l = closure.levi.section[pos];
    AffTrans v = aff_compose(pres.generators()[i], aff_inverse(l));
    QMatrix hv = lin.hom(v);
    if (!is_unipotent_matrix(hv))
      fail(ErrorKind::Input, "generator does not decompose as (unipotent) * (Levi section)");
    QVector v_coords = out.u_model.to_coords(nilpotent_log(hv).entries());
    QMatrix hl = lin.hom(l);
    QMatrix hli = inverse(hl);
    QMatrix conj(k, k);
    for (int j = 0; j < k; ++j) {
      QMatrix bj(nv, nv, out.u_model.basis[j]);
      QVector img = out.u_model.to_coords((hl * bj * hli).entries());
      for (int r = 0; r < k; ++r) conj.at(r, j) = img[r];
    }
    new_gens.push_back(AffTrans(GroupPoint(out.u_model.algebra, v_coords),
                                LieMorphism(out.u_model.algebra, out.u_model.algebra, conj)));
  }
  out.presentation = GroupPresentation::create(
      out.u_model.algebra, pres.gen_names(), new_gens, pres.relators(), pres.holonomy(),
      pres.tags(), pres.series_names(), pres.properly_discontinuous());

  // chart p(c) = exp(sum c_j X_j) . x0, read off the linearization applied to
  // the monomial values at x0

  PolyMatrix s(nv, std::vector<MultiPoly>(nv, MultiPoly(k)));
  for (int j = 0; j < k; ++j) {
    QMatrix xj(nv, nv, out.u_model.basis[j]);
    for (int r = 0; r < nv; ++r)
      for (int c = 0; c < nv; ++c)
        if (!xj.at(r, c).is_zero())
          s[r][c] += xj.at(r, c) * MultiPoly::variable(k, j);
  }
  PolyMatrix expm(nv, std::vector<MultiPoly>(nv, MultiPoly(k)));
  for (int i = 0; i < nv; ++i) expm[i][i] = MultiPoly::constant(k, Rat(1));
  PolyMatrix power = s;
  Rat fact(1);
  for (int m = 1; m <= nv && !poly_matrix_zero(power); ++m) {
    fact /= Rat(m);
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) expm[i][j] += fact * power[i][j];
    power = poly_matrix_mul(power, s, k);
  }
  QVector monomial_values;
  for (const auto& mono : lin.monomials()) {
    Rat v(1);
    for (int i = 0; i < pres.algebra()->dim(); ++i)
      for (int t = 0; t < mono[i]; ++t) v *= x0.coords[i];
    monomial_values.push_back(v);
  }
  int n = pres.algebra()->dim();
  std::vector<MultiPoly> chart(n, MultiPoly(k));
  for (int i = 0; i < n; ++i) {
    Exponents ei(n, 0);
    ei[i] = 1;
    int row = -1;
    for (size_t m = 0; m < lin.monomials().size(); ++m)
      if (lin.monomials()[m] == ei) row = static_cast<int>(m);
    for (int m = 0; m < nv; ++m)
      if (!monomial_values[m].is_zero()) chart[i] += monomial_values[m] * expm[row][m];
  }
  std::optional<std::vector<MultiPoly>> chart_inv;
  if (k == n) {
    int deg = 1;
    for (const auto& c : chart) deg = std::max(deg, c.total_degree());
    int cap = 1;
    for (int i = 1; i < std::max(n, 1); ++i) cap *= deg;
    chart_inv = poly_formal_inverse(chart, std::max(cap, deg));
    if (!chart_inv)
      fail(ErrorKind::Internal, "orbit chart of a crystallographic action is not invertible");
  }
  out.chart = PolyMap(k, n, std::move(chart), std::move(chart_inv));

  // conjugation identity: chart . rho'(g) = rho(g) . chart, symbolically
  const Linearization& lin2 = *out.presentation.lin();
  for (size_t i = 0; i < pres.generators().size(); ++i) {
    PolyMap lhs = poly_compose(out.chart, affine_action_polymap(lin2, new_gens[i]));
    PolyMap rhs = poly_compose(affine_action_polymap(lin, pres.generators()[i]), out.chart);
    if (!(lhs == rhs))
      fail(ErrorKind::Internal, "orbit chart does not conjugate the actions");
  }
  return out;
}

TranslationLikeModel make_translation_like(const GroupPresentation& pres) {
  ClosureData closure = compute_closure(pres);
  if (closure.levi.kind != LeviKind::Finite)
    fail(ErrorKind::Scope, "make-translation-like supports the quasi-unipotent class only");
  FixedCoset fixed = fixed_points_reductive(pres.algebra(), closure.levi.generators(),
                                            LeviKind::Finite);
  return make_translation_like(pres, closure, fixed.basepoint);
}

PolyIntertwiner induce_polynomial_map(const GroupMorphism& phi) {
  VerifyResult v = verify_morphism(phi);
  if (!v.ok)
    fail(ErrorKind::Input,
         "not a morphism: relator " + v.violated.str(phi.source.gen_names()) + " is violated");
  ClosureData c1 = compute_closure(phi.source);
  ClosureData c2 = compute_closure(phi.target);
  if (c1.u_dim != phi.source.algebra()->dim())
    fail(ErrorKind::Input, "source action is not crystallographic");
  if (c2.u_dim != phi.target.algebra()->dim())
    fail(ErrorKind::Input, "target action is not crystallographic");

  FixedCoset f1 = fixed_points_reductive(phi.source.algebra(), c1.levi.generators(),
                                         LeviKind::Finite);
  FixedCoset f2 = fixed_points_reductive(phi.target.algebra(), c2.levi.generators(),
                                         LeviKind::Finite);
  TranslationLikeModel m1 = make_translation_like(phi.source, c1, f1.basepoint);
  TranslationLikeModel m2 = make_translation_like(phi.target, c2, f2.basepoint);

  GroupMorphism phi_models;
  phi_models.source = m1.presentation;
  phi_models.target = m2.presentation;
  phi_models.images = phi.images;
  phi_models.certificate = phi.certificate;
  InduceResult core = induce_affine_map(phi_models);

  PolyMap p = poly_compose(poly_compose(m2.chart, affmap_polymap(core.alpha)),
                           m1.chart.inverse());
  for (size_t i = 0; i < phi.source.generators().size(); ++i)
    if (!poly_intertwines_on_word(phi, p, Word::gen(static_cast<int>(i))))
      fail(ErrorKind::Internal, "polynomial intertwiner fails the identity");
  return {p, core.alpha};
}

bool poly_intertwines_on_word(const GroupMorphism& phi, const PolyMap& p, const Word& w) {
  PolyMap lhs = poly_compose(affine_action_polymap(*phi.target.lin(), phi.image_of(w)), p);
  PolyMap rhs = poly_compose(p, affine_action_polymap(*phi.source.lin(), phi.source.evaluate(w)));
  return lhs == rhs;
}

}  // namespace nilaff
