#include "nilaff/morphism.hpp"

#include <algorithm>
#include <sstream>

namespace nilaff {

namespace {

// N-coordinates of a matrix in the translation log space.
QVector translation_coords(const Linearization& lin, const QMatrix& x) {
  const AlgebraRef& alg = lin.algebra();
  if (alg->dim() == 0) {
    if (!is_zero(x.entries()))
      fail(ErrorKind::Input, "matrix is not a translation log");
    return {};
  }
  std::vector<QVector> cols;
  for (const auto& l : lin.translation_log_basis()) cols.push_back(l.entries());
  auto sol = solve_linear(QMatrix::from_columns(cols), x.entries());
  if (sol.empty()) fail(ErrorKind::Input, "matrix is not a translation log");
  return *sol.particular;
}

std::vector<AffTrans> enumerate_finite_group(AlgebraRef alg, const std::vector<AffTrans>& gens,
                                             size_t bound = 1024) {
  std::vector<AffTrans> members{AffTrans::identity(alg)};
  auto add = [&](const AffTrans& g) {
    for (const auto& m : members)
      if (m == g) return false;
    members.push_back(g);
    return true;
  };
  for (size_t i = 0; i < members.size(); ++i) {
    for (const auto& g : gens) {
      if (members.size() > bound)
        fail(ErrorKind::Input, "generated group is not finite within the enumeration bound");
      add(aff_compose(members[i], g));
      add(aff_compose(members[i], aff_inverse(g)));
    }
  }
  return members;
}

}  // namespace

Word GroupMorphism::map_word(const Word& w) const {
  Word out;
  for (const auto& [g, e] : w.letters) {
    if (g < 0 || g >= static_cast<int>(images.size()))
      fail(ErrorKind::Input, "word references an unknown source generator");
    Word img = e >= 0 ? images[g] : images[g].inverse();
    int reps = e >= 0 ? e : -e;
    for (int k = 0; k < reps; ++k) out = out.concat(img);
  }
  return out;
}

VerifyResult verify_morphism(const GroupMorphism& phi) {
  if (phi.images.size() != phi.source.generators().size())
    fail(ErrorKind::Input, "morphism needs one image word per source generator");
  for (const Word& r : phi.source.relators()) {
    if (!phi.image_of(r).is_identity()) return {false, r};
  }
  return {true, {}};
}

GroupPresentation image_presentation(const GroupMorphism& phi) {
  const GroupPresentation& tgt = phi.target;
  if (tgt.declared_hull() || phi.source.declared_hull())
    fail(ErrorKind::Scope, "morphism pipeline supports the quasi-unipotent class only");

  std::vector<AffTrans> gens;
  std::vector<int> image_tags;
  for (const Word& w : phi.images) {
    gens.push_back(tgt.evaluate(w));
    image_tags.push_back(tgt.tag_of(w));
  }
  // shrink the holonomy to the subgroup generated by the image tags
  const FiniteGroup& f = tgt.holonomy();
  std::vector<int> members = f.subgroup_generated(image_tags);
  std::vector<int> old_to_new(f.order(), -1);
  std::vector<std::string> names;
  for (size_t i = 0; i < members.size(); ++i) {
    old_to_new[members[i]] = static_cast<int>(i);
    names.push_back(f.name(members[i]));
  }
  std::vector<std::vector<int>> table(members.size(), std::vector<int>(members.size()));
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = 0; j < members.size(); ++j)
      table[i][j] = old_to_new[f.mul(members[i], members[j])];
  FiniteGroup sub(names, table);
  std::vector<int> tags;
  for (int t : image_tags) tags.push_back(old_to_new[t]);

  return GroupPresentation::create(tgt.algebra(), phi.source.gen_names(), gens,
                                   phi.source.relators(), sub, tags, {},
                                   tgt.properly_discontinuous());
}

AffTrans HullMorphism::map_unipotent(const Linearization& source_lin,
                                     const Linearization& target_lin,
                                     const AffTrans& u) const {
  QMatrix h = source_lin.hom(u);
  if (!is_unipotent_matrix(h)) fail(ErrorKind::Input, "element is not unipotent");
  QVector coords = source_u.to_coords(nilpotent_log(h).entries());
  QVector image = unipotent_part.matrix() * coords;
  QMatrix log(target_lin.dim(), target_lin.dim());
  if (!image.empty())
    log = QMatrix(target_lin.dim(), target_lin.dim(), target_u.from_coords(image));
  return target_lin.delinearize_hom(nilpotent_exp(log));
}

HullMorphism extend_to_hulls(const GroupMorphism& phi) {
  VerifyResult v = verify_morphism(phi);
  if (!v.ok)
    fail(ErrorKind::Input,
         "not a morphism: relator " + v.violated.str(phi.source.gen_names()) + " is violated");

  // surjectivity certificate
  if (phi.certificate.size() != phi.target.generators().size())
    fail(ErrorKind::Input, "surjectivity certificate required");
  for (size_t j = 0; j < phi.target.generators().size(); ++j) {
    if (!phi.certificate[j]) fail(ErrorKind::Input, "surjectivity certificate required");
    AffTrans value = phi.image_of(*phi.certificate[j]);
    if (!(value == phi.target.generators()[j]))
      fail(ErrorKind::Input, "surjectivity certificate is invalid for generator '" +
                                 phi.target.gen_names()[j] + "'");
  }

  ClosureData c1 = compute_closure(phi.source);
  ClosureData c2 = compute_closure(phi.target);
  if (!check_hull_axioms(phi.source, c1).all_pass())
    fail(ErrorKind::Input, "source closure does not satisfy the hull axioms; extension undefined");
  if (!check_hull_axioms(phi.target, c2).all_pass())
    fail(ErrorKind::Input, "target closure does not satisfy the hull axioms; extension undefined");

  HullMorphism out;
  out.source_u = c1.u_model();
  out.target_u = c2.u_model();

  // Spanning set of the source radical: kernel generators plus left-normed
  // iterated commutators until the logs span.
  KernelData kernel = holonomy_kernel(phi.source);
  std::vector<Word> words;
  for (const auto& sg : kernel.gens) words.push_back(sg.word);
  std::vector<GroupPoint> src_points, tgt_points;
  SpanBuilder span(out.source_u.ambient_dim);
  auto absorb = [&](const Word& w) {
    AffTrans val = phi.source.evaluate(w);
    QMatrix h = phi.source.lin()->hom(val);
    if (!is_unipotent_matrix(h))
      fail(ErrorKind::Internal, "kernel word is not unipotent");
    QVector log = nilpotent_log(h).entries();
    span.add(log);
    AffTrans img = phi.image_of(w);
    QMatrix h2 = phi.target.lin()->hom(img);
    if (!is_unipotent_matrix(h2))
      fail(ErrorKind::Input, "image of kernel word " + w.str(phi.source.gen_names()) +
                                 " is not unipotent; the input data is inconsistent");
    src_points.emplace_back(out.source_u.algebra, out.source_u.to_coords(log));
    tgt_points.emplace_back(out.target_u.algebra,
                            out.target_u.to_coords(nilpotent_log(h2).entries()));
  };
  for (const Word& w : words) absorb(w);
  std::vector<Word> level = words;
  int klass = std::max(out.source_u.algebra->nilpotency_class(), 1);
  for (int depth = 2; depth <= klass && span.dim() < static_cast<int>(out.source_u.basis.size());
       ++depth) {
    std::vector<Word> next;
    for (const Word& a : words)
      for (const Word& b : level) next.push_back(a.commutator_with(b));
    for (const Word& w : next) absorb(w);
    level = std::move(next);
  }
  if (span.dim() != static_cast<int>(out.source_u.basis.size()))
    fail(ErrorKind::Internal, "kernel words do not span the unipotent radical");

  out.unipotent_part = extend_from_lattice(src_points, tgt_points);

  // Levi images: l_f = correction(f) * s(word_f), so
  // phibar(l_f) = phibar(correction(f)) * phi(word_f).
  out.levi_elements = c1.levi.elements;
  for (size_t i = 0; i < c1.levi.elements.size(); ++i) {
    AffTrans corr_img =
        out.map_unipotent(*phi.source.lin(), *phi.target.lin(), c1.levi.corrections[i]);
    AffTrans word_img = phi.image_of(c1.levi.words[i]);
    AffTrans img = aff_compose(corr_img, word_img);
    auto [s, u] = jordan_chevalley(phi.target.lin()->hom(img));
    if (!u.is_identity())
      fail(ErrorKind::Internal, "hull image of a Levi element is not semisimple");
    out.levi_images.push_back(img);
  }

  // equivariance: D(Ad(l) X) = Ad(phibar(l)) D(X) on the radical bases
  int n1 = phi.source.lin()->dim();
  int n2 = phi.target.lin()->dim();
  for (size_t i = 0; i < out.levi_elements.size(); ++i) {
    QMatrix h1 = phi.source.lin()->hom(c1.levi.section[i]);
    QMatrix h1i = inverse(h1);
    QMatrix h2 = phi.target.lin()->hom(out.levi_images[i]);
    QMatrix h2i = inverse(h2);
    for (const auto& bx : out.source_u.basis) {
      QVector lhs_coords = out.unipotent_part.matrix() *
                           out.source_u.to_coords((h1 * QMatrix(n1, n1, bx) * h1i).entries());
      QMatrix rhs_mat(n2, n2, out.target_u.from_coords(out.unipotent_part.matrix() *
                                                       out.source_u.to_coords(bx)));
      QVector rhs_coords = out.target_u.to_coords((h2 * rhs_mat * h2i).entries());
      if (lhs_coords != rhs_coords)
        fail(ErrorKind::Internal, "hull extension is not Levi-equivariant");
    }
  }
  return out;
}

bool FixedCoset::contains(const GroupPoint& p) const {
  if (is_empty) return false;
  GroupPoint rel = bch_multiply(p, basepoint.inverse());
  SpanBuilder span(static_cast<int>(basepoint.coords.size()));
  for (const auto& v : subalgebra_basis) span.add(v);
  return span.contains(rel.coords);
}

FixedCoset fixed_points_reductive(AlgebraRef algebra, const std::vector<AffTrans>& gens,
                                  LeviKind kind) {
  for (const auto& g : gens) require_same_algebra(g.algebra(), algebra, "fixed_points_reductive");
  std::vector<AffTrans> elements =
      kind == LeviKind::Finite ? enumerate_finite_group(algebra, gens) : gens;

  int n = algebra->dim();
  int klass = std::max(algebra->nilpotency_class(), 1);
  GroupPoint n0 = GroupPoint::identity(algebra);

  for (int layer = 1; layer <= klass; ++layer) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (algebra->weight(i) == layer) idx.push_back(i);
    if (idx.empty()) continue;

    std::vector<QVector> defects;
    for (const auto& k : elements) {
      GroupPoint moved = bch_multiply(aff_act(k, n0), n0.inverse());
      for (int i = 0; i < n; ++i)
        if (algebra->weight(i) < layer && !moved.coords[i].is_zero())
          fail(ErrorKind::Internal, "fixed-point defect escaped its layer");
      defects.push_back(moved.coords);
    }

    QVector correction(n);
    if (kind == LeviKind::Finite) {
      Rat inv_order(1, static_cast<long>(elements.size()));
      for (const auto& d : defects)
        for (int i : idx) correction[i] += d[i];
      for (int i : idx) correction[i] *= inv_order;
    } else {
      // Joint layer system: (A_g - I) z = -d_g on the layer block, where A_g
      // is the conjugated differential Ad(x) D.
      int rows = 0;
      std::vector<QVector> sys_rows;
      QVector rhs;
      for (size_t e = 0; e < elements.size(); ++e) {
        QMatrix a = ad_action(elements[e].translation()) * elements[e].aut().matrix();
        for (int r : idx) {
          QVector row;
          for (int c : idx) row.push_back(a.at(r, c) - (r == c ? Rat(1) : Rat(0)));
          sys_rows.push_back(row);
          rhs.push_back(-defects[e][r]);
          ++rows;
        }
      }
      auto sol = solve_linear(QMatrix::from_rows(sys_rows), rhs);
      if (sol.empty())
        fail(ErrorKind::Input,
             "no common fixed point on a central-series layer; the generators do not "
             "generate a reductive group");
      for (size_t k = 0; k < idx.size(); ++k) correction[idx[k]] = (*sol.particular)[k];
    }
    n0 = bch_multiply(GroupPoint(algebra, correction), n0);
  }

  for (const auto& g : gens)
    if (aff_act(g, n0) != n0)
      fail(kind == LeviKind::Finite ? ErrorKind::Internal : ErrorKind::Input,
           "layer algorithm did not produce an exact fixed point");

  FixedCoset out;
  out.basepoint = n0;
  SpanBuilder common(n);
  bool first = true;
  std::vector<QVector> current;
  for (const auto& g : gens) {
    QMatrix a = ad_action(g.translation()) * g.aut().matrix();
    std::vector<QVector> ker = kernel_basis(a - QMatrix::identity(n));
    SpanBuilder kspan(n);
    for (const auto& v : ker) kspan.add(v);
    if (first) {
      current = kspan.basis();
      first = false;
    } else {
      std::vector<QVector> ccols = current, kcols = kspan.basis();
      if (ccols.empty() || kcols.empty()) {
        current.clear();
        continue;
      }
      // intersection via the kernel of [C | -K]
      QMatrix c = QMatrix::from_columns(ccols);
      QMatrix kk = QMatrix::from_columns(kcols);
      QMatrix joint(n, c.cols() + kk.cols());
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < c.cols(); ++j) joint.at(i, j) = c.at(i, j);
        for (int j = 0; j < kk.cols(); ++j) joint.at(i, c.cols() + j) = -kk.at(i, j);
      }
      SpanBuilder inter(n);
      for (const auto& v : kernel_basis(joint)) {
        QVector coeffs(v.begin(), v.begin() + c.cols());
        inter.add(c * coeffs);
      }
      current = inter.basis();
    }
  }
  if (first) {
    // trivial group: the whole algebra
    for (int i = 0; i < n; ++i) {
      QVector e(n);
      e[i] = Rat(1);
      current.push_back(e);
    }
  }
  out.subalgebra_basis = current;
  return out;
}

GroupPoint RestrictedAction::chart(const GroupPoint& m) const {
  GroupPoint ambient(basepoint.algebra, m_model.from_coords(m.coords));
  return bch_multiply(ambient, basepoint);
}

AffTrans RestrictedAction::restrict(const AffTrans& g) const {
  GroupPoint dn0 = g.aut().apply(basepoint);
  GroupPoint m0 = bch_multiply(bch_multiply(g.translation(), dn0), basepoint.inverse());
  if (!m_model.contains(m0.coords))
    fail(ErrorKind::Input, "coset is not invariant: translation defect leaves M");
  QMatrix conj = ad_action(bch_multiply(m0.inverse(), g.translation())) * g.aut().matrix();
  int k = static_cast<int>(m_model.basis.size());
  QMatrix restricted(k, k);
  for (int j = 0; j < k; ++j) {
    QVector img = conj * m_model.basis[j];
    if (!m_model.contains(img))
      fail(ErrorKind::Input, "coset is not invariant: differential does not preserve M");
    QVector coords = m_model.to_coords(img);
    for (int i = 0; i < k; ++i) restricted.at(i, j) = coords[i];
  }
  return AffTrans(GroupPoint(m_model.algebra, m_model.to_coords(m0.coords)),
                  LieMorphism(m_model.algebra, m_model.algebra, restricted));
}

RestrictedAction restrict_action(const GroupPresentation& pres,
                                 const std::vector<QVector>& subalgebra,
                                 const GroupPoint& basepoint) {
  require_same_algebra(basepoint.algebra, pres.algebra(), "restrict_action");
  RestrictedAction out;
  RatRing ring;
  const AlgebraRef alg = pres.algebra();
  auto bracket = [&](const QVector& a, const QVector& b) { return alg->bracket(ring, a, b); };
  out.m_model = build_span_model(alg->dim(), bracket, subalgebra);
  out.basepoint = basepoint;

  std::vector<AffTrans> gens;
  for (size_t i = 0; i < pres.generators().size(); ++i) {
    try {
      gens.push_back(out.restrict(pres.generators()[i]));
    } catch (const Error& e) {
      fail(e.kind, "generator '" + pres.gen_names()[i] + "': " + e.what());
    }
  }
  out.restricted =
      GroupPresentation::create(out.m_model.algebra, pres.gen_names(), gens, pres.relators(),
                                pres.holonomy(), pres.tags(), {}, pres.properly_discontinuous());
  return out;
}

namespace {

struct Pipeline {
  GroupPresentation image;
  ClosureData image_closure;
  FixedCoset restriction_coset;    // the coset restricted to
  RestrictedAction restriction;
  HullMorphism hull;
  LieMorphism delta;               // N1 -> N2
  QMatrix embed_m;                 // M coords -> N2 coords
  std::vector<AffTrans> levi2;     // phibar(L1^stab) inside Aff(M)
};

// Transport matrix from abstract radical coordinates to translation
// coordinates of the given linearization.
QMatrix radical_to_translations(const Linearization& lin, const SpanModel& u_model) {
  int n = lin.dim();
  std::vector<QVector> cols;
  for (const auto& b : u_model.basis)
    cols.push_back(translation_coords(lin, QMatrix(n, n, b)));
  if (cols.empty()) return QMatrix(lin.algebra()->dim(), 0);
  return QMatrix::from_columns(cols);
}

Pipeline run_pipeline(const GroupMorphism& phi, bool restrict_to_levi_orbit) {
  VerifyResult v = verify_morphism(phi);
  if (!v.ok)
    fail(ErrorKind::Input,
         "not a morphism: relator " + v.violated.str(phi.source.gen_names()) + " is violated");

  ClosureData c1 = compute_closure(phi.source);
  TranslationLikeResult tl1 = is_translation_like(phi.source, c1);
  if (!tl1.value)
    fail(ErrorKind::Input,
         "source action is not translation-like; no affine map needs to exist "
         "(use the polynomial pipeline)");
  if (!phi.source.properly_discontinuous())
    fail(ErrorKind::Scope, "source action must be asserted properly discontinuous");
  if (c1.u_dim != phi.source.algebra()->dim())
    fail(ErrorKind::Input, "source action is not crystallographic (dim U(G1) < dim N1)");
  ClosureData c2 = compute_closure(phi.target);
  if (!is_translation_like(phi.target, c2).value)
    fail(ErrorKind::Input, "target action is not translation-like");
  if (!phi.target.properly_discontinuous())
    fail(ErrorKind::Scope, "target action must be asserted properly discontinuous");

  Pipeline p;
  p.image = image_presentation(phi);
  p.image_closure = compute_closure(p.image);

  std::vector<QVector> coset_subalgebra;
  GroupPoint coset_base = GroupPoint::identity(phi.target.algebra());
  if (restrict_to_levi_orbit) {
    // Theorem-main route: fixed point of a Levi subgroup of the image
    // closure, then the orbit coset U(G2') x0.
    FixedCoset levi_fixed = fixed_points_reductive(
        phi.target.algebra(), p.image_closure.levi.generators(), LeviKind::Finite);
    coset_subalgebra = p.image_closure.translation_subalgebra();
    coset_base = levi_fixed.basepoint;
    p.restriction_coset.subalgebra_basis = coset_subalgebra;
    p.restriction_coset.basepoint = coset_base;
  } else {
    // Classification route: K = elements of the Levi centralizing U(G2'),
    // restricted to its fixed coset V(K) = M n0.
    std::vector<AffTrans> k_elements;
    for (const auto& l : p.image_closure.levi.section) {
      QMatrix h = p.image.lin()->hom(l);
      QMatrix hi = inverse(h);
      bool trivial = true;
      for (const auto& b : p.image_closure.u_log_basis)
        trivial = trivial && h * b * hi == b;
      if (trivial && !l.is_identity()) k_elements.push_back(l);
    }
    FixedCoset vk =
        fixed_points_reductive(phi.target.algebra(), k_elements, LeviKind::Finite);
    coset_subalgebra = vk.subalgebra_basis;
    coset_base = vk.basepoint;
    p.restriction_coset = vk;
  }

  p.restriction = restrict_action(p.image, coset_subalgebra, coset_base);

  // phi'': Gamma_1 -> restricted image, generator by generator; surjective
  // with the tautological certificate.
  GroupMorphism phi2;
  phi2.source = phi.source;
  phi2.target = p.restriction.restricted;
  for (size_t i = 0; i < phi.source.generators().size(); ++i) {
    phi2.images.push_back(Word::gen(static_cast<int>(i)));
    phi2.certificate.push_back(Word::gen(static_cast<int>(i)));
  }
  p.hull = extend_to_hulls(phi2);

  // unipotent part as a morphism N1 -> M
  const Linearization& lin1 = *phi.source.lin();
  const Linearization& linM = *p.restriction.restricted.lin();
  QMatrix s = radical_to_translations(lin1, p.hull.source_u);
  QMatrix s_inv = inverse(s);  // crystallographic: square and invertible
  QMatrix e = radical_to_translations(linM, p.hull.target_u);
  QMatrix d_m = e * p.hull.unipotent_part.matrix() * s_inv;
  LieMorphism delta_m(phi.source.algebra(), p.restriction.m_model.algebra, d_m);

  p.embed_m = p.restriction.m_model.basis.empty()
                  ? QMatrix(phi.target.algebra()->dim(), 0)
                  : QMatrix::from_columns(p.restriction.m_model.basis);
  p.delta = LieMorphism(phi.source.algebra(), phi.target.algebra(), p.embed_m * d_m);

  // L1^stab = conjugate of the averaged Levi fixing e, and its image.
  FixedCoset src_fixed = fixed_points_reductive(phi.source.algebra(),
                                                c1.levi.generators(), LeviKind::Finite);
  AffTrans lm1 = AffTrans::left_translation(src_fixed.basepoint);
  AffTrans lm1_inv = aff_inverse(lm1);
  GroupPoint m1_img = delta_m.apply(src_fixed.basepoint);
  AffTrans lm1_img = AffTrans::left_translation(m1_img);
  AffTrans lm1_img_inv = aff_inverse(lm1_img);
  for (size_t i = 0; i < p.hull.levi_elements.size(); ++i) {
    AffTrans stab = aff_compose(aff_compose(lm1_inv, c1.levi.section[i]), lm1);
    if (!stab.translation().is_identity())
      fail(ErrorKind::Internal, "conjugated Levi does not stabilize the identity");
    // hull images already live in Aff(M) since phi'' targets the restriction
    AffTrans img = aff_compose(aff_compose(lm1_img_inv, p.hull.levi_images[i]), lm1_img);
    p.levi2.push_back(img);
  }
  return p;
}

}  // namespace

InduceResult induce_affine_map(const GroupMorphism& phi) {
  Pipeline p = run_pipeline(phi, true);

  std::vector<AffTrans> levi2_gens;
  for (const auto& l : p.levi2)
    if (!l.is_identity()) levi2_gens.push_back(l);
  FixedCoset xm = fixed_points_reductive(p.restriction.m_model.algebra, levi2_gens,
                                         LeviKind::Finite);
  GroupPoint x_in_n2(phi.target.algebra(), p.embed_m * xm.basepoint.coords);
  GroupPoint x_total = bch_multiply(x_in_n2, p.restriction.basepoint);

  InduceResult out{AffMap(x_total, p.delta), p.image, p.image_closure};

  for (size_t i = 0; i < phi.source.generators().size(); ++i) {
    if (!intertwines_on_word(phi, out.alpha, Word::gen(static_cast<int>(i))))
      fail(ErrorKind::Internal, "constructed affine map fails the intertwining identity");
  }
  return out;
}

ClassifyResult classify_affine_maps(const GroupMorphism& phi) {
  Pipeline p = run_pipeline(phi, false);

  std::vector<AffTrans> levi2_gens;
  for (const auto& l : p.levi2)
    if (!l.is_identity()) levi2_gens.push_back(l);
  FixedCoset inner = fixed_points_reductive(p.restriction.m_model.algebra, levi2_gens,
                                            LeviKind::Finite);

  ClassifyResult out;
  out.delta = p.delta;
  out.translations.basepoint = bch_multiply(
      GroupPoint(phi.target.algebra(), p.embed_m * inner.basepoint.coords),
      p.restriction.basepoint);
  for (const auto& v : inner.subalgebra_basis)
    out.translations.subalgebra_basis.push_back(p.embed_m * v);
  return out;
}

bool image_coset_cocompact(const GroupMorphism& phi, const AffMap& alpha) {
  GroupPresentation image = image_presentation(phi);
  ClosureData c = compute_closure(image);
  return c.u_dim == alpha.morphism.rank();
}

bool intertwines_on_word(const GroupMorphism& phi, const AffMap& alpha, const Word& w) {
  AffTrans lhs_g = phi.image_of(w);
  AffTrans rhs_g = phi.source.evaluate(w);
  return affmap_compose_left(lhs_g, alpha) == affmap_compose_right(alpha, rhs_g);
}

}  // namespace nilaff
