#include "nilaff/closure.hpp"

#include <algorithm>
#include <sstream>

namespace nilaff {

namespace {

QMatrix unflatten(const QVector& v, int n) { return QMatrix(n, n, v); }

// Lie algebra generated by the given matrices: closure of the span under
// commutators, optionally also under conjugation by the given group elements.
SpanBuilder lie_closure(int n, const std::vector<QMatrix>& seeds,
                        const std::vector<QMatrix>& conjugators) {
  SpanBuilder span(n * n);
  for (const auto& s : seeds) span.add(s.entries());
  std::vector<QMatrix> conj_inv;
  for (const auto& c : conjugators) conj_inv.push_back(inverse(c));
  bool grew = true;
  int guard = 0;
  while (grew) {
    if (++guard > n * n + 2) fail(ErrorKind::Internal, "Lie closure did not stabilize");
    grew = false;
    std::vector<QVector> basis = span.basis();
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = i + 1; j < basis.size(); ++j) {
        QMatrix c = commutator(unflatten(basis[i], n), unflatten(basis[j], n));
        grew = span.add(c.entries()) || grew;
      }
    for (size_t k = 0; k < conjugators.size(); ++k)
      for (const auto& b : basis) {
        QMatrix c = conjugators[k] * unflatten(b, n) * conj_inv[k];
        grew = span.add(c.entries()) || grew;
      }
  }
  return span;
}

// Engel-style descent: the span acts nilpotently on Q^n iff the flag
// W, u W, u (u W), ... reaches zero. Guarantees every element of the span is
// a nilpotent matrix.
bool acts_nilpotently(int n, const std::vector<QVector>& u_basis) {
  std::vector<QVector> current;
  for (int i = 0; i < n; ++i) {
    QVector e(n);
    e[i] = Rat(1);
    current.push_back(e);
  }
  for (int step = 0; step <= n; ++step) {
    if (current.empty()) return true;
    SpanBuilder next(n);
    for (const auto& x : u_basis) {
      QMatrix m = unflatten(x, n);
      for (const auto& w : current) next.add(m * w);
    }
    if (next.dim() >= static_cast<int>(current.size())) return false;
    current = next.basis();
  }
  return current.empty();
}

// Lower central series of the matrix Lie algebra spanned by `u`.
std::vector<std::vector<QVector>> matrix_lcs(int n, const std::vector<QVector>& u) {
  std::vector<std::vector<QVector>> gammas;
  gammas.push_back(u);
  while (!gammas.back().empty()) {
    SpanBuilder next(n * n);
    for (const auto& a : u)
      for (const auto& b : gammas.back())
        next.add(commutator(unflatten(a, n), unflatten(b, n)).entries());
    if (next.dim() == static_cast<int>(gammas.back().size())) {
      if (next.dim() != 0) fail(ErrorKind::Internal, "unipotent radical is not nilpotent");
      break;
    }
    gammas.push_back(next.basis());
  }
  if (!gammas.back().empty()) gammas.push_back({});
  return gammas;
}

LeviPart levi_complement_finite(const GroupPresentation& pres, const KernelData& kernel,
                                const std::vector<QMatrix>& u_basis);

}  // namespace

KernelData holonomy_kernel(const GroupPresentation& pres) {
  const FiniteGroup& f = pres.holonomy();
  KernelData out;
  out.transversal.assign(f.order(), Word{});
  std::vector<bool> seen(f.order(), false);
  seen[f.identity()] = true;
  out.reachable.push_back(f.identity());
  // breadth-first transversal over the tag image
  for (size_t i = 0; i < out.reachable.size(); ++i) {
    int cur = out.reachable[i];
    for (size_t g = 0; g < pres.generators().size(); ++g) {
      int nxt = f.mul(cur, pres.tags()[g]);
      if (!seen[nxt]) {
        seen[nxt] = true;
        out.transversal[nxt] = out.transversal[cur].concat(Word::gen(static_cast<int>(g)));
        out.reachable.push_back(nxt);
      }
    }
  }
  for (int cur : out.reachable) {
    for (size_t g = 0; g < pres.generators().size(); ++g) {
      int nxt = f.mul(cur, pres.tags()[g]);
      Word w = out.transversal[cur].concat(Word::gen(static_cast<int>(g)))
                   .concat(out.transversal[nxt].inverse());
      // discovery edges give freely trivial generators
      if (out.transversal[nxt].letters ==
          out.transversal[cur].concat(Word::gen(static_cast<int>(g))).letters)
        continue;
      out.gens.push_back({w, pres.evaluate(w)});
    }
  }
  return out;
}

std::vector<AffTrans> LeviPart::generators() const {
  std::vector<AffTrans> out;
  for (size_t i = 0; i < section.size(); ++i) {
    if (kind == LeviKind::Finite && !section[i].is_identity()) out.push_back(section[i]);
    if (kind == LeviKind::DeclaredTorus) out.push_back(section[i]);
  }
  return out;
}

bool ClosureData::u_contains(const QMatrix& x) const {
  SpanBuilder span(lin->dim() * lin->dim());
  for (const auto& b : u_log_basis) span.add(b.entries());
  return span.contains(x.entries());
}

SpanModel ClosureData::u_model() const {
  int n = lin->dim();
  auto bracket = [n](const QVector& a, const QVector& b) {
    return commutator(unflatten(a, n), unflatten(b, n)).entries();
  };
  std::vector<QVector> span;
  for (const auto& b : u_log_basis) span.push_back(b.entries());
  return build_span_model(n * n, bracket, span);
}

std::vector<QVector> ClosureData::translation_subalgebra() const {
  const AlgebraRef& alg = lin->algebra();
  std::vector<QVector> cols;
  for (const auto& l : lin->translation_log_basis()) cols.push_back(l.entries());
  std::vector<QVector> out;
  for (const auto& x : u_log_basis) {
    if (alg->dim() == 0) {
      if (!is_zero(x.entries()))
        fail(ErrorKind::Input, "unipotent radical does not act by left translations");
      continue;
    }
    auto sol = solve_linear(QMatrix::from_columns(cols), x.entries());
    if (sol.empty())
      fail(ErrorKind::Input, "unipotent radical does not act by left translations");
    out.push_back(*sol.particular);
  }
  return out;
}

ClosureData compute_closure(const GroupPresentation& pres) {
  ClosureData cd;
  cd.lin = pres.lin();
  int n = cd.lin->dim();

  std::vector<QMatrix> kernel_logs;
  std::optional<KernelData> kernel;

  if (pres.declared_hull()) {
    const DeclaredHull& hull = *pres.declared_hull();
    std::vector<QMatrix> seeds;
    for (const Word& w : hull.unipotent_words) {
      AffTrans g = pres.evaluate(w);
      if (!cd.lin->is_unipotent(g))
        fail(ErrorKind::Input,
             "declared unipotent word " + w.str(pres.gen_names()) + " is not unipotent");
      seeds.push_back(nilpotent_log(cd.lin->hom(g)));
    }
    SpanBuilder span = lie_closure(n, seeds, {});
    // the declared radical must be normalized by every generator and by the
    // declared torus
    std::vector<AffTrans> torus;
    for (const Word& w : hull.torus_words) torus.push_back(pres.evaluate(w));
    std::vector<AffTrans> normalizers = pres.generators();
    normalizers.insert(normalizers.end(), torus.begin(), torus.end());
    for (const auto& g : normalizers) {
      QMatrix h = cd.lin->hom(g);
      QMatrix hi = inverse(h);
      for (const auto& b : span.basis())
        if (!span.contains((h * unflatten(b, n) * hi).entries()))
          fail(ErrorKind::Input, "declared unipotent part is not normalized by the group");
    }
    if (!acts_nilpotently(n, span.basis()))
      fail(ErrorKind::Input, "declared unipotent part is not a nilpotent matrix algebra");
    for (const auto& b : span.basis()) cd.u_log_basis.push_back(unflatten(b, n));
    cd.u_dim = span.dim();

    cd.levi.kind = LeviKind::DeclaredTorus;
    cd.levi.density_asserted = hull.density_asserted;
    for (size_t i = 0; i < torus.size(); ++i) {
      auto [s, u] = jordan_chevalley(cd.lin->hom(torus[i]));
      if (!u.is_identity())
        fail(ErrorKind::Input, "declared torus word " + hull.torus_words[i].str(pres.gen_names()) +
                                   " is not semisimple");
      cd.levi.section.push_back(torus[i]);
      cd.levi.words.push_back(hull.torus_words[i]);
    }
  } else {
    kernel = holonomy_kernel(pres);
    for (const auto& sg : kernel->gens) {
      if (!cd.lin->is_unipotent(sg.value))
        fail(ErrorKind::Scope, "kernel generator " + sg.word.str(pres.gen_names()) +
                                   " is not unipotent; outside the quasi-unipotent scope");
      kernel_logs.push_back(nilpotent_log(cd.lin->hom(sg.value)));
    }
    std::vector<QMatrix> conjugators;
    for (const auto& g : pres.generators()) conjugators.push_back(cd.lin->hom(g));
    SpanBuilder span = lie_closure(n, kernel_logs, conjugators);
    if (!acts_nilpotently(n, span.basis()))
      fail(ErrorKind::Scope,
           "closure of the kernel is not unipotent; input is outside the supported class");
    for (const auto& b : span.basis()) cd.u_log_basis.push_back(unflatten(b, n));
    cd.u_dim = span.dim();
    cd.levi = levi_complement_finite(pres, *kernel, cd.u_log_basis);
  }

  if (auto h = pres.declared_hirsch(); h && cd.u_dim > *h)
    fail(ErrorKind::Input,
         "dim U(closure) exceeds the declared Hirsch length; the input data is inconsistent");
  return cd;
}

namespace {

LeviPart levi_complement_finite(const GroupPresentation& pres, const KernelData& kernel,
                                const std::vector<QMatrix>& u_basis) {
  const auto& lin = pres.lin();
  int n = lin->dim();
  const FiniteGroup& f = pres.holonomy();

  LeviPart levi;
  levi.kind = LeviKind::Finite;
  levi.elements = kernel.reachable;
  for (int e : kernel.reachable) {
    levi.words.push_back(kernel.transversal[e]);
    levi.section.push_back(pres.evaluate(kernel.transversal[e]));
    levi.corrections.push_back(AffTrans::identity(pres.algebra()));
  }
  auto pos_of = [&](int elem) {
    for (size_t i = 0; i < levi.elements.size(); ++i)
      if (levi.elements[i] == elem) return i;
    fail(ErrorKind::Internal, "holonomy element left the reachable set");
  };

  std::vector<QVector> u_flat;
  for (const auto& b : u_basis) u_flat.push_back(b.entries());
  std::vector<std::vector<QVector>> gammas = matrix_lcs(n, u_flat);
  size_t m = levi.elements.size();
  Rat inv_order(1, static_cast<long>(m));

  for (size_t depth = 0; depth + 1 < gammas.size(); ++depth) {
    const auto& layer = gammas[depth];
    const auto& next = gammas[depth + 1];
    // lift basis of gamma_depth / gamma_{depth+1}
    SpanBuilder proj(n * n);
    for (const auto& v : next) proj.add(v);
    int next_dim = proj.dim();
    std::vector<QVector> lifts;
    for (const auto& v : layer)
      if (proj.add(v)) lifts.push_back(v);
    if (lifts.empty()) continue;
    std::vector<QVector> cols;
    for (const auto& v : next) cols.push_back(v);
    for (const auto& v : lifts) cols.push_back(v);
    QMatrix coord_matrix = QMatrix::from_columns(cols);
    auto layer_coords = [&](const QMatrix& x) {
      auto sol = solve_linear(coord_matrix, x.entries());
      if (sol.empty()) fail(ErrorKind::Internal, "section defect left its central-series layer");
      QVector out(lifts.size());
      for (size_t i = 0; i < lifts.size(); ++i) out[i] = (*sol.particular)[next_dim + i];
      return out;
    };

    // 2-cocycle of the section on this layer
    std::vector<std::vector<QVector>> defect(m, std::vector<QVector>(m));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        int fg = f.mul(levi.elements[i], levi.elements[j]);
        AffTrans d = aff_compose(aff_compose(levi.section[i], levi.section[j]),
                                 aff_inverse(levi.section[pos_of(fg)]));
        QMatrix h = lin->hom(d);
        if (!is_unipotent_matrix(h))
          fail(ErrorKind::Internal, "section defect is not unipotent");
        defect[i][j] = layer_coords(nilpotent_log(h));
      }
    for (size_t i = 0; i < m; ++i) {
      if (levi.elements[i] == f.identity()) continue;
      QVector b(lifts.size());
      for (size_t j = 0; j < m; ++j) b = b + defect[i][j];
      b = inv_order * b;
      QMatrix beta = QMatrix::zero(n, n);
      for (size_t k = 0; k < lifts.size(); ++k) beta += (-b[k]) * unflatten(lifts[k], n);
      AffTrans corr = lin->delinearize_hom(nilpotent_exp(beta));
      levi.section[i] = aff_compose(corr, levi.section[i]);
      levi.corrections[i] = aff_compose(corr, levi.corrections[i]);
    }
  }

  // exact checks: homomorphism, semisimplicity, normalization of u
  SpanBuilder uspan(n * n);
  for (const auto& v : u_flat) uspan.add(v);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      int fg = f.mul(levi.elements[i], levi.elements[j]);
      if (aff_compose(levi.section[i], levi.section[j]) != levi.section[pos_of(fg)])
        fail(ErrorKind::Internal, "Levi averaging did not produce a homomorphic section");
    }
    QMatrix h = lin->hom(levi.section[i]);
    auto [s, u] = jordan_chevalley(h);
    if (!u.is_identity())
      fail(ErrorKind::Internal, "Levi section element is not semisimple");
    QMatrix hi = inverse(h);
    for (const auto& b : u_flat)
      if (!uspan.contains((h * unflatten(b, n) * hi).entries()))
        fail(ErrorKind::Internal, "Levi section does not normalize the unipotent radical");
  }
  return levi;
}

}  // namespace

TranslationLikeResult is_translation_like(const GroupPresentation&,
                                          const ClosureData& closure) {
  TranslationLikeResult r;
  r.value = true;
  for (const auto& x : closure.u_log_basis) {
    if (!closure.lin->in_translation_logs(x)) {
      r.value = false;
      r.witness = x;
      break;
    }
  }
  return r;
}

TranslationLikeResult is_translation_like(const GroupPresentation& pres) {
  return is_translation_like(pres, compute_closure(pres));
}

std::optional<int> hirsch_length(const GroupPresentation& pres, const ClosureData& closure) {
  std::optional<int> from_series = pres.declared_hirsch();
  std::optional<int> from_closure;
  if (pres.properly_discontinuous()) from_closure = closure.u_dim;
  if (from_series && from_closure && *from_series != *from_closure)
    fail(ErrorKind::Input,
         "declared series length " + std::to_string(*from_series) +
             " contradicts dim U(closure) = " + std::to_string(*from_closure) +
             " for a properly discontinuous action");
  if (from_series) return from_series;
  return from_closure;
}

std::optional<int> hirsch_length(const GroupPresentation& pres) {
  return hirsch_length(pres, compute_closure(pres));
}

HullReport check_hull_axioms(const GroupPresentation& pres, const ClosureData& closure) {
  HullReport report;
  int n = closure.lin->dim();

  if (closure.levi.kind == LeviKind::DeclaredTorus) {
    report.density.asserted_only = true;
    report.density.pass = closure.levi.density_asserted;
    report.density.detail = closure.levi.density_asserted
                                ? "asserted, not verified"
                                : "declared hull without a density assertion";
  } else {
    KernelData kernel = holonomy_kernel(pres);
    bool tag_surjective =
        static_cast<int>(kernel.reachable.size()) == pres.holonomy().order();
    std::vector<QMatrix> logs;
    for (const auto& sg : kernel.gens)
      if (closure.lin->is_unipotent(sg.value))
        logs.push_back(nilpotent_log(closure.lin->hom(sg.value)));
    SpanBuilder lie = lie_closure(n, logs, {});
    bool generates = lie.dim() == closure.u_dim;
    for (const auto& b : closure.u_log_basis)
      generates = generates && lie.contains(b.entries());
    report.density.pass = tag_surjective && generates;
    std::ostringstream os;
    os << (tag_surjective ? "tag map surjective" : "tag map is not surjective") << "; "
       << (generates ? "kernel logs generate u" : "kernel logs do not generate u");
    report.density.detail = os.str();
  }

  std::optional<int> h = hirsch_length(pres, closure);
  if (!h) {
    report.dimension.pass = false;
    report.dimension.detail = "Hirsch length undetermined";
  } else {
    report.dimension.pass = closure.u_dim == *h;
    std::ostringstream os;
    os << "dim U = " << closure.u_dim << ", h = " << *h;
    report.dimension.detail = os.str();
  }

  report.centralizer.pass = true;
  auto acts_trivially = [&](const AffTrans& l) {
    QMatrix hm = closure.lin->hom(l);
    QMatrix hi = inverse(hm);
    for (const auto& b : closure.u_log_basis)
      if (hm * b * hi != b) return false;
    return true;
  };
  if (closure.levi.kind == LeviKind::Finite) {
    for (size_t i = 0; i < closure.levi.section.size(); ++i) {
      const AffTrans& l = closure.levi.section[i];
      if (l.is_identity()) continue;
      if (acts_trivially(l)) {
        report.centralizer.pass = false;
        report.centralizer.detail =
            "Levi element over holonomy '" +
            pres.holonomy().name(closure.levi.elements[i]) +
            "' centralizes U(G) but is not in Z(U)";
        break;
      }
    }
    if (report.centralizer.pass) report.centralizer.detail = "no Levi element centralizes U(G)";
  } else {
    for (size_t i = 0; i < closure.levi.section.size(); ++i) {
      const AffTrans& l = closure.levi.section[i];
      if (l.is_identity()) continue;
      if (acts_trivially(l)) {
        report.centralizer.pass = false;
        report.centralizer.detail = "torus generator " +
                                    closure.levi.words[i].str(pres.gen_names()) +
                                    " centralizes U(G) but is not in Z(U)";
        break;
      }
    }
    if (report.centralizer.pass)
      report.centralizer.detail = "checked on torus generators (density asserted)";
  }
  return report;
}

bool is_crystallographic(const GroupPresentation& pres, const ClosureData& closure) {
  if (!pres.properly_discontinuous())
    fail(ErrorKind::Scope,
         "crystallographic test requires the properly-discontinuous input assertion");
  std::optional<int> h = hirsch_length(pres, closure);
  if (!h) fail(ErrorKind::Input, "Hirsch length undetermined");
  int dim_n = pres.algebra()->dim();
  return closure.u_dim == dim_n && *h == dim_n;
}

bool is_crystallographic(const GroupPresentation& pres) {
  return is_crystallographic(pres, compute_closure(pres));
}

}  // namespace nilaff
