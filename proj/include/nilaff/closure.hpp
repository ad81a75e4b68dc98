#ifndef NILAFF_CLOSURE_HPP
#define NILAFF_CLOSURE_HPP

#include "nilaff/presentation.hpp"

namespace nilaff {

/// Schreier generator of the kernel of the tag homomorphism.
struct SchreierGenerator {
  Word word;
  AffTrans value;
};

/// Kernel of the tag map plus the coset structure used to compute it.
struct KernelData {
  std::vector<SchreierGenerator> gens;
  std::vector<int> reachable;            // holonomy elements hit by tags, identity first
  std::vector<Word> transversal;         // per holonomy element index; empty if unreachable
};

KernelData holonomy_kernel(const GroupPresentation& pres);

enum class LeviKind { Finite, DeclaredTorus };

/// Reductive complement data. For the finite kind this is a group section
/// s: F -> Aff(N) over the reachable holonomy elements, each value semisimple,
/// together with its decomposition s(f) = correction(f) * evaluate(word(f))
/// with correction(f) in the unipotent radical; the decomposition is what
/// lets hull extensions be evaluated on Levi elements.
struct LeviPart {
  LeviKind kind = LeviKind::Finite;
  std::vector<int> elements;             // holonomy indices (finite kind), identity included
  std::vector<AffTrans> section;         // per entry of `elements`
  std::vector<Word> words;               // transversal word per entry
  std::vector<AffTrans> corrections;     // unipotent corrections per entry
  bool density_asserted = false;

  std::vector<AffTrans> generators() const;  // non-identity section values / torus gens
};

/// Real Zariski closure data of a presentation: the unipotent radical as a
/// matrix Lie algebra in the linearization (hom convention) plus a Levi part.
struct ClosureData {
  std::shared_ptr<const Linearization> lin;
  std::vector<QMatrix> u_log_basis;  // echelonized basis of Lie(U(closure))
  int u_dim = 0;
  LeviPart levi;

  bool u_contains(const QMatrix& x) const;
  /// Abstract rebuild of the unipotent radical's Lie algebra.
  SpanModel u_model() const;
  /// For translation-like closures: the subalgebra m <= n with lambda(m) = u,
  /// as coordinate vectors in the presentation's algebra.
  std::vector<QVector> translation_subalgebra() const;
};

/// Computes kernel, unipotent radical and Levi part. Uses the declared hull
/// when present, the quasi-unipotent algorithm otherwise.
ClosureData compute_closure(const GroupPresentation& pres);

struct TranslationLikeResult {
  bool value = false;
  std::optional<QMatrix> witness;  // a u-basis element outside the translation logs
};

TranslationLikeResult is_translation_like(const GroupPresentation& pres,
                                          const ClosureData& closure);
TranslationLikeResult is_translation_like(const GroupPresentation& pres);

/// Hirsch length from declared series data and/or the properly-discontinuous
/// route (h = dim U(closure)); std::nullopt when neither source applies.
std::optional<int> hirsch_length(const GroupPresentation& pres, const ClosureData& closure);
std::optional<int> hirsch_length(const GroupPresentation& pres);

struct AxiomReport {
  bool pass = false;
  bool asserted_only = false;
  std::string detail;
};

struct HullReport {
  AxiomReport density;        // (1)
  AxiomReport dimension;      // (2)
  AxiomReport centralizer;    // (3)
  bool all_pass() const { return density.pass && dimension.pass && centralizer.pass; }
};

HullReport check_hull_axioms(const GroupPresentation& pres, const ClosureData& closure);

/// dim u = h = dim N, under the properly-discontinuous input assertion.
bool is_crystallographic(const GroupPresentation& pres, const ClosureData& closure);
bool is_crystallographic(const GroupPresentation& pres);

}  // namespace nilaff

#endif
