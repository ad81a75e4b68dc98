#ifndef NILAFF_LIE_HPP
#define NILAFF_LIE_HPP

#include <functional>
#include <memory>
#include <vector>

#include "nilaff/matrix.hpp"
#include "nilaff/multipoly.hpp"

namespace nilaff {

class NilLieAlgebra;
using AlgebraRef = std::shared_ptr<const NilLieAlgebra>;

/// One aggregated term of the truncated BCH series: a word over the two
/// arguments (0 = first, 1 = second) evaluated as a right-nested bracket,
/// times a rational coefficient.
struct BchTerm {
  std::vector<unsigned char> word;
  Rat coeff;
};

/// The BCH series truncated at a given degree, as word/coefficient pairs
/// aggregated over the Dynkin expansion. Exact for any nilpotent Lie algebra
/// whose class does not exceed the truncation degree.
std::vector<BchTerm> bch_word_table(int max_degree);

/// Rational nilpotent Lie algebra on a Mal'cev-adapted graded basis.
///
/// The constructor validates antisymmetry, the Jacobi identity, grading
/// compatibility (c_ijk = 0 unless weight(k) >= weight(i) + weight(j)) and
/// that the declared weights match the lower central series: the span of the
/// basis vectors of weight >= j must equal gamma_j for every j >= 2. The last
/// condition makes the weight filtration invariant under every automorphism,
/// which the polynomial linearization of the affine group relies on.
class NilLieAlgebra {
public:
  /// brackets: for pairs (i, j) with i < j, the coordinates of [e_i, e_j].
  /// Missing pairs default to zero. Throws Error(Input) on any failed
  /// invariant. Classes above 6 are rejected.
  static AlgebraRef create(std::vector<int> weights,
                           const std::vector<std::tuple<int, int, QVector>>& brackets);
  static AlgebraRef abelian(int dim);

  int dim() const { return dim_; }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int i) const { return weights_[i]; }
  int nilpotency_class() const { return class_; }

  /// Coordinates of [e_i, e_j].
  const QVector& basis_bracket(int i, int j) const { return c_[static_cast<size_t>(i) * dim_ + j]; }

  /// Matrix of ad(xi) acting on coordinates: column j is [xi, e_j].
  QMatrix ad(const QVector& xi) const;

  template <class Ring>
  std::vector<typename Ring::Elem> bracket(const Ring& ring,
                                           const std::vector<typename Ring::Elem>& u,
                                           const std::vector<typename Ring::Elem>& v) const {
    std::vector<typename Ring::Elem> out(dim_, ring.zero());
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        const QVector& cij = basis_bracket(i, j);
        typename Ring::Elem uv =
            ring.sub(ring.mul(u[i], v[j]), ring.mul(u[j], v[i]));
        for (int k = 0; k < dim_; ++k)
          if (!cij[k].is_zero()) out[k] = ring.add(out[k], ring.scale(cij[k], uv));
      }
    return out;
  }

  /// Truncated BCH product of coordinate vectors; exact at degree >= class.
  template <class Ring>
  std::vector<typename Ring::Elem> bch(const Ring& ring,
                                       const std::vector<typename Ring::Elem>& x,
                                       const std::vector<typename Ring::Elem>& y,
                                       int max_degree = -1) const {
    using Elem = typename Ring::Elem;
    const std::vector<BchTerm>* table = &bch_table_;
    std::vector<BchTerm> fresh;
    if (max_degree >= 0 && max_degree != std::max(class_, 1)) {
      fresh = bch_word_table(max_degree);
      table = &fresh;
    }
    std::vector<Elem> out(dim_, ring.zero());
    for (const BchTerm& term : *table) {
      const std::vector<unsigned char>& w = term.word;
      std::vector<Elem> value = w.back() == 0 ? x : y;
      for (size_t i = w.size() - 1; i-- > 0;)
        value = bracket(ring, w[i] == 0 ? x : y, value);
      for (int k = 0; k < dim_; ++k)
        out[k] = ring.add(out[k], ring.scale(term.coeff, value[k]));
    }
    return out;
  }

  friend bool operator==(const NilLieAlgebra& a, const NilLieAlgebra& b) {
    return a.dim_ == b.dim_ && a.weights_ == b.weights_ && a.c_ == b.c_;
  }

private:
  NilLieAlgebra() = default;
  void validate() const;
  int dim_ = 0;
  int class_ = 0;
  std::vector<int> weights_;
  std::vector<QVector> c_;  // dim x dim table of bracket coordinates
  std::vector<BchTerm> bch_table_;
};

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b);
void require_same_algebra(const AlgebraRef& a, const AlgebraRef& b, const char* where);

/// Element of the group N in exponential coordinates of the first kind.
struct GroupPoint {
  AlgebraRef algebra;
  QVector coords;

  GroupPoint() = default;
  GroupPoint(AlgebraRef alg, QVector c);
  static GroupPoint identity(AlgebraRef alg);

  bool is_identity() const { return nilaff::is_zero(coords); }
  GroupPoint inverse() const { return GroupPoint(algebra, negate(coords)); }

  friend bool operator==(const GroupPoint& a, const GroupPoint& b) {
    return same_algebra(a.algebra, b.algebra) && a.coords == b.coords;
  }
  friend bool operator!=(const GroupPoint& a, const GroupPoint& b) { return !(a == b); }

  std::string str() const;
};

GroupPoint bch_multiply(const GroupPoint& x, const GroupPoint& y);
GroupPoint group_conjugate(const GroupPoint& x, const GroupPoint& y);  // x y x^-1
GroupPoint group_commutator(const GroupPoint& x, const GroupPoint& y);  // x y x^-1 y^-1
/// Matrix of Ad(x) = exp(ad(log x)) on coordinates.
QMatrix ad_action(const GroupPoint& x);

/// Lie algebra morphism given by its matrix on the chosen bases; the induced
/// group morphism is exp . D . log, which in coordinates of the first kind is
/// plain matrix application.
class LieMorphism {
public:
  LieMorphism() = default;
  /// Validates bracket preservation exactly; throws Error(Input) otherwise.
  LieMorphism(AlgebraRef source, AlgebraRef target, QMatrix m);
  static LieMorphism identity(AlgebraRef alg);
  static LieMorphism zero(AlgebraRef source, AlgebraRef target);

  const AlgebraRef& source() const { return source_; }
  const AlgebraRef& target() const { return target_; }
  const QMatrix& matrix() const { return m_; }

  bool is_invertible() const;
  LieMorphism inverse() const;
  LieMorphism compose(const LieMorphism& inner) const;  // this . inner
  int rank() const { return nilaff::rank(m_); }

  GroupPoint apply(const GroupPoint& x) const;

  friend bool operator==(const LieMorphism& a, const LieMorphism& b) {
    return same_algebra(a.source_, b.source_) && same_algebra(a.target_, b.target_) &&
           a.m_ == b.m_;
  }

private:
  AlgebraRef source_, target_;
  QMatrix m_;
};

GroupPoint lie_morphism_apply(const LieMorphism& d, const GroupPoint& x);

/// The unique Lie/group morphism sending each generator point to its image,
/// provided the generator logs span the source algebra over Q and a
/// bracket-preserving solution exists.
LieMorphism extend_from_lattice(const std::vector<GroupPoint>& gens,
                                const std::vector<GroupPoint>& images);

/// A Lie subalgebra of an ambient rational vector space rebuilt as an
/// abstract NilLieAlgebra with a canonically weighted adapted basis.
struct SpanModel {
  AlgebraRef algebra;
  std::vector<QVector> basis;  // ambient coordinates per abstract basis vector
  int ambient_dim = 0;

  QVector to_coords(const QVector& ambient) const;   // throws if outside span
  QVector from_coords(const QVector& coords) const;
  bool contains(const QVector& ambient) const;
};

/// Builds the adapted model of the Lie subalgebra spanned by `span` inside an
/// ambient space with the given bracket. The span must be bracket-closed.
SpanModel build_span_model(int ambient_dim,
                           const std::function<QVector(const QVector&, const QVector&)>& bracket,
                           const std::vector<QVector>& span);

}  // namespace nilaff

#endif
