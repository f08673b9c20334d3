#pragma once
// Labeled structures: a finite base {0, ..., d-1} together with a rule that
// assigns every algebra element x a binary relation image(x) on the base.
//
//   AtomLabeling  each ordered pair (u, v), u != v, carries at most one atom
//                 (or none); the diagonal carries the identity atom.
//                 image(x) = pairs whose atom lies below x. Additive.
//   Power         base D^m, points u = u_0 + u_1 d + ... + u_{m-1} d^{m-1};
//                 (u, v) in image(x) iff (u_i, v_i) in inner image(x) for all
//                 i. Not additive: a pair whose coordinates carry different
//                 atoms lies in image(a0 + a1) but in neither image(a0) nor
//                 image(a1).
//   Xi            base D + D' (D' = d..2d-1 mirrors D) for L(p, n), built over
//                 a structure for L(p, 0) on D and a partition of D x D' into
//                 classes 1..n. With x0 = x . (A + 1'):
//                   image(x) = inner(x0) on D  +  inner(x0) mirrored on D'
//                            + every cross pair (u, v') or (v', u) whose
//                              class i has t_i <= x.
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/bit_matrix.hpp"
#include "relalg/lpn.hpp"
#include "relalg/splitmix.hpp"

namespace relalg {

enum class StructureKind { AtomLabeling, Power, Xi };

std::string to_string(StructureKind kind);

/// Class assignment for the cross pairs of a Xi structure, either computed
/// on demand from a recipe or given explicitly.
class Partition {
 public:
  static Partition from_recipe(const PartitionRecipe& recipe);
  /// classes[x * d + y] in 1..n for every (x, y'). Throws ParameterError on
  /// size mismatch or an out-of-range class.
  static Partition explicit_classes(std::size_t d, unsigned n,
                                    std::vector<std::uint8_t> classes);

  std::size_t d() const { return d_; }
  unsigned n() const { return n_; }
  const std::optional<PartitionRecipe>& recipe() const { return recipe_; }
  unsigned class_of(std::size_t x, std::size_t y) const {
    return classes_[x * d_ + y];
  }
  /// Row-major d x d table of classes (materialized at construction).
  const std::vector<std::uint8_t>& classes() const { return classes_; }

 private:
  std::size_t d_ = 0;
  unsigned n_ = 1;
  std::optional<PartitionRecipe> recipe_;
  std::vector<std::uint8_t> classes_;
};

class LabeledStructure {
 public:
  static constexpr std::int16_t kUnlabeled = -1;

  /// labels[u * d + v] is an atom index or kUnlabeled. Diagonal entries are
  /// ignored and forced to the identity atom. Throws ParameterError unless
  /// the algebra is integral, no off-diagonal pair carries the identity, and
  /// label(v, u) is the converse of label(u, v).
  static LabeledStructure atom_labeling(FiniteRelationAlgebra algebra,
                                        std::size_t d,
                                        std::vector<std::int16_t> labels);
  /// m >= 1; m == 1 returns *inner.
  static LabeledStructure power(std::shared_ptr<const LabeledStructure> inner,
                                unsigned m);
  /// `algebra` must be L(p, n) with n >= 1 and inner's algebra L(p, 0).
  static LabeledStructure xi(FiniteRelationAlgebra algebra,
                             std::shared_ptr<const LabeledStructure> inner,
                             Partition partition);

  StructureKind kind() const { return kind_; }
  const FiniteRelationAlgebra& algebra() const { return algebra_; }
  /// Number of base points. Saturates at SIZE_MAX for huge powers.
  std::size_t base_size() const { return d_; }

  // AtomLabeling
  std::optional<AtomId> label(std::size_t u, std::size_t v) const;
  const std::vector<std::int16_t>& labels() const { return labels_; }

  // Power and Xi
  const LabeledStructure& inner() const { return *inner_; }
  const std::shared_ptr<const LabeledStructure>& inner_ptr() const {
    return inner_;
  }
  unsigned exponent() const { return m_; }
  const Partition& partition() const { return *partition_; }
  /// (p, n) of the Xi algebra.
  const LpnParams& xi_params() const { return xi_params_; }

 private:
  LabeledStructure(StructureKind kind, FiniteRelationAlgebra algebra)
      : kind_(kind), algebra_(std::move(algebra)) {}

  StructureKind kind_;
  FiniteRelationAlgebra algebra_;
  std::size_t d_ = 0;
  std::vector<std::int16_t> labels_;
  std::shared_ptr<const LabeledStructure> inner_;
  unsigned m_ = 1;
  std::shared_ptr<const Partition> partition_;
  LpnParams xi_params_;
};

/// Largest base accepted by image(); override with RELALG_MAX_IMAGE_BASE.
std::size_t max_image_base();

/// The relation assigned to x. Throws ResourceError if the base exceeds
/// max_image_base() and UsageError if x belongs to another algebra.
BitMatrix image(const LabeledStructure& s, const Element& x);

/// Point of a Power base as its coordinates in the innermost base.
std::vector<std::size_t> power_coordinates(const LabeledStructure& s,
                                           std::size_t point);

// ---------------------------------------------------------------------------
// Builders

/// Affine plane over GF(q): points (x, y) with index x * q + y; a pair of
/// distinct points is labeled a_i when its difference is (j, i j) for some
/// j != 0 (slope index i < q) and a_q when the difference is vertical.
LabeledStructure build_affine(unsigned q);
/// Two copies of build_affine(q) (second copy shifted by q^2), every cross
/// pair labeled t1. A structure for L(q, 1).
LabeledStructure build_doubled(unsigned q);
LabeledStructure build_power(const LabeledStructure& s, unsigned m);

// ---------------------------------------------------------------------------
// Verification

enum class VerifyStrategy {
  Auto,
  /// All element pairs, images compared as matrices.
  ElementPairs,
  /// AtomLabeling only: atom images and atom-pair products.
  AtomPairs,
};

struct VerifyOptions {
  VerifyStrategy strategy = VerifyStrategy::Auto;
  /// Largest base for verification; 0 means max_verify_base().
  std::size_t max_base = 0;
  unsigned threads = 1;
};

/// Default 4096; override with RELALG_MAX_BASE.
std::size_t max_verify_base();

struct Verdict {
  bool pass = true;
  /// Failed clause: "zero", "identity", "converse", "injective", "meet",
  /// "composition", "top", "complement", "triangle", "saturation",
  /// "nonempty", or a fast-check condition.
  std::string clause;
  std::string detail;
  std::optional<Element> x;
  std::optional<Element> y;
  std::optional<std::pair<std::size_t, std::size_t>> points;
  /// Number of element pairs (or atom pairs) inspected.
  std::uint64_t checked = 0;
  std::string strategy;
};

Verdict verify_weak(const LabeledStructure& s, const VerifyOptions& options = {});
Verdict verify_full(const LabeledStructure& s, const VerifyOptions& options = {});

/// Atomic network check for AtomLabeling structures: nonempty atom images,
/// triangle consistency (labels a on (u,w), b on (w,v), c on (u,v) force
/// c <= a;b, and (u,v) must be labeled whenever (u,w), (w,v) are) and
/// witness saturation (c <= a;b on (u,v) needs some w with labels a, b).
/// Throws UsageError for other kinds.
Verdict verify_network(const LabeledStructure& s);

// ---------------------------------------------------------------------------
// Degree audit

struct AtomDegree {
  AtomId atom = 0;
  std::size_t min = 0;
  std::size_t max = 0;
};

struct DegreeAudit {
  std::vector<AtomDegree> degrees;
  std::optional<LpnParams> family;
  /// Every a-atom has degree exactly p - 1 at every point.
  bool a_degrees_regular = false;
  /// p - 1 >= 2n - 1.
  bool degree_bound = false;
  /// Both of the above; what any full representation of L(p, n) must show.
  bool verdict = false;
};

DegreeAudit degree_audit(const LabeledStructure& s);

}  // namespace relalg
