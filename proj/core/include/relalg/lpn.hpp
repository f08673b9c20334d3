#pragma once

// The L(p, n) family: symmetric integral relation algebras with atoms
//   1', a0, ..., ap, t1, ..., tn
// (atom order identity first, then a-atoms, then t-atoms) and composition
//
//   a_i ; a_i = 1' + a_i
//   a_i ; a_j = A . -(a_i + a_j)        (i != j)
//   a_i ; t_k = T
//   t_k ; t_k = 1' + A
//   t_k ; t_l = A                        (k != l)
//
// where A = a0 + ... + ap and T = t1 + ... + tn. For n = 0 only the a-rules
// apply, T = 0 and A = 0'.
//
// The fused algebra L^{ij}(p, n) merges a_i and a_j into one atom "aiaj";
// it embeds into every L(q, n) with q >= p by sending the merged atom to
// a_i + a_j + a_{p+1} + ... + a_q and fixing the rest.

#include <optional>

#include "relalg/algebra.hpp"
#include "relalg/subalgebra.hpp"

namespace relalg {

struct LpnParams {
  unsigned p = 3;
  unsigned n = 0;

  std::size_t atom_count() const { return 2 + p + n; }
  friend bool operator==(const LpnParams&, const LpnParams&) = default;
};

struct FusionSpec {
  unsigned i = 0;
  unsigned j = 1;
};

namespace lpn {

constexpr AtomId identity_atom() { return 0; }
constexpr AtomId a_atom(unsigned i) { return 1 + i; }
constexpr AtomId t_atom(const LpnParams& params, unsigned k) {
  return 1 + (params.p + 1) + (k - 1);
}

/// Throws ParameterError unless p >= 3 and the algebra fits in 64 atoms.
void validate(const LpnParams& params);

/// A = a0 + ... + ap as an atom set of L(p, n).
AtomSet a_part(const LpnParams& params);
/// T = t1 + ... + tn as an atom set of L(p, n).
AtomSet t_part(const LpnParams& params);

}  // namespace lpn

FiniteRelationAlgebra build_lpn(const LpnParams& params);

/// Recovers (p, n) from an algebra whose atom names and table are exactly
/// those of build_lpn(p, n).
std::optional<LpnParams> recognize_lpn(const FiniteRelationAlgebra& algebra);

/// Certified non-representable by the degree counting argument iff 2n > p.
/// Metadata only; verifiers never consult it.
bool notrap_flag(const LpnParams& params);

struct FusedAlgebra {
  LpnParams params;
  FusionSpec spec;
  FiniteRelationAlgebra algebra;
  FiniteRelationAlgebra parent;
  /// Atom map from `algebra` into `parent`.
  AtomMap inclusion;
  EmbeddingCheck inclusion_check;
};

/// Builds L^{ij}(p, n) from the fused product rules and verifies the
/// inclusion into a freshly built L(p, n). Throws ParameterError for i == j
/// or indices above p.
FusedAlgebra build_fused(const LpnParams& params, const FusionSpec& spec);

struct FusionEmbedding {
  FusedAlgebra fused;
  FiniteRelationAlgebra target;
  unsigned q = 0;
  AtomMap map;
  EmbeddingCheck check;
};

/// The embedding L^{ij}(p, n) -> L(q, n). Throws ParameterError for q < p.
FusionEmbedding fusion_embedding(const LpnParams& params, const FusionSpec& spec,
                                 unsigned q);

/// Same, into an existing L(q, n) instance.
FusionEmbedding fusion_embedding(const LpnParams& params, const FusionSpec& spec,
                                 const FiniteRelationAlgebra& target, unsigned q);

}  // namespace relalg
