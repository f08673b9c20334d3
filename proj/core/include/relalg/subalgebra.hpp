#pragma once

#include <map>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"

namespace relalg {

/// A subalgebra described by its atoms, which partition the parent's atom set.
/// Atoms are sorted by increasing bitset value.
struct SubalgebraDescription {
  std::uint64_t algebra_id = 0;
  std::vector<Element> atoms;

  bool contains(const Element& x) const;
  /// log2 of the number of elements.
  std::size_t atom_count() const { return atoms.size(); }
  /// All 2^atom_count() members in increasing order of their subset index.
  /// Throws ResourceError above 2^24 members.
  std::vector<Element> elements() const;
  /// Decomposes a member into the indices of the subalgebra atoms below it.
  /// Throws UsageError if x is not a member.
  std::vector<std::size_t> decompose(const Element& x) const;
};

/// Least subalgebra containing `generators` (closed under the boolean
/// operations, 1', converse and composition). Computed by refining the atom
/// partition generated by the current elements until it is stable under
/// converse and pairwise composition of blocks.
SubalgebraDescription generate_subalgebra(const FiniteRelationAlgebra& algebra,
                                          const std::vector<Element>& generators);

/// Additive map given on the atoms of a subalgebra.
using AtomMap = std::map<Element, Element>;

struct EmbeddingCheck {
  bool ok = true;
  /// Law that failed: "defined", "nonzero", "injective", "identity", "top",
  /// "converse", "composition".
  std::string law;
  std::string certificate;
  /// Offending domain atoms (one or two).
  std::vector<Element> witness;
};

/// Extends `map` additively to the members of `domain`.
Element apply_additive(const FiniteRelationAlgebra& target,
                       const SubalgebraDescription& domain, const AtomMap& map,
                       const Element& x);

/// True iff the additive extension of `map` is an injective homomorphism of
/// relation algebras from `domain` into `target`. Checked on domain atoms
/// and atom pairs; joins are preserved by construction and meets follow from
/// disjointness of atom images. Throws UsageError if `map` misses an atom.
EmbeddingCheck check_embedding(const FiniteRelationAlgebra& source,
                               const FiniteRelationAlgebra& target,
                               const SubalgebraDescription& domain,
                               const AtomMap& map);

/// The whole algebra as a subalgebra of itself.
SubalgebraDescription full_subalgebra(const FiniteRelationAlgebra& algebra);

}  // namespace relalg
