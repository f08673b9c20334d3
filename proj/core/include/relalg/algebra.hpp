#pragma once

// Finite atomic relation algebras given by an atom composition table.
//
// Every element is a set of atoms, stored as a 64-bit mask, so algebras are
// limited to 64 atoms. All element-level operations are the additive
// extensions of the atom-level tables:
//
//   x ; y = union over atoms a <= x, b <= y of comp(a, b)
//   x~    = union over atoms a <= x of conv(a)
//
// Because both sides of every relation-algebra axiom are additive in each
// argument, an axiom holds for all elements as soon as it holds for all
// atoms. check_axioms() relies on this and only inspects atom pairs and
// triples. The triangle law x~;-(x;y) <= -y is checked in its equivalent
// atomic (Peircean) form: for atoms a, b, c
//
//   c <= a;b  <=>  b <= a~;c  <=>  a <= c;b~.
//
// Additivity on the left (x+y);z = x;z + y;z and on the right are both true
// by construction of the additive extension, so the report lists additivity
// as holding by construction rather than testing it.

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relalg {

using AtomId = std::uint32_t;
using AtomSet = std::uint64_t;

inline constexpr std::size_t kMaxAtoms = 64;

constexpr AtomSet atom_bit(AtomId a) { return AtomSet{1} << a; }

/// Calls fn(a) for every atom index a set in `set`, in increasing order.
template <typename Fn>
void for_each_atom(AtomSet set, Fn&& fn) {
  while (set != 0) {
    fn(static_cast<AtomId>(std::countr_zero(set)));
    set &= set - 1;
  }
}

/// A set of atoms of one particular algebra.
class Element {
 public:
  Element() = default;
  Element(std::uint64_t algebra_id, AtomSet atoms)
      : algebra_id_(algebra_id), atoms_(atoms) {}

  std::uint64_t algebra_id() const { return algebra_id_; }
  AtomSet atoms() const { return atoms_; }
  bool contains(AtomId a) const { return (atoms_ & atom_bit(a)) != 0; }
  bool is_zero() const { return atoms_ == 0; }
  int atom_count() const { return std::popcount(atoms_); }

  /// Inclusion order of the boolean reduct.
  bool leq(const Element& other) const {
    return (atoms_ & ~other.atoms_) == 0;
  }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

 private:
  std::uint64_t algebra_id_ = 0;
  AtomSet atoms_ = 0;
};

/// Immutable finite relation algebra. Copies share the underlying table and
/// keep the same identity, so elements of a copy belong to the original.
class FiniteRelationAlgebra {
 public:
  /// `comp` is row-major, comp[a * k + b] = a ; b. Throws ParameterError on an
  /// ill-formed description (size mismatch, converse not an involution, ...).
  FiniteRelationAlgebra(std::vector<std::string> atom_names,
                        AtomSet identity_atoms, std::vector<AtomId> converse,
                        std::vector<AtomSet> comp);

  /// Symmetric algebra: converse is the identity permutation.
  static FiniteRelationAlgebra symmetric(std::vector<std::string> atom_names,
                                         AtomSet identity_atoms,
                                         std::vector<AtomSet> comp);

  std::uint64_t id() const { return data_->id; }
  std::size_t atom_count() const { return data_->names.size(); }
  /// 2^atom_count(). Throws ResourceError for 64 atoms.
  std::uint64_t element_count() const;

  const std::vector<std::string>& atom_names() const { return data_->names; }
  const std::string& atom_name(AtomId a) const { return data_->names.at(a); }
  std::optional<AtomId> find_atom(std::string_view name) const;

  AtomSet identity_atoms() const { return data_->identity; }
  AtomId converse_atom(AtomId a) const { return data_->converse.at(a); }
  AtomSet comp_atoms(AtomId a, AtomId b) const {
    return data_->comp[a * atom_count() + b];
  }

  bool is_symmetric() const;
  bool is_integral() const { return std::popcount(data_->identity) == 1; }

  AtomSet universe() const {
    return atom_count() == 64 ? ~AtomSet{0}
                              : (AtomSet{1} << atom_count()) - 1;
  }

  Element element(AtomSet atoms) const;
  Element atom(AtomId a) const;
  Element zero() const { return Element(id(), 0); }
  Element top() const { return Element(id(), universe()); }
  Element identity() const { return Element(id(), data_->identity); }
  Element diversity() const {
    return Element(id(), universe() & ~data_->identity);
  }

  Element join(const Element& x, const Element& y) const;
  Element meet(const Element& x, const Element& y) const;
  Element complement(const Element& x) const;
  Element converse(const Element& x) const;
  Element compose(const Element& x, const Element& y) const;

  bool owns(const Element& x) const { return x.algebra_id() == id(); }

  /// "0" for the empty set, otherwise atom names joined by '+'.
  std::string format(const Element& x) const;
  /// Inverse of format(); accepts "0", "1" (top) and '+'-separated names.
  Element parse_element(std::string_view text) const;

  /// Structural equality of the defining data (names, identity, converse,
  /// table). Independent of identity.
  bool same_table(const FiniteRelationAlgebra& other) const;

 private:
  struct Data {
    std::uint64_t id;
    std::vector<std::string> names;
    AtomSet identity;
    std::vector<AtomId> converse;
    std::vector<AtomSet> comp;
  };

  void require_owned(const Element& x) const;

  std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Axiom verification

struct AxiomCheck {
  std::string family;
  bool passed = true;
  bool by_construction = false;
  /// Empty on success; otherwise a human-readable witness.
  std::string certificate;
  /// Witness atoms (a, b, c); only the leading ones are meaningful for
  /// families that quantify over fewer atoms.
  std::vector<AtomId> witness;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool symmetric = false;
  bool integral = false;
  bool commutative = false;

  bool all_pass() const;
  const AxiomCheck* first_failure() const;
};

AxiomReport check_axioms(const FiniteRelationAlgebra& algebra);

}  // namespace relalg
