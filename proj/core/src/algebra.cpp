#include "relalg/algebra.hpp"

#include <atomic>
#include <sstream>
#include <unordered_set>

#include "relalg/errors.hpp"

namespace relalg {

namespace {

std::uint64_t next_algebra_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

std::string atom_triple(const FiniteRelationAlgebra& alg, AtomId a, AtomId b,
                        AtomId c) {
  return "(" + alg.atom_name(a) + ", " + alg.atom_name(b) + ", " +
         alg.atom_name(c) + ")";
}

}  // namespace

FiniteRelationAlgebra::FiniteRelationAlgebra(std::vector<std::string> atom_names,
                                             AtomSet identity_atoms,
                                             std::vector<AtomId> converse,
                                             std::vector<AtomSet> comp) {
  const std::size_t k = atom_names.size();
  if (k == 0 || k > kMaxAtoms) {
    throw ParameterError("algebra must have between 1 and 64 atoms, got " +
                         std::to_string(k));
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : atom_names) {
    if (name.empty() || !seen.insert(name).second) {
      throw ParameterError("atom names must be nonempty and distinct: '" +
                           name + "'");
    }
  }
  const AtomSet universe = k == 64 ? ~AtomSet{0} : (AtomSet{1} << k) - 1;
  if (identity_atoms == 0 || (identity_atoms & ~universe) != 0) {
    throw ParameterError("identity atom set must be a nonempty set of atoms");
  }
  if (converse.size() != k) {
    throw ParameterError("converse permutation has wrong length");
  }
  for (AtomId a = 0; a < k; ++a) {
    const AtomId c = converse[a];
    if (c >= k || converse[c] != a) {
      throw ParameterError("converse is not an involution at atom " +
                           atom_names[a]);
    }
    if ((identity_atoms & atom_bit(a)) != 0 && c != a) {
      throw ParameterError("converse must fix identity atom " + atom_names[a]);
    }
  }
  if (comp.size() != k * k) {
    throw ParameterError("composition table must have atom_count^2 entries");
  }
  for (AtomSet entry : comp) {
    if ((entry & ~universe) != 0) {
      throw ParameterError("composition table refers to unknown atoms");
    }
  }
  data_ = std::make_shared<const Data>(Data{next_algebra_id(),
                                            std::move(atom_names),
                                            identity_atoms, std::move(converse),
                                            std::move(comp)});
}

FiniteRelationAlgebra FiniteRelationAlgebra::symmetric(
    std::vector<std::string> atom_names, AtomSet identity_atoms,
    std::vector<AtomSet> comp) {
  std::vector<AtomId> converse(atom_names.size());
  for (AtomId a = 0; a < converse.size(); ++a) converse[a] = a;
  return FiniteRelationAlgebra(std::move(atom_names), identity_atoms,
                               std::move(converse), std::move(comp));
}

std::uint64_t FiniteRelationAlgebra::element_count() const {
  if (atom_count() >= 64) throw ResourceError("2^64 elements do not fit");
  return std::uint64_t{1} << atom_count();
}

std::optional<AtomId> FiniteRelationAlgebra::find_atom(
    std::string_view name) const {
  for (AtomId a = 0; a < atom_count(); ++a) {
    if (data_->names[a] == name) return a;
  }
  return std::nullopt;
}

bool FiniteRelationAlgebra::is_symmetric() const {
  for (AtomId a = 0; a < atom_count(); ++a) {
    if (data_->converse[a] != a) return false;
  }
  return true;
}

void FiniteRelationAlgebra::require_owned(const Element& x) const {
  if (!owns(x)) {
    throw UsageError("element belongs to a different algebra");
  }
}

Element FiniteRelationAlgebra::element(AtomSet atoms) const {
  if ((atoms & ~universe()) != 0) {
    throw UsageError("atom set exceeds the atom universe");
  }
  return Element(id(), atoms);
}

Element FiniteRelationAlgebra::atom(AtomId a) const {
  if (a >= atom_count()) throw UsageError("atom index out of range");
  return Element(id(), atom_bit(a));
}

Element FiniteRelationAlgebra::join(const Element& x, const Element& y) const {
  require_owned(x);
  require_owned(y);
  return Element(id(), x.atoms() | y.atoms());
}

Element FiniteRelationAlgebra::meet(const Element& x, const Element& y) const {
  require_owned(x);
  require_owned(y);
  return Element(id(), x.atoms() & y.atoms());
}

Element FiniteRelationAlgebra::complement(const Element& x) const {
  require_owned(x);
  return Element(id(), universe() & ~x.atoms());
}

Element FiniteRelationAlgebra::converse(const Element& x) const {
  require_owned(x);
  AtomSet out = 0;
  for_each_atom(x.atoms(), [&](AtomId a) { out |= atom_bit(data_->converse[a]); });
  return Element(id(), out);
}

Element FiniteRelationAlgebra::compose(const Element& x, const Element& y) const {
  require_owned(x);
  require_owned(y);
  const std::size_t k = atom_count();
  AtomSet out = 0;
  for_each_atom(x.atoms(), [&](AtomId a) {
    const AtomSet* row = data_->comp.data() + a * k;
    for_each_atom(y.atoms(), [&](AtomId b) { out |= row[b]; });
  });
  return Element(id(), out);
}

std::string FiniteRelationAlgebra::format(const Element& x) const {
  require_owned(x);
  if (x.is_zero()) return "0";
  std::string out;
  for_each_atom(x.atoms(), [&](AtomId a) {
    if (!out.empty()) out += '+';
    out += data_->names[a];
  });
  return out;
}

Element FiniteRelationAlgebra::parse_element(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "0") return zero();
  if (text == "1") return top();
  AtomSet out = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t plus = text.find('+', start);
    const std::size_t end = plus == std::string_view::npos ? text.size() : plus;
    const std::string_view name = trim(text.substr(start, end - start));
    const auto a = find_atom(name);
    if (!a) {
      throw ParseError("unknown atom '" + std::string(name) + "'", start);
    }
    out |= atom_bit(*a);
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return Element(id(), out);
}

bool FiniteRelationAlgebra::same_table(const FiniteRelationAlgebra& other) const {
  return data_->names == other.data_->names &&
         data_->identity == other.data_->identity &&
         data_->converse == other.data_->converse &&
         data_->comp == other.data_->comp;
}

// ---------------------------------------------------------------------------

bool AxiomReport::all_pass() const { return first_failure() == nullptr; }

const AxiomCheck* AxiomReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

AxiomReport check_axioms(const FiniteRelationAlgebra& alg) {
  const auto k = static_cast<AtomId>(alg.atom_count());
  AxiomReport report;
  report.symmetric = alg.is_symmetric();
  report.integral = alg.is_integral();

  auto fail = [&](AxiomCheck& check, std::string msg,
                  std::vector<AtomId> witness) {
    if (!check.passed) return;
    check.passed = false;
    check.certificate = std::move(msg);
    check.witness = std::move(witness);
  };

  // (i) associativity on atom triples
  AxiomCheck assoc;
  assoc.family = "associativity";
  for (AtomId a = 0; a < k && assoc.passed; ++a) {
    for (AtomId b = 0; b < k && assoc.passed; ++b) {
      const Element ab = alg.element(alg.comp_atoms(a, b));
      for (AtomId c = 0; c < k; ++c) {
        const Element lhs = alg.compose(ab, alg.atom(c));
        const Element rhs =
            alg.compose(alg.atom(a), alg.element(alg.comp_atoms(b, c)));
        if (lhs != rhs) {
          fail(assoc,
               "(a;b);c != a;(b;c) at " + atom_triple(alg, a, b, c) + ": " +
                   alg.format(lhs) + " vs " + alg.format(rhs),
               {a, b, c});
          break;
        }
      }
    }
  }
  report.checks.push_back(std::move(assoc));

  // (ii) identity law on atoms, both sides
  AxiomCheck ident;
  ident.family = "identity";
  const Element one_prime = alg.identity();
  for (AtomId a = 0; a < k; ++a) {
    const Element x = alg.atom(a);
    if (alg.compose(x, one_prime) != x || alg.compose(one_prime, x) != x) {
      fail(ident,
           "x;1' != x at x = " + alg.atom_name(a) + " (x;1' = " +
               alg.format(alg.compose(x, one_prime)) + ")",
           {a});
      break;
    }
  }
  report.checks.push_back(std::move(ident));

  // (iii) converse involution and anti-distribution over composition
  AxiomCheck invol;
  invol.family = "converse-involution";
  for (AtomId a = 0; a < k; ++a) {
    if (alg.converse_atom(alg.converse_atom(a)) != a) {
      fail(invol, "x~~ != x at " + alg.atom_name(a), {a});
      break;
    }
  }
  report.checks.push_back(std::move(invol));

  AxiomCheck antidist;
  antidist.family = "converse-composition";
  for (AtomId a = 0; a < k && antidist.passed; ++a) {
    for (AtomId b = 0; b < k; ++b) {
      const Element lhs = alg.converse(alg.element(alg.comp_atoms(a, b)));
      const Element rhs = alg.element(
          alg.comp_atoms(alg.converse_atom(b), alg.converse_atom(a)));
      if (lhs != rhs) {
        fail(antidist,
             "(a;b)~ != b~;a~ at (" + alg.atom_name(a) + ", " +
                 alg.atom_name(b) + ")",
             {a, b});
        break;
      }
    }
  }
  report.checks.push_back(std::move(antidist));

  // (iv) triangle law, atomic Peircean form
  AxiomCheck peirce;
  peirce.family = "triangle-law";
  for (AtomId a = 0; a < k && peirce.passed; ++a) {
    const AtomId ac = alg.converse_atom(a);
    for (AtomId b = 0; b < k && peirce.passed; ++b) {
      const AtomId bc = alg.converse_atom(b);
      for (AtomId c = 0; c < k; ++c) {
        const bool c_in_ab = (alg.comp_atoms(a, b) & atom_bit(c)) != 0;
        const bool b_in_acc = (alg.comp_atoms(ac, c) & atom_bit(b)) != 0;
        const bool a_in_cbc = (alg.comp_atoms(c, bc) & atom_bit(a)) != 0;
        if (c_in_ab != b_in_acc || c_in_ab != a_in_cbc) {
          fail(peirce,
               "Peircean equivalence c<=a;b <=> b<=a~;c <=> a<=c;b~ fails at "
               "(a, b, c) = " + atom_triple(alg, a, b, c),
               {a, b, c});
          break;
        }
      }
    }
  }
  report.checks.push_back(std::move(peirce));

  AxiomCheck additive;
  additive.family = "additivity";
  additive.by_construction = true;
  report.checks.push_back(std::move(additive));

  report.commutative = true;
  for (AtomId a = 0; a < k && report.commutative; ++a) {
    for (AtomId b = a + 1; b < k; ++b) {
      if (alg.comp_atoms(a, b) != alg.comp_atoms(b, a)) {
        report.commutative = false;
        break;
      }
    }
  }
  return report;
}

}  // namespace relalg
