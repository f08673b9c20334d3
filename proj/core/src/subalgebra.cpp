#include "relalg/subalgebra.hpp"

#include <algorithm>

#include "relalg/errors.hpp"

namespace relalg {

namespace {

// Splits every block by `splitter`; returns true if the partition changed.
bool refine(std::vector<AtomSet>& blocks, AtomSet splitter) {
  bool changed = false;
  std::vector<AtomSet> next;
  next.reserve(blocks.size() + 1);
  for (AtomSet b : blocks) {
    const AtomSet in = b & splitter;
    const AtomSet out = b & ~splitter;
    if (in != 0 && out != 0) {
      next.push_back(in);
      next.push_back(out);
      changed = true;
    } else {
      next.push_back(b);
    }
  }
  blocks = std::move(next);
  return changed;
}

}  // namespace

bool SubalgebraDescription::contains(const Element& x) const {
  if (x.algebra_id() != algebra_id) return false;
  for (const auto& a : atoms) {
    const AtomSet part = x.atoms() & a.atoms();
    if (part != 0 && part != a.atoms()) return false;
  }
  return true;
}

std::vector<Element> SubalgebraDescription::elements() const {
  if (atoms.size() > 24) {
    throw ResourceError("subalgebra has 2^" + std::to_string(atoms.size()) +
                        " elements; refusing to enumerate");
  }
  const std::uint64_t count = std::uint64_t{1} << atoms.size();
  std::vector<Element> out;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    AtomSet bits = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if ((mask >> i) & 1U) bits |= atoms[i].atoms();
    }
    out.emplace_back(algebra_id, bits);
  }
  return out;
}

std::vector<std::size_t> SubalgebraDescription::decompose(const Element& x) const {
  if (!contains(x)) {
    throw UsageError("element is not a member of the subalgebra");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if ((x.atoms() & atoms[i].atoms()) != 0) out.push_back(i);
  }
  return out;
}

SubalgebraDescription generate_subalgebra(const FiniteRelationAlgebra& algebra,
                                          const std::vector<Element>& generators) {
  if (generators.empty()) {
    throw UsageError("generate_subalgebra needs at least one generator");
  }
  std::vector<AtomSet> blocks{algebra.universe()};
  refine(blocks, algebra.identity_atoms());
  for (const auto& g : generators) {
    if (!algebra.owns(g)) {
      throw UsageError("generator belongs to a different algebra");
    }
    refine(blocks, g.atoms());
  }

  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<AtomSet> snapshot = blocks;
    for (AtomSet b : snapshot) {
      changed |= refine(blocks, algebra.converse(algebra.element(b)).atoms());
    }
    for (AtomSet b1 : snapshot) {
      for (AtomSet b2 : snapshot) {
        const AtomSet prod =
            algebra.compose(algebra.element(b1), algebra.element(b2)).atoms();
        changed |= refine(blocks, prod);
      }
    }
  }

  std::sort(blocks.begin(), blocks.end());
  SubalgebraDescription out;
  out.algebra_id = algebra.id();
  for (AtomSet b : blocks) out.atoms.emplace_back(algebra.id(), b);
  return out;
}

SubalgebraDescription full_subalgebra(const FiniteRelationAlgebra& algebra) {
  SubalgebraDescription out;
  out.algebra_id = algebra.id();
  for (AtomId a = 0; a < algebra.atom_count(); ++a) {
    out.atoms.push_back(algebra.atom(a));
  }
  return out;
}

Element apply_additive(const FiniteRelationAlgebra& target,
                       const SubalgebraDescription& domain, const AtomMap& map,
                       const Element& x) {
  AtomSet out = 0;
  for (std::size_t i : domain.decompose(x)) {
    const auto it = map.find(domain.atoms[i]);
    if (it == map.end()) {
      throw UsageError("map is not defined on a domain atom");
    }
    out |= it->second.atoms();
  }
  return target.element(out);
}

EmbeddingCheck check_embedding(const FiniteRelationAlgebra& source,
                               const FiniteRelationAlgebra& target,
                               const SubalgebraDescription& domain,
                               const AtomMap& map) {
  if (domain.algebra_id != source.id()) {
    throw UsageError("domain is not a subalgebra of the source algebra");
  }
  std::vector<Element> images;
  images.reserve(domain.atoms.size());
  for (const auto& a : domain.atoms) {
    const auto it = map.find(a);
    if (it == map.end()) {
      throw UsageError("map is not defined on domain atom " + source.format(a));
    }
    if (!target.owns(it->second)) {
      throw UsageError("map image is not an element of the target algebra");
    }
    images.push_back(it->second);
  }

  auto failure = [&](std::string law, std::string msg,
                     std::vector<Element> witness) {
    return EmbeddingCheck{false, std::move(law), std::move(msg),
                          std::move(witness)};
  };
  auto f = [&](const Element& x) {
    return apply_additive(target, domain, map, x);
  };

  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].is_zero()) {
      return failure("nonzero",
                     "atom " + source.format(domain.atoms[i]) + " maps to 0",
                     {domain.atoms[i]});
    }
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if ((images[i].atoms() & images[j].atoms()) != 0) {
        return failure("injective",
                       "images of " + source.format(domain.atoms[i]) + " and " +
                           source.format(domain.atoms[j]) + " overlap",
                       {domain.atoms[i], domain.atoms[j]});
      }
    }
  }
  if (f(source.identity()) != target.identity()) {
    return failure("identity",
                   "1' maps to " + target.format(f(source.identity())), {});
  }
  if (f(source.top()) != target.top()) {
    return failure("top", "1 maps to " + target.format(f(source.top())), {});
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Element& a = domain.atoms[i];
    if (f(source.converse(a)) != target.converse(images[i])) {
      return failure("converse",
                     "f(x~) != f(x)~ at x = " + source.format(a), {a});
    }
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < images.size(); ++j) {
      const Element& a = domain.atoms[i];
      const Element& b = domain.atoms[j];
      const Element lhs = f(source.compose(a, b));
      const Element rhs = target.compose(images[i], images[j]);
      if (lhs != rhs) {
        return failure("composition",
                       "f(x;y) != f(x);f(y) at (" + source.format(a) + ", " +
                           source.format(b) + "): " + target.format(lhs) +
                           " vs " + target.format(rhs),
                       {a, b});
      }
    }
  }
  return EmbeddingCheck{};
}

}  // namespace relalg
