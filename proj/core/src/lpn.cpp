#include "relalg/lpn.hpp"

#include <string>
#include <vector>

#include "relalg/errors.hpp"

namespace relalg {

namespace lpn {

void validate(const LpnParams& params) {
  if (params.p < 3) {
    throw ParameterError("L(p,n) requires p >= 3, got p = " +
                         std::to_string(params.p));
  }
  if (params.atom_count() > kMaxAtoms) {
    throw ParameterError("L(" + std::to_string(params.p) + "," +
                         std::to_string(params.n) + ") needs " +
                         std::to_string(params.atom_count()) +
                         " atoms; at most 64 are supported");
  }
}

AtomSet a_part(const LpnParams& params) {
  AtomSet s = 0;
  for (unsigned i = 0; i <= params.p; ++i) s |= atom_bit(a_atom(i));
  return s;
}

AtomSet t_part(const LpnParams& params) {
  AtomSet s = 0;
  for (unsigned k = 1; k <= params.n; ++k) s |= atom_bit(t_atom(params, k));
  return s;
}

}  // namespace lpn

namespace {

enum class Kind { Identity, A, T };

struct AtomKind {
  Kind kind;
  unsigned index;
};

// Shared table builder: `kinds` lists each atom's role; `a_set`/`t_set` are
// the joins of all A-role and T-role atoms.
std::vector<AtomSet> lpn_table(const std::vector<AtomKind>& kinds,
                               AtomSet identity, AtomSet a_set, AtomSet t_set,
                               const std::vector<AtomSet>& fused_square) {
  const std::size_t k = kinds.size();
  std::vector<AtomSet> comp(k * k, 0);
  for (AtomId x = 0; x < k; ++x) {
    for (AtomId y = 0; y < k; ++y) {
      const AtomKind kx = kinds[x];
      const AtomKind ky = kinds[y];
      AtomSet& out = comp[x * k + y];
      if (kx.kind == Kind::Identity) {
        out = atom_bit(y);
      } else if (ky.kind == Kind::Identity) {
        out = atom_bit(x);
      } else if (kx.kind == Kind::A && ky.kind == Kind::A) {
        if (x == y) {
          out = fused_square[x] != 0 ? fused_square[x] : identity | atom_bit(x);
        } else {
          out = a_set & ~atom_bit(x) & ~atom_bit(y);
          // a merged atom composed with another a-atom: A . -a_k
          if (fused_square[x] != 0) out = a_set & ~atom_bit(y);
          if (fused_square[y] != 0) out = a_set & ~atom_bit(x);
        }
      } else if (kx.kind == Kind::T && ky.kind == Kind::T) {
        out = x == y ? (identity | a_set) : a_set;
      } else {
        out = t_set;
      }
    }
  }
  return comp;
}

}  // namespace

FiniteRelationAlgebra build_lpn(const LpnParams& params) {
  lpn::validate(params);
  std::vector<std::string> names{"1'"};
  std::vector<AtomKind> kinds{{Kind::Identity, 0}};
  for (unsigned i = 0; i <= params.p; ++i) {
    names.push_back("a" + std::to_string(i));
    kinds.push_back({Kind::A, i});
  }
  for (unsigned k = 1; k <= params.n; ++k) {
    names.push_back("t" + std::to_string(k));
    kinds.push_back({Kind::T, k});
  }
  const std::vector<AtomSet> no_fusion(kinds.size(), 0);
  auto comp = lpn_table(kinds, atom_bit(lpn::identity_atom()),
                        lpn::a_part(params), lpn::t_part(params), no_fusion);
  return FiniteRelationAlgebra::symmetric(std::move(names),
                                          atom_bit(lpn::identity_atom()),
                                          std::move(comp));
}

std::optional<LpnParams> recognize_lpn(const FiniteRelationAlgebra& algebra) {
  const auto& names = algebra.atom_names();
  if (names.empty() || names[0] != "1'") return std::nullopt;
  std::size_t pos = 1;
  unsigned a_count = 0;
  while (pos < names.size() && names[pos] == "a" + std::to_string(a_count)) {
    ++a_count;
    ++pos;
  }
  unsigned t_count = 0;
  while (pos < names.size() && names[pos] == "t" + std::to_string(t_count + 1)) {
    ++t_count;
    ++pos;
  }
  if (pos != names.size() || a_count < 4) return std::nullopt;
  const LpnParams params{a_count - 1, t_count};
  if (!build_lpn(params).same_table(algebra)) return std::nullopt;
  return params;
}

bool notrap_flag(const LpnParams& params) { return 2 * params.n > params.p; }

FusedAlgebra build_fused(const LpnParams& params, const FusionSpec& spec) {
  lpn::validate(params);
  if (spec.i == spec.j || spec.i > params.p || spec.j > params.p) {
    throw ParameterError("fusion indices must be distinct and at most p");
  }
  const unsigned lo = std::min(spec.i, spec.j);
  const unsigned hi = std::max(spec.i, spec.j);

  std::vector<std::string> names{"1'",
                                 "a" + std::to_string(lo) + "a" + std::to_string(hi)};
  std::vector<AtomKind> kinds{{Kind::Identity, 0}, {Kind::A, lo}};
  std::vector<unsigned> a_indices{lo};  // parent a-index per A-role atom
  for (unsigned k = 0; k <= params.p; ++k) {
    if (k == lo || k == hi) continue;
    names.push_back("a" + std::to_string(k));
    kinds.push_back({Kind::A, k});
    a_indices.push_back(k);
  }
  for (unsigned l = 1; l <= params.n; ++l) {
    names.push_back("t" + std::to_string(l));
    kinds.push_back({Kind::T, l});
  }
  const AtomId fused = 1;
  AtomSet a_set = 0;
  AtomSet t_set = 0;
  for (AtomId x = 0; x < kinds.size(); ++x) {
    if (kinds[x].kind == Kind::A) a_set |= atom_bit(x);
    if (kinds[x].kind == Kind::T) t_set |= atom_bit(x);
  }
  std::vector<AtomSet> fused_square(kinds.size(), 0);
  fused_square[fused] = atom_bit(0) | a_set;  // (a_i+a_j);(a_i+a_j) = 1'+A
  auto comp = lpn_table(kinds, atom_bit(0), a_set, t_set, fused_square);

  FusedAlgebra out{params, spec,
                   FiniteRelationAlgebra::symmetric(names, atom_bit(0), std::move(comp)),
                   build_lpn(params), {}, {}};
  const FiniteRelationAlgebra& parent = out.parent;
  for (AtomId x = 0; x < kinds.size(); ++x) {
    AtomSet image = 0;
    switch (kinds[x].kind) {
      case Kind::Identity:
        image = atom_bit(lpn::identity_atom());
        break;
      case Kind::A:
        image = atom_bit(lpn::a_atom(kinds[x].index));
        if (x == fused) image |= atom_bit(lpn::a_atom(hi));
        break;
      case Kind::T:
        image = atom_bit(lpn::t_atom(params, kinds[x].index));
        break;
    }
    out.inclusion.emplace(out.algebra.atom(x), parent.element(image));
  }
  out.inclusion_check = check_embedding(out.algebra, parent,
                                        full_subalgebra(out.algebra),
                                        out.inclusion);
  return out;
}

FusionEmbedding fusion_embedding(const LpnParams& params, const FusionSpec& spec,
                                 unsigned q) {
  if (q < params.p) {
    throw ParameterError("fusion target q must be at least p");
  }
  return fusion_embedding(params, spec, build_lpn({q, params.n}), q);
}

FusionEmbedding fusion_embedding(const LpnParams& params, const FusionSpec& spec,
                                 const FiniteRelationAlgebra& target, unsigned q) {
  if (q < params.p) {
    throw ParameterError("fusion target q must be at least p");
  }
  const LpnParams target_params{q, params.n};
  if (!build_lpn(target_params).same_table(target)) {
    throw UsageError("target is not L(q,n) for the requested q");
  }
  FusedAlgebra fused = build_fused(params, spec);
  AtomSet extra = 0;
  for (unsigned k = params.p + 1; k <= q; ++k) extra |= atom_bit(lpn::a_atom(k));

  AtomMap map;
  for (const auto& [atom, parent_image] : fused.inclusion) {
    // parent and target share atom indices for 1' and a0..ap; t-atoms shift
    AtomSet image = 0;
    for_each_atom(parent_image.atoms(), [&](AtomId a) {
      if (a <= lpn::a_atom(params.p)) {
        image |= atom_bit(a);
      } else {
        const unsigned l = a - lpn::t_atom(params, 1) + 1;
        image |= atom_bit(lpn::t_atom(target_params, l));
      }
    });
    if (atom == fused.algebra.atom(1)) image |= extra;
    map.emplace(atom, target.element(image));
  }
  EmbeddingCheck check = check_embedding(
      fused.algebra, target, full_subalgebra(fused.algebra), map);
  return FusionEmbedding{std::move(fused), target, q, std::move(map),
                         std::move(check)};
}

}  // namespace relalg
