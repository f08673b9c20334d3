#include "relalg/complexity.hpp"

#include <cmath>
#include <string>

#include "relalg/errors.hpp"
#include "relalg/gf.hpp"
#include "relalg/splitmix.hpp"

namespace relalg {

LpnParams choose_params(unsigned gamma) {
  if (gamma == 0 || gamma > 30) throw ParameterError("gamma must be in 1..30");
  const std::uint64_t floor_p = (std::uint64_t{1} << gamma) - 1;  // p > 2^gamma - 1
  const std::uint64_t limit = std::uint64_t{1} << (gamma + 2);
  for (std::uint64_t p = std::max<std::uint64_t>(3, floor_p + 1); p <= limit; ++p) {
    if (p % 2 == 1 && is_prime_power(static_cast<unsigned>(p))) {
      const auto pp = static_cast<unsigned>(p);
      return {pp, (pp + 1) / 2};
    }
  }
  throw InternalError("no odd prime power found below 2^(gamma+2)");
}

std::pair<unsigned, unsigned> pigeonhole_pair(const LpnParams& params,
                                              const std::vector<Element>& gens) {
  std::vector<std::uint64_t> pattern(params.p + 1, 0);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (unsigned i = 0; i <= params.p; ++i) {
      if (gens[k].contains(lpn::a_atom(i))) pattern[i] |= std::uint64_t{1} << (k % 64);
    }
  }
  // Patterns are compared exactly; more than 64 generators are folded above,
  // so compare membership directly in that case.
  auto same = [&](unsigned i, unsigned j) {
    if (gens.size() <= 64) return pattern[i] == pattern[j];
    for (const auto& g : gens) {
      if (g.contains(lpn::a_atom(i)) != g.contains(lpn::a_atom(j))) return false;
    }
    return true;
  };
  for (unsigned i = 0; i <= params.p; ++i) {
    for (unsigned j = i + 1; j <= params.p; ++j) {
      if (same(i, j)) return {i, j};
    }
  }
  const bool guaranteed = gens.size() < 63 && (std::uint64_t{1} << gens.size()) < params.p + 1;
  if (guaranteed) throw InternalError("pigeonhole pair missing although 2^gamma < p + 1");
  throw ParameterError("no pigeonhole pair: generators separate all a-atoms");
}

GammaWitnessPlan make_plan(const LpnParams& params, const std::vector<Element>& gens,
                           unsigned target_p) {
  const auto [i, j] = pigeonhole_pair(params, gens);
  GammaWitnessPlan plan;
  plan.gamma = static_cast<unsigned>(gens.size());
  plan.params = params;
  plan.fusion = {i, j};
  plan.target_p = target_p == 0 ? 2 * params.p + 1 : target_p;
  if (plan.target_p < params.p) throw ParameterError("target p' must be at least p");
  return plan;
}

GammaEmbedding build_gamma_embedding(const GammaWitnessPlan& plan,
                                     const FiniteRelationAlgebra& source,
                                     const std::vector<Element>& gens) {
  if (!build_lpn(plan.params).same_table(source)) {
    throw UsageError("source algebra is not L(p,n) for the plan");
  }
  for (const auto& g : gens) {
    if (!g.contains(lpn::a_atom(plan.fusion.i)) != !g.contains(lpn::a_atom(plan.fusion.j))) {
      throw UsageError("fusion pair separated by a generator");
    }
  }
  SubalgebraDescription sg = generate_subalgebra(source, gens);
  FusionEmbedding fusion = fusion_embedding(plan.params, plan.fusion, plan.target_p);

  // Fused atoms as elements of the source (via the inclusion), paired with
  // their images in the target.
  std::vector<std::pair<AtomSet, Element>> pieces;
  for (const auto& [fused_atom, parent] : fusion.fused.inclusion) {
    pieces.emplace_back(parent.atoms(), fusion.map.at(fused_atom));
  }
  AtomMap map;
  for (const Element& atom : sg.atoms) {
    AtomSet covered = 0;
    AtomSet image = 0;
    for (const auto& [parent_atoms, target_image] : pieces) {
      if ((parent_atoms & atom.atoms()) == 0) continue;
      if ((parent_atoms & ~atom.atoms()) != 0) {
        throw InternalError("generated subalgebra splits the fused atom " +
                            source.format(source.element(parent_atoms)));
      }
      covered |= parent_atoms;
      image |= target_image.atoms();
    }
    if (covered != atom.atoms()) throw InternalError("fused atoms do not cover a subalgebra atom");
    map.emplace(atom, fusion.target.element(image));
  }
  EmbeddingCheck check = check_embedding(source, fusion.target, sg, map);
  return GammaEmbedding{plan, source, std::move(sg), fusion.target, std::move(map),
                        std::move(check)};
}

std::vector<Element> random_generators(const FiniteRelationAlgebra& algebra, unsigned gamma,
                                       std::uint64_t seed) {
  SplitMix64 gen(seed);
  std::vector<Element> out;
  out.reserve(gamma);
  for (unsigned k = 0; k < gamma; ++k) out.push_back(algebra.element(gen.next() & algebra.universe()));
  return out;
}

double beta_lower_bound_log2(double log2_m) {
  if (!(log2_m >= 7.0)) throw DomainError("the bound needs m >= 2^7");
  return std::log2(2.0 * log2_m - 5.0) - std::log2(3.0);
}

double beta_lower_bound(std::uint64_t m) {
  if (m < 128) throw DomainError("the bound needs m >= 2^7, got " + std::to_string(m));
  return beta_lower_bound_log2(std::log2(static_cast<double>(m)));
}

boost::multiprecision::cpp_int algebra_size(unsigned p, unsigned n) {
  if (p < 3) throw ParameterError("L(p,n) requires p >= 3");
  return boost::multiprecision::cpp_int(1) << (2 + p + n);
}

unsigned chain_exponent(unsigned p) { return (3 * p + 5 + 1) / 2; }

}  // namespace relalg
