#pragma once
// Gamma-generated subalgebras of L(p, n) and the equational complexity bound.
//
// With 2^gamma < p + 1 some two a-indices i != j sit identically inside or
// outside each of gamma generators. Every element the generators produce
// then treats a_i and a_j alike, so the generated subalgebra lies inside the
// fused algebra L^{ij}(p, n), which embeds into L(p', n) for every p' >= p.
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <utility>
#include <vector>

#include "relalg/lpn.hpp"
#include "relalg/subalgebra.hpp"

namespace relalg {

struct GammaWitnessPlan {
  unsigned gamma = 1;
  LpnParams params;
  FusionSpec fusion;
  unsigned target_p = 0;
};

/// Smallest odd prime power p > 2^gamma - 1 and n = (p + 1) / 2.
/// ParameterError for gamma == 0 or gamma > 30.
LpnParams choose_params(unsigned gamma);

/// Lexicographically first i < j such that every generator contains both of
/// a_i, a_j or neither. ParameterError when 2^|gens| >= p + 1 and no pair
/// exists; InternalError if none exists although 2^|gens| < p + 1.
std::pair<unsigned, unsigned> pigeonhole_pair(const LpnParams& params,
                                              const std::vector<Element>& gens);

/// Plan for gens in L(params) with target L(target_p, n); target_p defaults
/// to 2p + 1 when 0.
GammaWitnessPlan make_plan(const LpnParams& params, const std::vector<Element>& gens,
                           unsigned target_p = 0);

struct GammaEmbedding {
  GammaWitnessPlan plan;
  FiniteRelationAlgebra source;
  SubalgebraDescription subalgebra;
  FiniteRelationAlgebra target;
  AtomMap map;
  EmbeddingCheck check;
};

/// Embeds Sg(gens) into L(plan.target_p, n) through the fused algebra.
/// `source` must be L(plan.params) and own the generators. InternalError if
/// Sg(gens) is not inside the fused algebra.
GammaEmbedding build_gamma_embedding(const GammaWitnessPlan& plan,
                                     const FiniteRelationAlgebra& source,
                                     const std::vector<Element>& gens);

/// gamma uniformly random elements of `algebra` drawn from SplitMix64(seed).
std::vector<Element> random_generators(const FiniteRelationAlgebra& algebra, unsigned gamma,
                                       std::uint64_t seed);

/// log2(2 log2(m) - 5) - log2(3), for m >= 2^7. DomainError below.
double beta_lower_bound(std::uint64_t m);
/// Same bound taking log2(m) >= 7, for m beyond 64 bits.
double beta_lower_bound_log2(double log2_m);

/// Number of elements of L(p, n): 2^(2 + p + n).
boost::multiprecision::cpp_int algebra_size(unsigned p, unsigned n);
/// ceil((3p + 5) / 2), the log2 size of L(p, ceil((p+1)/2)).
unsigned chain_exponent(unsigned p);

}  // namespace relalg
