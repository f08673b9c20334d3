#pragma once
// The random L(p, n) structure over a structure theta for L(p, 0) and its
// specialised checker.
//
// Write R_i for the class-i cross pairs as a D x D matrix (row x holds the y
// with class(x, y') = i) and C_i for its transpose. Assuming theta is a weak
// representation, xi(theta) is one iff all of the following hold; they come
// from matching image(x;y) against the product of images for the element
// pairs given in brackets, and each failure is replayed in tests through the
// generic verifier with exactly that pair.
//
//   top-cover            theta(1) = D x D                       [T, T]
//   diversity-cover      theta(A) = all off-diagonal pairs      [t1, t2]
//                        (n >= 2)                  or [1'+t1, 1'+t2]
//   same-class-witness   R_i C_i = D x D and C_i R_i = D x D     [t_i, t_i]
//   cross-class-witness  R_i C_j and C_i R_j contain every      [t_i, t_j]
//                        off-diagonal pair (i != j)
//   atom-class-witness   theta(a_q) R_l = D x D                 [a_q, t_l]
//                        R_l theta(a_q) = D x D                 [t_l, a_q]
//
// Witnesses are owed to every distinct pair, not just the theta-labeled
// ones: (1'+t_i);(1'+t_j) = 1'+A+t_i+t_j forces them once theta(1) is all
// of D x D. Power structures theta^m (m >= 2) leave pairs whose coordinates
// are partly equal outside theta(1') + theta(A), so for n >= 2
// diversity-cover fails and no seed can succeed.
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relalg/bounds.hpp"
#include "relalg/structure.hpp"

namespace relalg {

/// Xi structure for L(p, n) over `theta` (a structure for L(p, 0)).
/// Throws ParameterError for n == 0 or a mismatched partition.
LabeledStructure build_xi(std::shared_ptr<const LabeledStructure> theta, unsigned n,
                          Partition partition);
LabeledStructure build_xi(std::shared_ptr<const LabeledStructure> theta, unsigned n,
                          std::uint64_t seed);

struct XiCertificate {
  std::string condition;
  bool mirror = false;
  /// Failing pair in the Xi base (D' points are offset by |D|).
  std::size_t u = 0;
  std::size_t v = 0;
  /// Element pair whose composition law fails at (u, v).
  Element x;
  Element y;
};

struct XiVerdict {
  bool pass = true;
  std::optional<XiCertificate> certificate;
  std::string describe(const FiniteRelationAlgebra& algebra) const;
};

/// Largest |D| accepted by check_xi_fast; RELALG_MAX_FAST_BASE, default 8192.
std::size_t max_fast_base();

/// Throws UsageError for other kinds and ResourceError above max_fast_base().
XiVerdict check_xi_fast(const LabeledStructure& xi);

enum class SearchMode { Fast, Strict };

struct SeedResult {
  std::uint64_t seed = 0;
  XiVerdict fast;
  /// Generic verify_weak verdict (strict mode only).
  std::optional<Verdict> strict;
  bool pass() const { return fast.pass && (!strict || strict->pass); }
};

struct SearchReport {
  unsigned p = 3;
  unsigned n = 2;
  unsigned m = 1;
  std::size_t base_size = 0;
  std::vector<SeedResult> results;
  std::optional<std::uint64_t> first_pass;
};

/// theta = build_power(build_affine(p), m); seeds in [seed_begin, seed_end).
/// Strict mode throws ResourceError when the Xi base exceeds the verify
/// budget.
SearchReport search_weakrep(unsigned p, unsigned n, unsigned m,
                            std::uint64_t seed_begin, std::uint64_t seed_end,
                            SearchMode mode, unsigned threads = 1);

struct MonteCarloReport {
  unsigned p = 3;
  unsigned n = 2;
  unsigned m = 1;
  std::uint64_t seed0 = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double rate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  BoundReport bound;
  /// The analytic bound is >= 1 and says nothing.
  bool vacuous = false;
  /// wilson_low <= analytic bound.
  bool consistent = true;
};

/// Trial i uses the i-th output of SplitMix64(seed0) as partition seed.
MonteCarloReport montecarlo(unsigned p, unsigned n, unsigned m, std::uint64_t trials,
                            std::uint64_t seed0, unsigned threads = 1);

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

}  // namespace relalg
