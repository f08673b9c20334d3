#pragma once
// Probability bounds for the random construction over d points where every
// a-atom has degree at least k:
//
//   (1)  (n^2 / (n^2 - 1))^d > 4 n^2 d (d - 1)
//   (2)  (n / (n - 1))^k     > 4 (p + 1) n d^2
//   failure <= 2 d (d-1) n^2 ((n^2-1)/n^2)^d + 2 (p+1) d^2 n ((n-1)/n)^k
//
// Verdicts are computed with logarithms (log1p for the small bases). When
// the two sides agree to within a relative 1e-9 the comparison is redone
// with exact integers: (1) becomes n^(2d) > 4 n^2 d (d-1) (n^2-1)^d and (2)
// becomes n^k > 4 (p+1) n d^2 (n-1)^k.
#include <cstdint>
#include <optional>
#include <string>

namespace relalg {

struct InequalityVerdict {
  /// False for n < 2, where the bases are undefined.
  bool applicable = false;
  bool holds = false;
  bool decided_exactly = false;
  /// Natural logs of both sides.
  double lhs_log = 0.0;
  double rhs_log = 0.0;
};

struct BoundReport {
  unsigned p = 3;
  unsigned n = 2;
  std::uint64_t d = 0;
  std::uint64_t k = 0;
  std::optional<unsigned> m;
  InequalityVerdict ineq1;
  InequalityVerdict ineq2;
  /// May be +inf; 0 for n == 1.
  double failure_bound = 0.0;
  /// "log-domain" or "exact-rational" (the latter if any verdict needed it).
  std::string mode = "log-domain";
};

BoundReport eval_bounds(unsigned p, unsigned n, std::uint64_t d, std::uint64_t k);
/// d = p^(2m), k = (p-1)^m. Throws ParameterError if d overflows 64 bits.
BoundReport eval_bounds_for_m(unsigned p, unsigned n, unsigned m);

struct ExactVerdicts {
  bool ineq1 = false;
  bool ineq2 = false;
};

/// Exact integer evaluation of both inequalities. Throws ResourceError if
/// d or k exceeds 2^22 (the powers would get too large); n >= 2.
ExactVerdicts eval_bounds_exact(unsigned p, unsigned n, std::uint64_t d, std::uint64_t k);

struct Thresholds {
  unsigned p = 3;
  unsigned n = 2;
  /// m > log_p(16 n^2) gives (1); m > 2 log_{p-1}(24 n) and
  /// m > (1/3) log_{p-1}(4 n (p+1)) give (2).
  double m_ineq1 = 0.0;
  double m_ineq2 = 0.0;
  double m_ineq2_cube = 0.0;
  /// Least integer above all three.
  unsigned m_guaranteed = 0;
  /// p > 16 n^2 gives (1) and p > 1 + (48 n)^2 gives (2) at d = p^2, k = p-1.
  std::uint64_t p_ineq1 = 0;
  std::uint64_t p_ineq2 = 0;
};

/// p >= 3, n >= 2; ParameterError otherwise.
Thresholds sufficiency_thresholds(unsigned p, unsigned n);

/// Least m in [1, max_m] with both inequalities at d = p^(2m), k = (p-1)^m.
std::optional<unsigned> minimal_m(unsigned p, unsigned n, unsigned max_m = 40);

}  // namespace relalg
