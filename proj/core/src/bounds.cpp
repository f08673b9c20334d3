#include "relalg/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

#include "relalg/errors.hpp"

namespace relalg {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kGuard = 1e-9;
constexpr std::uint64_t kExactLimit = 1ULL << 22;

bool in_guard_band(double lhs, double rhs) {
  if (std::isinf(lhs) || std::isinf(rhs)) return false;
  const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
  return std::fabs(lhs - rhs) <= kGuard * scale;
}

cpp_int big_pow(unsigned base, std::uint64_t e) {
  return boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(e));
}

bool exact_ineq1(unsigned n, std::uint64_t d) {
  const cpp_int n2 = cpp_int(n) * n;
  const cpp_int lhs = big_pow(n, 2 * d);
  const cpp_int rhs = 4 * n2 * d * cpp_int(d == 0 ? 0 : d - 1) *
                      big_pow(static_cast<unsigned>(n) * n - 1, d);
  return lhs > rhs;
}

bool exact_ineq2(unsigned p, unsigned n, std::uint64_t d, std::uint64_t k) {
  const cpp_int lhs = big_pow(n, k);
  const cpp_int rhs = 4 * cpp_int(p + 1) * n * cpp_int(d) * d * big_pow(n - 1, k);
  return lhs > rhs;
}

double log_or_neg_inf(double x) {
  return x > 0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

}  // namespace

ExactVerdicts eval_bounds_exact(unsigned p, unsigned n, std::uint64_t d, std::uint64_t k) {
  if (n < 2) throw ParameterError("the inequalities need n >= 2");
  if (d > kExactLimit || k > kExactLimit) {
    throw ResourceError("exact evaluation is limited to d, k <= 2^22");
  }
  return {exact_ineq1(n, d), exact_ineq2(p, n, d, k)};
}

BoundReport eval_bounds(unsigned p, unsigned n, std::uint64_t d, std::uint64_t k) {
  BoundReport r;
  r.p = p;
  r.n = n;
  r.d = d;
  r.k = k;
  const double dd = static_cast<double>(d);
  const double dk = static_cast<double>(k);
  const double dn = n;
  if (n < 2) {
    // ((n^2-1)/n^2)^d and ((n-1)/n)^k vanish for n = 1.
    r.failure_bound = 0.0;
    return r;
  }
  const double n2 = dn * dn;

  auto decide = [&](InequalityVerdict& v, double lhs, double rhs, auto exact) {
    v.applicable = true;
    v.lhs_log = lhs;
    v.rhs_log = rhs;
    v.holds = lhs > rhs;
    if (in_guard_band(lhs, rhs) && d <= kExactLimit && k <= kExactLimit) {
      v.holds = exact();
      v.decided_exactly = true;
      r.mode = "exact-rational";
    }
  };
  decide(r.ineq1, dd * std::log1p(1.0 / (n2 - 1.0)),
         std::log(4.0 * n2) + log_or_neg_inf(dd) + log_or_neg_inf(dd - 1.0),
         [&] { return exact_ineq1(n, d); });
  decide(r.ineq2, dk * std::log1p(1.0 / (dn - 1.0)),
         std::log(4.0 * (p + 1.0) * dn) + 2.0 * log_or_neg_inf(dd),
         [&] { return exact_ineq2(p, n, d, k); });

  const double log_t1 = std::log(2.0 * n2) + log_or_neg_inf(dd) +
                        log_or_neg_inf(dd - 1.0) - dd * std::log1p(1.0 / (n2 - 1.0));
  const double log_t2 = std::log(2.0 * (p + 1.0) * dn) + 2.0 * log_or_neg_inf(dd) -
                        dk * std::log1p(1.0 / (dn - 1.0));
  r.failure_bound = std::exp(log_t1) + std::exp(log_t2);
  return r;
}

BoundReport eval_bounds_for_m(unsigned p, unsigned n, unsigned m) {
  std::uint64_t d = 1;
  std::uint64_t k = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (d > std::numeric_limits<std::uint64_t>::max() / (std::uint64_t{p} * p)) {
      throw ParameterError("p^(2m) does not fit in 64 bits");
    }
    d *= std::uint64_t{p} * p;
    k *= p - 1;
  }
  BoundReport r = eval_bounds(p, n, d, k);
  r.m = m;
  return r;
}

Thresholds sufficiency_thresholds(unsigned p, unsigned n) {
  if (p < 3 || n < 2) throw ParameterError("thresholds need p >= 3 and n >= 2");
  Thresholds t;
  t.p = p;
  t.n = n;
  const double lp = std::log(static_cast<double>(p));
  const double lp1 = std::log(static_cast<double>(p - 1));
  const double dn = n;
  t.m_ineq1 = std::log(16.0 * dn * dn) / lp;
  t.m_ineq2 = 2.0 * std::log(24.0 * dn) / lp1;
  t.m_ineq2_cube = std::log(4.0 * dn * (p + 1.0)) / lp1 / 3.0;
  const double top = std::max({t.m_ineq1, t.m_ineq2, t.m_ineq2_cube});
  t.m_guaranteed = static_cast<unsigned>(std::floor(top)) + 1;
  t.p_ineq1 = 16ULL * n * n;
  t.p_ineq2 = 1ULL + 48ULL * n * 48ULL * n;
  return t;
}

std::optional<unsigned> minimal_m(unsigned p, unsigned n, unsigned max_m) {
  for (unsigned m = 1; m <= max_m; ++m) {
    BoundReport r;
    try {
      r = eval_bounds_for_m(p, n, m);
    } catch (const ParameterError&) {
      return std::nullopt;
    }
    if (r.ineq1.holds && r.ineq2.holds) return m;
  }
  return std::nullopt;
}

}  // namespace relalg
