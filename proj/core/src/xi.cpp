#include "relalg/xi.hpp"

#include <cmath>
#include <sstream>

#include "env.hpp"
#include "relalg/errors.hpp"
#include "relalg/parallel.hpp"

namespace relalg {

LabeledStructure build_xi(std::shared_ptr<const LabeledStructure> theta, unsigned n,
                          Partition partition) {
  if (!theta) throw UsageError("xi over a null structure");
  if (n == 0) throw ParameterError("xi needs n >= 1");
  const auto base = recognize_lpn(theta->algebra());
  if (!base || base->n != 0) {
    throw ParameterError("xi needs a structure for some L(p,0)");
  }
  return LabeledStructure::xi(build_lpn({base->p, n}), std::move(theta),
                              std::move(partition));
}

LabeledStructure build_xi(std::shared_ptr<const LabeledStructure> theta, unsigned n,
                          std::uint64_t seed) {
  if (!theta) throw UsageError("xi over a null structure");
  if (n == 0) throw ParameterError("xi needs n >= 1");
  const PartitionRecipe recipe{seed, n, theta->base_size()};
  return build_xi(std::move(theta), n, Partition::from_recipe(recipe));
}

std::string XiVerdict::describe(const FiniteRelationAlgebra& algebra) const {
  if (pass) return "PASS";
  std::ostringstream out;
  out << "FAIL " << certificate->condition << (certificate->mirror ? " (mirror)" : "")
      << " at (" << certificate->u << "," << certificate->v << ") for "
      << algebra.format(certificate->x) << " ; " << algebra.format(certificate->y);
  return out.str();
}

std::size_t max_fast_base() {
  return static_cast<std::size_t>(detail::env_u64("RELALG_MAX_FAST_BASE", 8192));
}

XiVerdict check_xi_fast(const LabeledStructure& xi) {
  if (xi.kind() != StructureKind::Xi) throw UsageError("check_xi_fast needs a xi structure");
  const LabeledStructure& theta = xi.inner();
  const std::size_t d = theta.base_size();
  if (d > max_fast_base()) {
    throw ResourceError("xi base of " + std::to_string(d) +
                        " points exceeds the fast-check budget of " +
                        std::to_string(max_fast_base()) + " (RELALG_MAX_FAST_BASE)");
  }
  const LpnParams& params = xi.xi_params();
  const auto& alg = xi.algebra();
  const unsigned n = params.n;
  auto t = [&](unsigned i) { return alg.atom(lpn::t_atom(params, i)); };
  auto fail = [&](std::string condition, bool mirror, std::size_t u, std::size_t v,
                  Element x, Element y) {
    XiVerdict verdict;
    verdict.pass = false;
    verdict.certificate = XiCertificate{std::move(condition), mirror, u, v, x, y};
    return verdict;
  };

  const BitMatrix full = BitMatrix::full(d);
  const BitMatrix top = image(theta, theta.algebra().top());
  if (auto diff = top.first_difference(full)) {
    const Element big_t = alg.element(lpn::t_part(params));
    return fail("top-cover", false, diff->first, diff->second, big_t, big_t);
  }

  std::vector<BitMatrix> rows(n + 1, BitMatrix(d));
  const Partition& part = xi.partition();
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) rows[part.class_of(x, y)].set(x, y);
  }
  std::vector<BitMatrix> cols(n + 1);
  for (unsigned i = 1; i <= n; ++i) cols[i] = rows[i].transpose();

  const BitMatrix diag = BitMatrix::identity(d);
  if (n >= 2) {
    const BitMatrix div = image(theta, theta.algebra().diversity());
    if (auto diff = div.first_difference(diag.complement())) {
      const auto [u, v] = *diff;
      const Element id = alg.identity();
      if (rows[1].product(cols[2]).get(u, v)) {
        return fail("diversity-cover", false, u, v, t(1), t(2));
      }
      return fail("diversity-cover", false, u, v, alg.join(id, t(1)), alg.join(id, t(2)));
    }
  }

  for (unsigned i = 1; i <= n; ++i) {
    if (auto diff = rows[i].product(cols[i]).first_difference(full)) {
      return fail("same-class-witness", false, diff->first, diff->second, t(i), t(i));
    }
    if (auto diff = cols[i].product(rows[i]).first_difference(full)) {
      return fail("same-class-witness", true, d + diff->first, d + diff->second, t(i), t(i));
    }
  }

  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (auto diff = (rows[i].product(cols[j]) | diag).first_difference(full)) {
        return fail("cross-class-witness", false, diff->first, diff->second, t(i), t(j));
      }
      if (auto diff = (cols[i].product(rows[j]) | diag).first_difference(full)) {
        return fail("cross-class-witness", true, d + diff->first, d + diff->second, t(i),
                    t(j));
      }
    }
  }

  for (unsigned q = 0; q <= params.p; ++q) {
    const BitMatrix aq = image(theta, theta.algebra().atom(lpn::a_atom(q)));
    const Element a = alg.atom(lpn::a_atom(q));
    for (unsigned l = 1; l <= n; ++l) {
      if (auto diff = aq.product(rows[l]).first_difference(full)) {
        return fail("atom-class-witness", false, diff->first, d + diff->second, a, t(l));
      }
      if (auto diff = rows[l].product(aq).first_difference(full)) {
        return fail("atom-class-witness", true, diff->first, d + diff->second, t(l), a);
      }
    }
  }
  return {};
}

SearchReport search_weakrep(unsigned p, unsigned n, unsigned m, std::uint64_t seed_begin,
                            std::uint64_t seed_end, SearchMode mode, unsigned threads) {
  if (n == 0) throw ParameterError("search needs n >= 1");
  if (seed_end < seed_begin) throw UsageError("empty or reversed seed range");
  const auto theta = std::make_shared<const LabeledStructure>(build_power(build_affine(p), m));
  const FiniteRelationAlgebra algebra = build_lpn({p, n});
  SearchReport report{p, n, m, 2 * theta->base_size(), {}, std::nullopt};
  if (mode == SearchMode::Strict && report.base_size > max_verify_base()) {
    throw ResourceError("strict search over " + std::to_string(report.base_size) +
                        " points exceeds the verification budget of " +
                        std::to_string(max_verify_base()) + " (RELALG_MAX_BASE)");
  }
  const std::size_t count = static_cast<std::size_t>(seed_end - seed_begin);
  report.results.resize(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const std::uint64_t seed = seed_begin + i;
    const LabeledStructure xi = LabeledStructure::xi(
        algebra, theta, Partition::from_recipe({seed, n, theta->base_size()}));
    SeedResult& r = report.results[i];
    r.seed = seed;
    r.fast = check_xi_fast(xi);
    if (mode == SearchMode::Strict) r.strict = verify_weak(xi);
  });
  for (const auto& r : report.results) {
    if (r.pass()) {
      report.first_pass = r.seed;
      break;
    }
  }
  return report;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double denom = 1.0 + z * z / nt;
  const double center = (phat + z * z / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z * z / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

MonteCarloReport montecarlo(unsigned p, unsigned n, unsigned m, std::uint64_t trials,
                            std::uint64_t seed0, unsigned threads) {
  if (n == 0) throw ParameterError("montecarlo needs n >= 1");
  const auto theta = std::make_shared<const LabeledStructure>(build_power(build_affine(p), m));
  const FiniteRelationAlgebra algebra = build_lpn({p, n});
  std::vector<std::uint64_t> seeds(trials);
  SplitMix64 gen(seed0);
  for (auto& s : seeds) s = gen.next();
  std::vector<std::uint8_t> failed(trials, 0);
  parallel_for(trials, threads, [&](std::size_t i) {
    const LabeledStructure xi = LabeledStructure::xi(
        algebra, theta, Partition::from_recipe({seeds[i], n, theta->base_size()}));
    failed[i] = check_xi_fast(xi).pass ? 0 : 1;
  });

  MonteCarloReport report;
  report.p = p;
  report.n = n;
  report.m = m;
  report.seed0 = seed0;
  report.trials = trials;
  for (auto f : failed) report.failures += f;
  report.rate = trials == 0 ? 0.0 : static_cast<double>(report.failures) / static_cast<double>(trials);
  std::tie(report.wilson_low, report.wilson_high) = wilson_interval(report.failures, trials);
  report.bound = eval_bounds_for_m(p, n, m);
  report.vacuous = !(report.bound.failure_bound < 1.0);
  report.consistent = report.vacuous || report.wilson_low <= report.bound.failure_bound;
  return report;
}

}  // namespace relalg
