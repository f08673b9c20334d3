#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>

#include "relalg/bounds.hpp"
#include "relalg/errors.hpp"
#include "relalg/lpn.hpp"
#include "relalg/splitmix.hpp"
#include "relalg/xi.hpp"

using namespace relalg;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

// Second finalizer, written from the reference stream generator with
// explicit wrap-around through 128-bit products.
std::uint64_t mix64_reference(std::uint64_t z) {
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b);
  };
  z = mul(z ^ (z >> 30), 0xBF58476D1CE4E5B9ULL);
  z = mul(z ^ (z >> 27), 0x94D049BB133111EBULL);
  return z ^ (z >> 31);
}

std::shared_ptr<const LabeledStructure> shared(LabeledStructure s) {
  return std::make_shared<const LabeledStructure>(std::move(s));
}

// Two affine planes over GF(3) with no labels between them: a weak
// representation of L(3,0) whose top is not all of D x D.
LabeledStructure two_planes() {
  const auto plane = build_affine(3);
  std::vector<std::int16_t> labels(18 * 18, LabeledStructure::kUnlabeled);
  for (std::size_t u = 0; u < 9; ++u) {
    for (std::size_t v = 0; v < 9; ++v) {
      if (u == v) continue;
      const auto a = static_cast<std::int16_t>(*plane.label(u, v));
      labels[u * 18 + v] = a;
      labels[(9 + u) * 18 + 9 + v] = a;
    }
  }
  return LabeledStructure::atom_labeling(plane.algebra(), 18, labels);
}

// The composition law for (x, y) at the certificate points, recomputed
// from images.
bool law_fails_at(const LabeledStructure& xi, const XiCertificate& c) {
  const auto& alg = xi.algebra();
  const BitMatrix lhs = image(xi, alg.compose(c.x, c.y));
  const BitMatrix rhs = image(xi, c.x).product(image(xi, c.y));
  return lhs.get(c.u, c.v) != rhs.get(c.u, c.v);
}

cpp_rational rpow(cpp_rational base, unsigned e) {
  cpp_rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

TEST_CASE("mix64 matches a second implementation") {
  SplitMix64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t z = rng.next();
    CHECK(mix64(z) == mix64_reference(z));
  }
  static_assert(mix64(0) == 0);
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(zero.next() == 0x06C45D188009454FULL);
}

TEST_CASE("partition golden vector") {
  const PartitionRecipe r{1, 2, 9};
  const std::vector<unsigned> golden{1, 2, 2, 2, 1, 1, 2, 2, 1};
  for (unsigned e = 0; e < 9; ++e) {
    CHECK(r.class_of(0, e) == golden[e]);
    CHECK(1 + mix64_reference(1 ^ ((e + 1) * kGoldenGamma)) % 2 == golden[e]);
  }
  const Partition p = Partition::from_recipe(r);
  for (unsigned e = 0; e < 9; ++e) CHECK(p.class_of(0, e) == golden[e]);
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition::explicit_classes(2, 2, {1, 2, 3, 1}), ParameterError);
  CHECK_THROWS_AS(Partition::explicit_classes(2, 2, {1, 2, 1}), ParameterError);
  CHECK_THROWS_AS(build_xi(shared(build_affine(3)), 0, std::uint64_t{1}), ParameterError);
  CHECK_THROWS_AS(build_xi(shared(build_doubled(3)), 2, std::uint64_t{1}), ParameterError);
}

TEST_CASE("xi images") {
  const auto theta = shared(build_affine(3));
  const auto xi = build_xi(theta, 2, std::uint64_t{5});
  const auto& alg = xi.algebra();
  CHECK(xi.base_size() == 18);

  const BitMatrix a0 = image(xi, alg.atom(lpn::a_atom(0)));
  const BitMatrix inner = image(*theta, theta->algebra().atom(lpn::a_atom(0)));
  for (std::size_t u = 0; u < 18; ++u) {
    for (std::size_t v = 0; v < 18; ++v) {
      const bool same_side = (u < 9) == (v < 9);
      CHECK(a0.get(u, v) == (same_side && inner.get(u % 9, v % 9)));
    }
  }
  const BitMatrix t1 = image(xi, alg.atom(lpn::t_atom({3, 2}, 1)));
  const BitMatrix t2 = image(xi, alg.atom(lpn::t_atom({3, 2}, 2)));
  CHECK_FALSE((t1 & t2).any());
  CHECK(t1.is_symmetric());
  CHECK((t1 | t2).count() == 2 * 81);
}

TEST_CASE("xi with one class is the doubled plane") {
  for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
    const auto xi = build_xi(shared(build_affine(3)), 1, seed);
    const auto doubled = build_doubled(3);
    for (AtomSet x = 0; x < 64; ++x) {
      CHECK(image(xi, xi.algebra().element(x)) ==
            image(doubled, doubled.algebra().element(x)));
    }
    CHECK(check_xi_fast(xi).pass);
    CHECK(verify_weak(xi).pass);
    CHECK(verify_full(xi).pass);
  }
  CHECK(verify_full(build_xi(shared(build_affine(4)), 1, std::uint64_t{3})).pass);
}

TEST_CASE("fast check agrees with the generic verifier and certificates replay") {
  const auto theta1 = shared(build_affine(3));
  const auto theta2 = shared(build_power(build_affine(3), 2));
  int checked = 0;
  for (const auto& theta : {theta1, theta2}) {
    for (unsigned n : {1U, 2U, 3U}) {
      for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto xi = build_xi(theta, n, seed);
        const XiVerdict fast = check_xi_fast(xi);
        const Verdict slow = verify_weak(xi);
        CAPTURE(n);
        CAPTURE(seed);
        CHECK(fast.pass == slow.pass);
        if (!fast.pass) {
          REQUIRE(fast.certificate.has_value());
          CHECK(law_fails_at(xi, *fast.certificate));
          CHECK_FALSE(fast.describe(xi.algebra()).empty());
        }
        ++checked;
      }
    }
  }
  CHECK(checked == 36);
}

TEST_CASE("explicit partitions") {
  const auto theta = shared(build_affine(3));
  // Class 1 on the "diagonal" (x, x'), class 2 elsewhere.
  std::vector<std::uint8_t> classes(81, 2);
  for (std::size_t x = 0; x < 9; ++x) classes[x * 9 + x] = 1;
  const auto xi = build_xi(theta, 2, Partition::explicit_classes(9, 2, classes));
  const XiVerdict fast = check_xi_fast(xi);
  CHECK(fast.pass == verify_weak(xi).pass);
  CHECK_FALSE(fast.pass);
  CHECK(law_fails_at(xi, *fast.certificate));
}

TEST_CASE("a base whose top is not full fails top-cover") {
  const auto theta = shared(two_planes());
  REQUIRE(verify_weak(*theta).pass);
  REQUIRE_FALSE(verify_full(*theta).pass);
  for (unsigned n : {1U, 2U}) {
    const auto xi = build_xi(theta, n, std::uint64_t{3});
    const XiVerdict fast = check_xi_fast(xi);
    REQUIRE_FALSE(fast.pass);
    CHECK(fast.certificate->condition == "top-cover");
    CHECK(fast.certificate->u < 9);
    CHECK(fast.certificate->v >= 9);
    CHECK(law_fails_at(xi, *fast.certificate));
    CHECK_FALSE(verify_weak(xi).pass);
  }
}

TEST_CASE("the fast check honours its budget") {
  const auto xi = build_xi(shared(build_affine(3)), 2, std::uint64_t{1});
  CHECK_THROWS_AS(check_xi_fast(build_affine(3)), UsageError);
  CHECK(check_xi_fast(xi).certificate.has_value());
  ::setenv("RELALG_MAX_FAST_BASE", "8", 1);
  CHECK_THROWS_AS(check_xi_fast(xi), ResourceError);
  ::unsetenv("RELALG_MAX_FAST_BASE");
}

TEST_CASE("search is deterministic") {
  const SearchReport a = search_weakrep(3, 2, 1, 10, 20, SearchMode::Strict, 1);
  const SearchReport b = search_weakrep(3, 2, 1, 10, 20, SearchMode::Strict, 3);
  REQUIRE(a.results.size() == 10);
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].seed == 10 + i);
    CHECK(a.results[i].fast.pass == b.results[i].fast.pass);
    CHECK(a.results[i].fast.certificate->u == b.results[i].fast.certificate->u);
    CHECK(a.results[i].fast.certificate->condition == b.results[i].fast.certificate->condition);
    CHECK(a.results[i].strict->pass == a.results[i].fast.pass);
  }
  const SearchReport one = search_weakrep(3, 1, 1, 0, 5, SearchMode::Fast, 1);
  CHECK(one.first_pass == std::optional<std::uint64_t>{0});
  for (const auto& r : one.results) CHECK(r.pass());
}

TEST_CASE("bounds at p=3, n=2, m=1 against exact rationals") {
  const BoundReport r = eval_bounds_for_m(3, 2, 1);
  CHECK(r.d == 9);
  CHECK(r.k == 2);
  CHECK(r.ineq1.applicable);
  CHECK_FALSE(r.ineq1.holds);
  CHECK_FALSE(r.ineq2.holds);
  CHECK(std::exp(r.ineq1.lhs_log) == doctest::Approx(13.3183).epsilon(1e-4));

  const unsigned p = 3, n = 2, d = 9, k = 2;
  const cpp_rational bound =
      cpp_rational(2 * d * (d - 1) * n * n) * rpow(cpp_rational(n * n - 1, n * n), d) +
      cpp_rational(2 * (p + 1) * d * d * n) * rpow(cpp_rational(n - 1, n), k);
  CHECK(r.failure_bound == doctest::Approx(static_cast<double>(bound)).epsilon(1e-12));
  const cpp_rational lhs1 = rpow(cpp_rational(n * n, n * n - 1), d);
  CHECK((lhs1 > 4 * n * n * d * (d - 1)) == r.ineq1.holds);
  const cpp_rational lhs2 = rpow(cpp_rational(n, n - 1), k);
  CHECK((lhs2 > 4 * (p + 1) * n * d * d) == r.ineq2.holds);
}

TEST_CASE("n = 1 makes the inequalities inapplicable") {
  const BoundReport r = eval_bounds(3, 1, 9, 2);
  CHECK_FALSE(r.ineq1.applicable);
  CHECK_FALSE(r.ineq2.applicable);
  CHECK(r.failure_bound == 0.0);
}

TEST_CASE("least m for p=3, n=2") {
  CHECK(minimal_m(3, 2) == std::optional<unsigned>{6});
  // Independent exact scan: m = 5 fails, m = 6 holds.
  for (unsigned m : {5U, 6U}) {
    const std::uint64_t d = static_cast<std::uint64_t>(std::pow(3, 2 * m));
    const std::uint64_t k = std::uint64_t{1} << m;
    const cpp_int one_lhs = boost::multiprecision::pow(cpp_int(4), static_cast<unsigned>(d));
    const cpp_int one_rhs = cpp_int(16) * d * (d - 1) *
                            boost::multiprecision::pow(cpp_int(3), static_cast<unsigned>(d));
    const cpp_int two_lhs = boost::multiprecision::pow(cpp_int(2), static_cast<unsigned>(k));
    const cpp_int two_rhs = cpp_int(32) * d * d;
    const bool both = one_lhs > one_rhs && two_lhs > two_rhs;
    CHECK(both == (m == 6));
  }
}

TEST_CASE("sufficiency thresholds") {
  const Thresholds t = sufficiency_thresholds(3, 2);
  CHECK(t.m_ineq1 == doctest::Approx(std::log(64.0) / std::log(3.0)));
  CHECK(t.m_ineq2 == doctest::Approx(2 * std::log2(48.0)));
  CHECK(t.m_ineq2_cube == doctest::Approx(std::log2(32.0) / 3));
  CHECK(t.m_guaranteed == 12);
  CHECK(t.p_ineq1 == 64);
  CHECK(t.p_ineq2 == 1 + 96 * 96);
  for (unsigned m = t.m_guaranteed; m < t.m_guaranteed + 3; ++m) {
    const BoundReport r = eval_bounds_for_m(3, 2, m);
    CHECK(r.ineq1.holds);
    CHECK(r.ineq2.holds);
  }
  CHECK_THROWS_AS(sufficiency_thresholds(3, 1), ParameterError);
}

TEST_CASE("Wilson interval") {
  const auto [lo0, hi0] = wilson_interval(0, 10);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == doctest::Approx(0.27753).epsilon(1e-4));
  const auto [lo, hi] = wilson_interval(50, 50);
  CHECK(lo == doctest::Approx(0.92865).epsilon(1e-4));
  CHECK(hi == 1.0);
}

TEST_CASE("Monte Carlo") {
  const MonteCarloReport one = montecarlo(3, 1, 1, 20, 5, 2);
  CHECK(one.failures == 0);
  CHECK(one.rate == 0.0);
  CHECK(one.consistent);

  const MonteCarloReport two = montecarlo(3, 2, 1, 20, 5, 1);
  CHECK(two.vacuous);
  CHECK(two.consistent);
  CHECK(two.failures == montecarlo(3, 2, 1, 20, 5, 4).failures);
}
