// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Timings are wall clock on the machine running the test.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/bounds.hpp"
#include "relalg/complexity.hpp"
#include "relalg/gf.hpp"
#include "relalg/lpn.hpp"
#include "relalg/structure.hpp"
#include "relalg/term.hpp"
#include "relalg/xi.hpp"

using namespace relalg;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_seconds,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.note << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    out.pass = false;
    out.note << "over the " << limit_seconds << " s limit; ";
  }
  if (!out.pass) ++failures;
  std::printf("%s %s  %s  (%.2f s) %s\n", id, out.pass ? "PASS" : "FAIL", title, secs,
              out.note.str().c_str());
  std::fflush(stdout);
}

bool unlabeled_in_power(const LabeledStructure& s, std::size_t u, std::size_t v) {
  const auto& alg = s.algebra();
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    if (image(s, alg.atom(a)).get(u, v)) return false;
  }
  return true;
}

// Both inequalities in the log domain, written out here independently of
// eval_bounds: d = p^(2m) and k = (p-1)^m given by their logarithms.
bool holds_in_logs(unsigned p, unsigned n, long double ln_d, long double ln_k) {
  const long double d = std::exp(ln_d);
  const long double k = std::exp(ln_k);
  const long double nn = static_cast<long double>(n) * n;
  const long double lhs1 = d * std::log1p(1.0L / (nn - 1));
  const long double rhs1 = std::log(4 * nn) + ln_d + std::log(d - 1);
  const long double lhs2 = k * std::log1p(1.0L / (n - 1));
  const long double rhs2 = std::log(4.0L * (p + 1) * n) + 2 * ln_d;
  return lhs1 > rhs1 && lhs2 > rhs2;
}

}  // namespace

int main() {
  criterion("AC1", "L(3,2): 7 atoms, 128 elements, every axiom family passes", 1.0,
            [](Outcome& o) {
              const auto alg = build_lpn({3, 2});
              o.require(alg.atom_count() == 7, "7 atoms");
              o.require(alg.element_count() == 128, "128 elements");
              const AxiomReport r = check_axioms(alg);
              o.require(r.all_pass(), "axioms");
              o.note << r.checks.size() << " families checked";
            });

  criterion("AC2", "affine planes q in {3,4,5,7,8,9} are full representations", 10.0,
            [](Outcome& o) {
              for (unsigned q : {3U, 4U, 5U, 7U, 8U, 9U}) {
                const auto s = build_affine(q);
                const std::string tag = "q=" + std::to_string(q);
                o.require(verify_full(s).pass, tag + " verify_full");
                const DegreeAudit audit = degree_audit(s);
                o.require(audit.verdict, tag + " degree audit verdict");
                for (const AtomDegree& deg : audit.degrees) {
                  if (deg.atom == 0) continue;
                  o.require(deg.min == q - 1 && deg.max == q - 1, tag + " a-degree q-1");
                }
              }
            });

  criterion("AC3", "doubled plane over GF(3) is a full representation on 18 points", 1.0,
            [](Outcome& o) {
              const auto s = build_doubled(3);
              o.require(s.base_size() == 18, "18 points");
              o.require(verify_full(s).pass, "verify_full");
            });

  criterion("AC4", "square of the GF(3) plane: weak passes, full fails on an unlabeled pair",
            30.0, [](Outcome& o) {
              const auto s = build_power(build_affine(3), 2);
              o.require(s.base_size() == 81, "81 points");
              o.require(verify_weak(s).pass, "verify_weak");
              const Verdict full = verify_full(s);
              o.require(!full.pass, "verify_full fails");
              o.require(full.points.has_value(), "certificate has points");
              if (full.points) {
                const auto [u, v] = *full.points;
                o.require(unlabeled_in_power(s, u, v), "certificate pair lies in no atom image");
                o.note << "clause " << full.clause << " at (" << u << "," << v << ")";
              }
            });

  criterion("AC5", "check_xi_fast agrees with verify_weak on 504 seeded xi instances", 0,
            [](Outcome& o) {
              struct Case {
                unsigned p, n, m;
              };
              std::vector<Case> cases;
              for (unsigned p : {3U, 4U, 5U}) {
                for (unsigned n : {2U, 3U}) {
                  for (unsigned m : {1U, 2U}) {
                    const std::uint64_t d = static_cast<std::uint64_t>(std::pow(p, 2 * m));
                    if (d <= 200) cases.push_back({p, n, m});
                  }
                }
              }
              const unsigned per_case = (504 + cases.size() - 1) / cases.size();
              unsigned total = 0;
              unsigned agree = 0;
              unsigned passes = 0;
              for (const Case& c : cases) {
                auto theta = std::make_shared<const LabeledStructure>(
                    build_power(build_affine(c.p), c.m));
                for (std::uint64_t seed = 0; seed < per_case; ++seed) {
                  const auto xi = build_xi(theta, c.n, seed);
                  const bool fast = check_xi_fast(xi).pass;
                  const bool weak = verify_weak(xi).pass;
                  ++total;
                  agree += fast == weak ? 1 : 0;
                  passes += weak ? 1 : 0;
                  if (fast != weak) {
                    o.require(false, "p=" + std::to_string(c.p) + " n=" + std::to_string(c.n) +
                                         " m=" + std::to_string(c.m) +
                                         " seed=" + std::to_string(seed));
                  }
                }
              }
              o.require(total >= 500, "at least 500 instances");
              o.note << agree << "/" << total << " agree over " << cases.size()
                     << " (p,n,m) cases, " << passes << " weak passes";
            });

  criterion("AC6", "bounds: log-domain verdicts match exact integers; sufficiency", 0,
            [](Outcome& o) {
              const std::vector<std::uint64_t> ds{2, 10, 40, 60, 80, 120, 300, 1000, 5000, 20000};
              const std::vector<std::uint64_t> ks{1, 5, 10, 15, 20, 25, 30, 40, 60, 100};
              unsigned points = 0;
              unsigned held1 = 0;
              unsigned held2 = 0;
              for (auto [p, n] : {std::pair{3U, 2U}, std::pair{5U, 3U}}) {
                for (std::uint64_t d : ds) {
                  for (std::uint64_t k : ks) {
                    const BoundReport logs = eval_bounds(p, n, d, k);
                    const ExactVerdicts exact = eval_bounds_exact(p, n, d, k);
                    ++points;
                    held1 += exact.ineq1 ? 1 : 0;
                    held2 += exact.ineq2 ? 1 : 0;
                    o.require(logs.ineq1.holds == exact.ineq1 && logs.ineq2.holds == exact.ineq2,
                              "grid point p=" + std::to_string(p) + " d=" + std::to_string(d) +
                                  " k=" + std::to_string(k));
                  }
                }
              }
              o.require(held1 > 0 && held1 < points && held2 > 0 && held2 < points,
                        "grid straddles both transitions");

              for (unsigned p : {3U, 5U, 7U, 9U}) {
                for (unsigned n : {2U, 3U}) {
                  const Thresholds t = sufficiency_thresholds(p, n);
                  const std::string tag = "p=" + std::to_string(p) + " n=" + std::to_string(n);
                  for (unsigned m = t.m_guaranteed; m < t.m_guaranteed + 30; ++m) {
                    const long double ln_d = 2.0L * m * std::log(static_cast<long double>(p));
                    const long double ln_k = m * std::log(static_cast<long double>(p - 1));
                    o.require(holds_in_logs(p, n, ln_d, ln_k), tag + " m=" + std::to_string(m));
                    if (ln_d < 63 * std::log(2.0L)) {
                      const BoundReport r = eval_bounds_for_m(p, n, m);
                      o.require(r.ineq1.holds && r.ineq2.holds,
                                tag + " eval_bounds_for_m m=" + std::to_string(m));
                    }
                  }
                }
              }
              for (unsigned n : {2U, 3U}) {
                const std::uint64_t floor1 = 16ULL * n * n;
                const std::uint64_t floor2 = 1 + (48ULL * n) * (48ULL * n);
                const Thresholds t = sufficiency_thresholds(3, n);
                o.require(t.p_ineq1 == floor1 && t.p_ineq2 == floor2,
                          "large-p thresholds n=" + std::to_string(n));
                const std::uint64_t start = std::max(floor1, floor2) + 1;
                for (std::uint64_t p = start; p < 4 * start; p += start / 7 + 1) {
                  const auto pp = static_cast<unsigned>(p);
                  const BoundReport r = eval_bounds(pp, n, p * p, p - 1);
                  o.require(r.ineq1.holds && r.ineq2.holds,
                            "d=p^2 at p=" + std::to_string(p) + " n=" + std::to_string(n));
                }
              }
              o.note << points << " grid points";
            });

  criterion("AC7", "seed sweep 0..63 at (p,n)=(3,2), m=1..3, deterministic", 0,
            [](Outcome& o) {
              unsigned found = 0;
              for (unsigned m : {1U, 2U, 3U}) {
                const SearchMode mode = m <= 2 ? SearchMode::Strict : SearchMode::Fast;
                const SearchReport a = search_weakrep(3, 2, m, 0, 64, mode, 1);
                const SearchReport b = search_weakrep(3, 2, m, 0, 64, mode, 2);
                o.require(a.results.size() == 64, "64 seeds");
                bool same = a.first_pass == b.first_pass && a.results.size() == b.results.size();
                for (std::size_t i = 0; same && i < a.results.size(); ++i) {
                  const auto& x = a.results[i];
                  const auto& y = b.results[i];
                  same = x.seed == y.seed && x.pass() == y.pass() &&
                         x.fast.certificate.has_value() == y.fast.certificate.has_value();
                  if (same && x.fast.certificate) {
                    const auto& cx = *x.fast.certificate;
                    const auto& cy = *y.fast.certificate;
                    same = cx.condition == cy.condition && cx.mirror == cy.mirror &&
                           cx.u == cy.u && cx.v == cy.v && cx.x.atoms() == cy.x.atoms() &&
                           cx.y.atoms() == cy.y.atoms();
                  }
                }
                o.require(same, "thread-independent verdicts at m=" + std::to_string(m));
                for (const SeedResult& r : a.results) {
                  if (!r.pass()) continue;
                  ++found;
                  if (m <= 2) o.require(r.strict && r.strict->pass, "strict re-verification");
                }
              }
              o.note << found << " passing seeds";
            });

  criterion("AC8", "gamma-generated subalgebras embed, 100 sets for each gamma 1..3", 60.0,
            [](Outcome& o) {
              for (unsigned gamma = 1; gamma <= 3; ++gamma) {
                const LpnParams params = choose_params(gamma);
                const auto alg = build_lpn(params);
                for (std::uint64_t seed = 0; seed < 100; ++seed) {
                  const auto gens = random_generators(alg, gamma, seed);
                  const GammaEmbedding e =
                      build_gamma_embedding(make_plan(params, gens), alg, gens);
                  o.require(e.check.ok, "gamma=" + std::to_string(gamma) +
                                            " seed=" + std::to_string(seed));
                }
              }
            });

  criterion("AC9", "equations: x1;x1 = x1 falsified, axioms valid, length 12", 0,
            [](Outcome& o) {
              const auto l32 = build_lpn({3, 2});
              o.require(falsify(parse_equation("x1 ; x1 = x1"), l32).status ==
                            FalsifyStatus::Falsified,
                        "witness for x1;x1 = x1");
              const char* axioms[] = {
                  "x1 + x2 = x2 + x1",
                  "x1 + (x2 + x3) = (x1 + x2) + x3",
                  "-(-x1 + -x2) + -(-x1 + x2) = x1",
                  "x1 & x2 = -(-x1 + -x2)",
                  "x1 ; (x2 ; x3) = (x1 ; x2) ; x3",
                  "x1 ; e = x1",
                  "e ; x1 = x1",
                  "x1 ; (x2 + x3) = x1 ; x2 + x1 ; x3",
                  "(x1 + x2)~ = x1~ + x2~",
                  "x1~~ = x1",
                  "(x1 ; x2)~ = x2~ ; x1~",
                  "x1~ ; -(x1 ; x2) + -x2 = -x2",
              };
              for (const char* a : axioms) {
                o.require(falsify(parse_equation(a), l32).status == FalsifyStatus::Valid, a);
              }
              o.require(equation_length(parse_equation("(x1 + x2) & x3 = x1 & x3 + x2 & x3")) ==
                            12,
                        "length 12");
            });

  criterion("AC10", "beta bound: value at 2^7, monotone, chain inequality for p <= 97", 0,
            [](Outcome& o) {
              o.require(std::abs(beta_lower_bound(128) - std::log2(3.0)) <= 1e-12, "beta(2^7)");
              double prev = beta_lower_bound(128);
              for (std::uint64_t m = 129; m < (std::uint64_t{1} << 40); m += m / 3) {
                const double b = beta_lower_bound(m);
                o.require(b > prev, "monotone at m=" + std::to_string(m));
                prev = b;
              }
              unsigned checked = 0;
              for (unsigned p = 3; p <= 97; p += 2) {
                if (!is_prime_power(p)) continue;
                const unsigned e = chain_exponent(p);
                o.require(e == (3 * p + 5 + 1) / 2, "exponent is ceil((3p+5)/2)");
                const double b = e < 64 ? beta_lower_bound(std::uint64_t{1} << e)
                                        : beta_lower_bound_log2(e);
                o.require(b < std::log2(p + 1.0), "chain inequality p=" + std::to_string(p));
                ++checked;
              }
              o.note << checked << " odd prime powers";
            });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
