#include <cmath>
#include <iostream>
#include <memory>

#include "cli.hpp"
#include "relalg/errors.hpp"
#include "relalg/io.hpp"
#include "relalg/xi.hpp"

namespace relalg::cli {

namespace {

Json xi_json(const XiVerdict& v, const FiniteRelationAlgebra& alg) {
  Json j;
  j["verdict"] = v.pass ? "PASS" : "FAIL";
  if (v.certificate) {
    const auto& c = *v.certificate;
    j["condition"] = c.condition;
    j["mirror"] = c.mirror;
    j["points"] = Json::array({c.u, c.v});
    j["x"] = alg.format(c.x);
    j["y"] = alg.format(c.y);
  }
  return j;
}

// Doubles are printed with a fixed shape so that repeated runs match byte
// for byte; JSON cannot hold infinities.
Json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

Json inequality_json(const InequalityVerdict& v) {
  Json j;
  if (!v.applicable) {
    j["applicable"] = false;
    return j;
  }
  j["holds"] = v.holds;
  j["lhs_ln"] = number(v.lhs_log);
  j["rhs_ln"] = number(v.rhs_log);
  if (v.decided_exactly) j["decided_exactly"] = true;
  return j;
}

Json bounds_json(const BoundReport& r) {
  Json j;
  j["p"] = r.p;
  j["n"] = r.n;
  if (r.m) j["m"] = *r.m;
  j["d"] = r.d;
  j["k"] = r.k;
  j["ineq1"] = inequality_json(r.ineq1);
  j["ineq2"] = inequality_json(r.ineq2);
  j["failure_bound"] = number(r.failure_bound);
  j["mode"] = r.mode;
  return j;
}

// Every seed builds its own copy of L(p,n), so certificates are re-based onto
// `alg` before printing.
std::string describe(const XiVerdict& v, const FiniteRelationAlgebra& alg) {
  if (!v.certificate) return v.describe(alg);
  XiVerdict copy = v;
  copy.certificate->x = alg.element(v.certificate->x.atoms());
  copy.certificate->y = alg.element(v.certificate->y.atoms());
  return copy.describe(alg);
}

}  // namespace

void register_random_commands(CLI::App& app, const Context& ctx, int& status) {
  {
    struct Opts {
      std::string theta;
      unsigned n = 2;
      std::uint64_t seed = 0;
      std::string out;
      bool check = false;
      bool generic = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "xi", "Random L(p,n) structure over a structure for L(p,0) (exit 1 if --check fails)");
    sub->add_option("structure", o->theta, "Structure for L(p,0)")->required();
    sub->add_option("--n", o->n, "Number of t-atoms")->required();
    sub->add_option("--seed", o->seed, "Partition seed")->required();
    sub->add_option("-o,--output", o->out, "Write the structure (and its .ra) here");
    sub->add_flag("--check", o->check, "Run the fast weak-representation check");
    sub->add_flag("--generic", o->generic, "Also run the generic verify_weak");
    sub->callback([o, &ctx, &status] {
      auto theta = std::make_shared<const LabeledStructure>(load_structure(o->theta));
      const LabeledStructure xi = build_xi(theta, o->n, o->seed);
      Json j;
      const LpnParams params = xi.xi_params();
      j["algebra"] = "L(" + std::to_string(params.p) + "," + std::to_string(params.n) + ")";
      j["seed"] = o->seed;
      j["inner_base"] = theta->base_size();
      j["base"] = xi.base_size();
      if (!o->out.empty()) {
        const std::string ra = sibling_algebra(o->out);
        save_algebra(ra, xi.algebra());
        StructureFile f;
        f.kind = StructureKind::Xi;
        f.algebra_path = relative_to_output(ra, o->out);
        f.inner_path = relative_to_output(o->theta, o->out);
        f.n = o->n;
        f.seed = o->seed;
        save_text(o->out, structure_file_text(f));
        j["algebra_file"] = ra;
        j["written"] = o->out;
      }
      bool ok = true;
      if (o->check || o->generic) {
        const XiVerdict fast = check_xi_fast(xi);
        j["fast"] = xi_json(fast, xi.algebra());
        ok = fast.pass;
      }
      if (o->generic) {
        VerifyOptions opts;
        opts.threads = ctx.threads;
        const Verdict v = verify_weak(xi, opts);
        j["generic"] = verdict_json(v, xi.algebra());
        ok = ok && v.pass;
      }
      emit(ctx, j, std::cout);
      status = ok ? kOk : kFail;
    });
  }
  {
    struct Opts {
      unsigned p = 3;
      unsigned n = 2;
      unsigned m = 1;
      std::uint64_t from = 0;
      std::uint64_t count = 16;
      bool strict = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "search",
        "Try partition seeds for Xi over the m-th power of the affine plane of order p. Exit 1 "
        "only if the fast and generic checks disagree");
    sub->add_option("--p", o->p, "Prime power")->required();
    sub->add_option("--n", o->n, "Number of t-atoms")->required();
    sub->add_option("--m", o->m, "Power of the affine plane");
    sub->add_option("--from", o->from, "First seed");
    sub->add_option("--count", o->count, "Number of seeds");
    sub->add_flag("--strict", o->strict, "Confirm every seed with the generic verifier");
    sub->callback([o, &ctx, &status] {
      const SearchReport r = search_weakrep(o->p, o->n, o->m, o->from, o->from + o->count,
                                            o->strict ? SearchMode::Strict : SearchMode::Fast,
                                            ctx.threads);
      const FiniteRelationAlgebra alg = build_lpn({o->p, o->n});
      Json j;
      j["p"] = r.p;
      j["n"] = r.n;
      j["m"] = r.m;
      j["base"] = r.base_size;
      j["mode"] = o->strict ? "strict" : "fast";
      j["seeds"] = Json::array({o->from, o->from + o->count});
      bool agree = true;
      std::uint64_t passes = 0;
      Json results = Json::array();
      for (const auto& s : r.results) {
        Json e;
        e["seed"] = s.seed;
        e["fast"] = describe(s.fast, alg);
        if (s.strict) {
          e["generic"] = s.strict->pass ? "PASS" : "FAIL " + s.strict->clause;
          if (s.strict->pass != s.fast.pass) {
            agree = false;
            e["disagreement"] = true;
          }
        }
        passes += s.pass() ? 1 : 0;
        results.push_back(e);
      }
      j["results"] = results;
      j["passing_seeds"] = passes;
      if (r.first_pass) j["first_pass"] = *r.first_pass;
      else j["first_pass"] = nullptr;
      if (o->strict) j["checkers_agree"] = agree;
      emit(ctx, j, std::cout);
      status = agree ? kOk : kFail;
    });
  }
  {
    struct Opts {
      unsigned p = 3;
      unsigned n = 2;
      unsigned m = 0;
      std::uint64_t d = 0;
      std::uint64_t k = 0;
      bool exact = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "bounds", "Evaluate the two sufficient inequalities and the failure bound");
    sub->add_option("--p", o->p)->required();
    sub->add_option("--n", o->n)->required();
    auto* m = sub->add_option("--m", o->m, "Use d = p^(2m), k = (p-1)^m");
    auto* d = sub->add_option("--d", o->d, "Base size");
    auto* k = sub->add_option("--k", o->k, "Least a-atom degree");
    m->excludes(d)->excludes(k);
    d->needs(k);
    k->needs(d);
    sub->add_flag("--exact", o->exact, "Also decide both inequalities with exact integers");
    sub->callback([o, &ctx, &status] {
      if (o->m == 0 && o->d == 0) throw UsageError("bounds needs --m or --d/--k");
      const BoundReport r =
          o->m != 0 ? eval_bounds_for_m(o->p, o->n, o->m) : eval_bounds(o->p, o->n, o->d, o->k);
      Json j = bounds_json(r);
      if (o->exact) {
        const ExactVerdicts e = eval_bounds_exact(r.p, r.n, r.d, r.k);
        j["exact"] = Json{{"ineq1", e.ineq1}, {"ineq2", e.ineq2}};
      }
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    struct Opts {
      unsigned p = 3;
      unsigned n = 2;
      unsigned max_m = 40;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "thresholds", "Sufficient exponents m and orders p, and the least m that works");
    sub->add_option("--p", o->p)->required();
    sub->add_option("--n", o->n)->required();
    sub->add_option("--max-m", o->max_m, "Search limit for the least m");
    sub->callback([o, &ctx, &status] {
      const Thresholds t = sufficiency_thresholds(o->p, o->n);
      Json j;
      j["p"] = t.p;
      j["n"] = t.n;
      j["m_ineq1"] = number(t.m_ineq1);
      j["m_ineq2"] = number(t.m_ineq2);
      j["m_ineq2_cube"] = number(t.m_ineq2_cube);
      j["m_guaranteed"] = t.m_guaranteed;
      j["p_ineq1"] = t.p_ineq1;
      j["p_ineq2"] = t.p_ineq2;
      if (const auto m = minimal_m(o->p, o->n, o->max_m)) j["minimal_m"] = *m;
      else j["minimal_m"] = nullptr;
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    struct Opts {
      unsigned p = 3;
      unsigned n = 2;
      unsigned m = 1;
      std::uint64_t trials = 100;
      std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "montecarlo",
        "Empirical failure rate of the random construction against the analytic bound");
    sub->add_option("--p", o->p)->required();
    sub->add_option("--n", o->n)->required();
    sub->add_option("--m", o->m);
    sub->add_option("--trials", o->trials);
    sub->add_option("--seed", o->seed, "Master seed");
    sub->callback([o, &ctx, &status] {
      const MonteCarloReport r = montecarlo(o->p, o->n, o->m, o->trials, o->seed, ctx.threads);
      Json j;
      j["p"] = r.p;
      j["n"] = r.n;
      j["m"] = r.m;
      j["seed"] = r.seed0;
      j["trials"] = r.trials;
      j["failures"] = r.failures;
      j["failure_rate"] = number(r.rate);
      j["wilson95"] = Json::array({number(r.wilson_low), number(r.wilson_high)});
      j["analytic_bound"] = number(r.bound.failure_bound);
      j["bound_vacuous"] = r.vacuous;
      j["consistent"] = r.consistent;
      emit(ctx, j, std::cout);
      status = r.consistent ? kOk : kFail;
    });
  }
}

}  // namespace relalg::cli
