#include <iostream>
#include <memory>
#include <optional>

#include "cli.hpp"
#include "relalg/complexity.hpp"
#include "relalg/errors.hpp"

namespace relalg::cli {

namespace {

std::string lpn_name(const LpnParams& p) {
  return "L(" + std::to_string(p.p) + "," + std::to_string(p.n) + ")";
}

// Generators come either from --gamma/--seed (random, in the algebra chosen
// for gamma) or from --p/--n plus explicit --gen elements.
struct GenOpts {
  unsigned gamma = 0;
  std::uint64_t seed = 0;
  unsigned p = 0;
  unsigned n = 0;
  std::vector<std::string> gens;

  void add_to(CLI::App* sub) {
    sub->add_option("--gamma", gamma, "Number of random generators");
    sub->add_option("--seed", seed, "Seed for the random generators");
    sub->add_option("--p", p, "Explicit algebra L(p,n) for --gen");
    sub->add_option("--n", n);
    sub->add_option("--gen", gens, "Generator such as a0+a3+t1 (repeatable)");
  }
};

struct Generators {
  LpnParams params;
  FiniteRelationAlgebra algebra;
  std::vector<Element> gens;
  bool random = false;
};

Generators resolve(const GenOpts& o) {
  if (!o.gens.empty()) {
    if (o.p == 0) throw UsageError("--gen needs --p and --n");
    const LpnParams params{o.p, o.n};
    FiniteRelationAlgebra alg = build_lpn(params);
    std::vector<Element> gens;
    for (const auto& g : o.gens) gens.push_back(alg.parse_element(g));
    return {params, alg, gens, false};
  }
  if (o.gamma == 0) throw UsageError("give --gamma (random generators) or --gen");
  const LpnParams params = o.p != 0 ? LpnParams{o.p, o.n} : choose_params(o.gamma);
  FiniteRelationAlgebra alg = build_lpn(params);
  auto gens = random_generators(alg, o.gamma, o.seed);
  return {params, alg, gens, true};
}

Json generators_json(const Generators& g, const GenOpts& o) {
  Json j;
  j["algebra"] = lpn_name(g.params);
  if (g.random) j["seed"] = o.seed;
  Json list = Json::array();
  for (const auto& e : g.gens) list.push_back(g.algebra.format(e));
  j["generators"] = list;
  return j;
}

}  // namespace

void register_complexity_commands(CLI::App& app, const Context& ctx, int& status) {
  {
    auto gamma = std::make_shared<unsigned>(1);
    auto* sub = app.add_subcommand(
        "params", "Algebra L(p,n) used against gamma-generated subalgebras");
    sub->add_option("--gamma", *gamma, "Number of generators")->required();
    sub->callback([gamma, &ctx, &status] {
      const LpnParams params = choose_params(*gamma);
      Json j;
      j["gamma"] = *gamma;
      j["p"] = params.p;
      j["n"] = params.n;
      j["atoms"] = params.atom_count();
      j["elements"] = algebra_size(params.p, params.n).str();
      j["chain_exponent"] = chain_exponent(params.p);
      j["non_representable_2n_gt_p"] = notrap_flag(params);
      j["default_target_p"] = 2 * params.p + 1;
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    auto o = std::make_shared<GenOpts>();
    auto* sub = app.add_subcommand(
        "pigeonhole", "Two a-atoms that no generator separates");
    o->add_to(sub);
    sub->callback([o, &ctx, &status] {
      const Generators g = resolve(*o);
      Json j = generators_json(g, *o);
      const auto [i, k] = pigeonhole_pair(g.params, g.gens);
      j["pair"] = Json::array({"a" + std::to_string(i), "a" + std::to_string(k)});
      Json pattern = Json::array();
      for (const auto& e : g.gens) {
        pattern.push_back(e.contains(lpn::a_atom(i)) ? "both" : "neither");
      }
      j["pattern"] = pattern;
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    auto o = std::make_shared<GenOpts>();
    auto target = std::make_shared<unsigned>(0);
    auto* sub = app.add_subcommand(
        "embed",
        "Embed the subalgebra generated by the generators into L(p',n) via a fused algebra");
    o->add_to(sub);
    sub->add_option("--target", *target, "p' (default 2p+1)");
    sub->callback([o, target, &ctx, &status] {
      const Generators g = resolve(*o);
      const GammaWitnessPlan plan = make_plan(g.params, g.gens, *target);
      const GammaEmbedding emb = build_gamma_embedding(plan, g.algebra, g.gens);
      Json j = generators_json(g, *o);
      j["fused"] = "a" + std::to_string(plan.fusion.i) + "a" + std::to_string(plan.fusion.j);
      j["target"] = lpn_name({plan.target_p, plan.params.n});
      j["subalgebra_atoms"] = emb.subalgebra.atom_count();
      Json map = Json::object();
      for (const auto& [from, to] : emb.map) map[g.algebra.format(from)] = emb.target.format(to);
      j["map"] = map;
      j["verdict"] = emb.check.ok ? "PASS" : "FAIL";
      if (!emb.check.ok) {
        j["law"] = emb.check.law;
        j["certificate"] = emb.check.certificate;
      }
      emit(ctx, j, std::cout);
      status = emb.check.ok ? kOk : kFail;
    });
  }
  {
    struct Opts {
      std::uint64_t m = 0;
      double log2_m = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "beta", "Lower bound on the equational complexity function at m (m >= 128)");
    auto* m = sub->add_option("--m", o->m, "Argument");
    auto* l = sub->add_option("--log2-m", o->log2_m, "log2 of the argument, for huge m");
    m->excludes(l);
    sub->callback([o, m, l, &ctx, &status] {
      Json j;
      double bound = 0;
      if (m->count() > 0) {
        j["m"] = o->m;
        bound = beta_lower_bound(o->m);
      } else if (l->count() > 0) {
        j["log2_m"] = o->log2_m;
        bound = beta_lower_bound_log2(o->log2_m);
      } else {
        throw UsageError("beta needs --m or --log2-m");
      }
      j["lower_bound"] = bound;
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
}

}  // namespace relalg::cli
