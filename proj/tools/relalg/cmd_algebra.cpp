#include <iostream>
#include <memory>

#include "cli.hpp"
#include "relalg/io.hpp"
#include "relalg/lpn.hpp"
#include "relalg/subalgebra.hpp"
#include "relalg/term.hpp"

namespace relalg::cli {

namespace {

Json algebra_summary(const FiniteRelationAlgebra& alg) {
  Json j;
  j["atoms"] = alg.atom_count();
  j["atom_names"] = alg.atom_names();
  j["elements"] = alg.element_count();
  j["symmetric"] = alg.is_symmetric();
  j["integral"] = alg.is_integral();
  return j;
}

std::vector<Element> parse_elements(const FiniteRelationAlgebra& alg,
                                    const std::vector<std::string>& texts) {
  std::vector<Element> out;
  for (const auto& t : texts) out.push_back(alg.parse_element(t));
  return out;
}

}  // namespace

void register_algebra_commands(CLI::App& app, const Context& ctx, int& status) {
  {
    struct Opts {
      unsigned p = 3;
      unsigned n = 0;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("construct", "Build L(p,n) and write it as an algebra file");
    sub->add_option("--p", o->p, "Number of a-atoms minus one (p >= 3)")->required();
    sub->add_option("--n", o->n, "Number of t-atoms")->required();
    sub->add_option("-o,--output", o->out, "Output file (default: print the file)");
    sub->callback([o, &ctx, &status] {
      const LpnParams params{o->p, o->n};
      const FiniteRelationAlgebra alg = build_lpn(params);
      if (o->out.empty() && !ctx.json) {
        std::cout << algebra_to_text(alg);
        status = kOk;
        return;
      }
      if (!o->out.empty()) save_algebra(o->out, alg);
      Json j;
      j["algebra"] = "L(" + std::to_string(o->p) + "," + std::to_string(o->n) + ")";
      j.update(algebra_summary(alg));
      j["non_representable_2n_gt_p"] = notrap_flag(params);
      if (!o->out.empty()) j["written"] = o->out;
      else j["text"] = algebra_to_text(alg);
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    struct Opts {
      unsigned p = 3;
      unsigned n = 0;
      unsigned i = 0;
      unsigned j = 1;
      unsigned q = 0;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "fuse", "Build the fused algebra L^{ij}(p,n), check its inclusion and optionally its "
                "embedding into L(q,n)");
    sub->add_option("--p", o->p)->required();
    sub->add_option("--n", o->n)->required();
    sub->add_option("--i", o->i, "First fused index")->required();
    sub->add_option("--j", o->j, "Second fused index")->required();
    sub->add_option("--q", o->q, "Embed into L(q,n), q >= p");
    sub->add_option("-o,--output", o->out, "Write the fused algebra here");
    sub->callback([o, &ctx, &status] {
      const LpnParams params{o->p, o->n};
      const FusionSpec spec{o->i, o->j};
      Json j;
      bool ok = true;
      auto check_json = [](const EmbeddingCheck& c) {
        Json e;
        e["verdict"] = c.ok ? "PASS" : "FAIL";
        if (!c.ok) {
          e["law"] = c.law;
          e["certificate"] = c.certificate;
        }
        return e;
      };
      auto map_json = [](const FiniteRelationAlgebra& from, const FiniteRelationAlgebra& to,
                         const AtomMap& map) {
        Json m = Json::object();
        for (const auto& [k, v] : map) m[from.format(k)] = to.format(v);
        return m;
      };
      if (o->q != 0) {
        const FusionEmbedding emb = fusion_embedding(params, spec, o->q);
        j["fused"] = algebra_summary(emb.fused.algebra);
        j["inclusion"] = check_json(emb.fused.inclusion_check);
        j["target"] = "L(" + std::to_string(o->q) + "," + std::to_string(o->n) + ")";
        j["map"] = map_json(emb.fused.algebra, emb.target, emb.map);
        j["embedding"] = check_json(emb.check);
        ok = emb.fused.inclusion_check.ok && emb.check.ok;
        if (!o->out.empty()) save_algebra(o->out, emb.fused.algebra);
      } else {
        const FusedAlgebra fused = build_fused(params, spec);
        j["fused"] = algebra_summary(fused.algebra);
        j["inclusion_map"] = map_json(fused.algebra, fused.parent, fused.inclusion);
        j["inclusion"] = check_json(fused.inclusion_check);
        ok = fused.inclusion_check.ok;
        if (!o->out.empty()) save_algebra(o->out, fused.algebra);
      }
      if (!o->out.empty()) j["written"] = o->out;
      emit(ctx, j, std::cout);
      status = ok ? kOk : kFail;
    });
  }
  {
    auto file = std::make_shared<std::string>();
    auto* sub = app.add_subcommand("check-axioms", "Check the relation algebra axioms");
    sub->add_option("algebra", *file, "Algebra file")->required();
    sub->callback([file, &ctx, &status] {
      const FiniteRelationAlgebra alg = load_algebra(*file);
      const AxiomReport report = check_axioms(alg);
      Json j;
      j["algebra"] = *file;
      j.update(algebra_summary(alg));
      j["commutative"] = report.commutative;
      Json checks = Json::array();
      for (const auto& c : report.checks) {
        Json e;
        e["family"] = c.family;
        e["result"] = c.by_construction ? "holds by construction" : (c.passed ? "pass" : "FAIL");
        if (!c.passed) e["certificate"] = c.certificate;
        checks.push_back(e);
      }
      j["checks"] = checks;
      j["summary"] = report.all_pass() ? "all axioms pass" : "axiom failure";
      emit(ctx, j, std::cout);
      status = report.all_pass() ? kOk : kFail;
    });
  }
  {
    struct Opts {
      std::string file;
      std::vector<std::string> gens;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("subalgebra", "Atoms of the subalgebra generated by elements");
    sub->add_option("algebra", o->file, "Algebra file")->required();
    sub->add_option("--gen", o->gens, "Generator such as a0+t1 (repeatable)")->required();
    sub->callback([o, &ctx, &status] {
      const FiniteRelationAlgebra alg = load_algebra(o->file);
      const SubalgebraDescription sg = generate_subalgebra(alg, parse_elements(alg, o->gens));
      Json j;
      j["generators"] = o->gens;
      Json atoms = Json::array();
      for (const auto& a : sg.atoms) atoms.push_back(alg.format(a));
      j["atoms"] = atoms;
      j["elements"] = std::uint64_t{1} << sg.atom_count();
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    struct Opts {
      std::string file;
      std::string equation;
      bool random = false;
      std::uint64_t seed = 0;
      std::uint64_t trials = 10000;
      std::uint64_t budget = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "falsify", "Search for an assignment falsifying an equation (exit 1 if one is found)");
    sub->add_option("algebra", o->file, "Algebra file")->required();
    sub->add_option("equation", o->equation, "Equation, e.g. \"x1 ; e = x1\"")->required();
    sub->add_flag("--random", o->random, "Random sampling instead of exhaustive search");
    sub->add_option("--seed", o->seed, "Seed for --random");
    sub->add_option("--trials", o->trials, "Samples for --random");
    sub->add_option("--budget", o->budget, "Exhaustive assignment budget (default 2^24)");
    sub->callback([o, &ctx, &status] {
      const FiniteRelationAlgebra alg = load_algebra(o->file);
      const Equation eq = parse_equation(o->equation);
      FalsifyOptions opts;
      opts.exhaustive = !o->random;
      opts.seed = o->seed;
      opts.trials = o->trials;
      opts.budget = o->budget;
      opts.threads = ctx.threads;
      const FalsifyResult r = falsify(eq, alg, opts);
      Json j;
      j["equation"] = to_string(eq);
      j["length"] = equation_length(eq);
      j["mode"] = o->random ? "random" : "exhaustive";
      if (o->random) {
        j["seed"] = o->seed;
        j["trials"] = o->trials;
      }
      j["assignments_examined"] = r.examined;
      switch (r.status) {
        case FalsifyStatus::Valid:
          j["result"] = "VALID";
          break;
        case FalsifyStatus::Unknown:
          j["result"] = "UNKNOWN";
          break;
        case FalsifyStatus::Falsified:
          j["result"] = "FALSIFIED";
          j["witness"] = format_assignment(alg, r.assignment);
          j["lhs"] = alg.format(r.lhs_value);
          j["rhs"] = alg.format(r.rhs_value);
          break;
      }
      emit(ctx, j, std::cout);
      status = r.status == FalsifyStatus::Falsified ? kFail : kOk;
    });
  }
}

}  // namespace relalg::cli
