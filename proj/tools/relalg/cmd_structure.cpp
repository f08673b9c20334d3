#include <filesystem>
#include <iostream>
#include <memory>

#include "cli.hpp"
#include "relalg/errors.hpp"
#include "relalg/io.hpp"

namespace relalg::cli {

namespace {

// Writes an atom-labeling structure to `out` with its algebra beside it.
Json write_labeling(const LabeledStructure& s, const std::string& out) {
  const std::string ra = sibling_algebra(out);
  save_algebra(ra, s.algebra());
  save_text(out, structure_file_text(describe_atom_labeling(s, relative_to_output(ra, out))));
  Json j;
  j["base"] = s.base_size();
  j["labeled_pairs"] = describe_atom_labeling(s, "").edges.size();
  j["algebra_file"] = ra;
  j["written"] = out;
  return j;
}

VerifyStrategy parse_strategy(const std::string& name) {
  if (name == "auto") return VerifyStrategy::Auto;
  if (name == "elements") return VerifyStrategy::ElementPairs;
  if (name == "atoms") return VerifyStrategy::AtomPairs;
  throw UsageError("unknown strategy '" + name + "'");
}

}  // namespace

void register_structure_commands(CLI::App& app, const Context& ctx, int& status) {
  {
    struct Opts {
      unsigned q = 3;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "affine", "Affine plane over GF(q) as a structure for L(q,0); writes <out> and its .ra");
    sub->add_option("--q", o->q, "Prime power")->required();
    sub->add_option("-o,--output", o->out, "Structure file")->required();
    sub->callback([o, &ctx, &status] {
      Json j;
      j["structure"] = "affine plane over GF(" + std::to_string(o->q) + ")";
      j.update(write_labeling(build_affine(o->q), o->out));
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    struct Opts {
      unsigned q = 3;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "double", "Two affine planes over GF(q) joined by t1, a structure for L(q,1)");
    sub->add_option("--q", o->q, "Prime power")->required();
    sub->add_option("-o,--output", o->out, "Structure file")->required();
    sub->callback([o, &ctx, &status] {
      Json j;
      j["structure"] = "doubled affine plane over GF(" + std::to_string(o->q) + ")";
      j.update(write_labeling(build_doubled(o->q), o->out));
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    struct Opts {
      std::string inner;
      unsigned m = 2;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("power", "Direct power of a structure (base D^m)");
    sub->add_option("structure", o->inner, "Inner structure file")->required();
    sub->add_option("--m", o->m, "Exponent >= 1")->required();
    sub->add_option("-o,--output", o->out, "Structure file")->required();
    sub->callback([o, &ctx, &status] {
      const LabeledStructure inner = load_structure(o->inner);
      if (o->m == 0) throw ParameterError("exponent must be at least 1");
      StructureFile f;
      f.kind = StructureKind::Power;
      f.algebra_path = relative_to_output(structure_algebra_path(o->inner), o->out);
      f.inner_path = relative_to_output(o->inner, o->out);
      f.m = o->m;
      save_text(o->out, structure_file_text(f));
      Json j;
      j["structure"] = "power";
      j["m"] = o->m;
      j["inner_base"] = inner.base_size();
      j["base"] = load_structure(o->out).base_size();
      j["written"] = o->out;
      emit(ctx, j, std::cout);
      status = kOk;
    });
  }
  {
    struct Opts {
      std::string file;
      bool weak = false;
      bool full = false;
      std::string strategy = "auto";
      bool network = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("verify", "Check a structure as a weak or full representation");
    sub->add_option("structure", o->file, "Structure file")->required();
    auto* weak = sub->add_flag("--weak", o->weak, "Weak representation");
    auto* full = sub->add_flag("--full", o->full, "Full representation (adds top and complements)");
    weak->excludes(full);
    sub->add_option("--strategy", o->strategy, "auto, elements or atoms")
        ->check(CLI::IsMember({"auto", "elements", "atoms"}));
    sub->add_flag("--network", o->network,
                  "Also run the atomic network check (atom labelings only)");
    sub->callback([o, &ctx, &status] {
      if (!o->weak && !o->full) throw UsageError("verify needs --weak or --full");
      const LabeledStructure s = load_structure(o->file);
      VerifyOptions opts;
      opts.strategy = parse_strategy(o->strategy);
      opts.threads = ctx.threads;
      const Verdict v = o->full ? verify_full(s, opts) : verify_weak(s, opts);
      Json j;
      j["structure"] = o->file;
      j["kind"] = to_string(s.kind());
      j["base"] = s.base_size();
      j["mode"] = o->full ? "full" : "weak";
      j.update(verdict_json(v, s.algebra()));
      bool ok = v.pass;
      if (o->network) {
        const Verdict nv = verify_network(s);
        j["network"] = verdict_json(nv, s.algebra());
        ok = ok && nv.pass;
      }
      emit(ctx, j, std::cout);
      status = ok ? kOk : kFail;
    });
  }
  {
    auto file = std::make_shared<std::string>();
    auto* sub = app.add_subcommand(
        "degree-audit",
        "Per-atom degree ranges and the degree test any full representation of L(p,n) passes "
        "(exit 1 if it fails)");
    sub->add_option("structure", *file, "Structure file")->required();
    sub->callback([file, &ctx, &status] {
      const LabeledStructure s = load_structure(*file);
      const DegreeAudit audit = degree_audit(s);
      Json j;
      j["structure"] = *file;
      j["base"] = s.base_size();
      Json degrees = Json::array();
      for (const auto& d : audit.degrees) {
        Json e;
        e["atom"] = s.algebra().atom_name(d.atom);
        e["min"] = d.min;
        e["max"] = d.max;
        degrees.push_back(e);
      }
      j["degrees"] = degrees;
      if (audit.family) {
        j["family"] = "L(" + std::to_string(audit.family->p) + "," +
                      std::to_string(audit.family->n) + ")";
      }
      j["a_degrees_regular"] = audit.a_degrees_regular;
      j["degree_bound"] = audit.degree_bound;
      j["verdict"] = audit.verdict ? "PASS" : "FAIL";
      emit(ctx, j, std::cout);
      status = audit.verdict ? kOk : kFail;
    });
  }
}

}  // namespace relalg::cli
