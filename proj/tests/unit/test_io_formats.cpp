#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "relalg/errors.hpp"
#include "relalg/io.hpp"
#include "relalg/lpn.hpp"
#include "relalg/structure.hpp"
#include "relalg/xi.hpp"

using namespace relalg;
namespace fs = std::filesystem;

namespace {

FiniteRelationAlgebra linear_order() {
  const AtomSet id = 1, lt = 2, gt = 4, all = 7;
  return FiniteRelationAlgebra({"1'", "lt", "gt"}, id, {0, 2, 1},
                               {id, lt, gt, lt, lt, all, gt, all, gt});
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("relalg-io-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

std::size_t parse_error_line(const std::string& text) {
  try {
    algebra_from_text(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return 0;
}

}  // namespace

TEST_CASE("algebra text round trips") {
  for (const auto& alg : {build_lpn({3, 2}), build_lpn({4, 0}), linear_order()}) {
    const std::string text = algebra_to_text(alg);
    const auto back = algebra_from_text(text);
    CHECK(back.same_table(alg));
    CHECK(back.atom_names() == alg.atom_names());
    CHECK(algebra_to_text(back) == text);
  }
  const std::string lo = algebra_to_text(linear_order());
  CHECK(lo.find("symmetric false") != std::string::npos);
  CHECK(lo.find("converse lt gt") != std::string::npos);
}

TEST_CASE("hand-written algebra file") {
  const std::string text =
      "# two-atom group algebra Z2\n"
      "ra v1\n"
      "atoms 2 1' b\n"
      "\n"
      "identity 1'\n"
      "symmetric true\n"
      "comp 1' 1' = 1'\n"
      "comp 1' b = b\n"
      "comp b b = 1'\n";
  const auto alg = algebra_from_text(text);
  CHECK(alg.atom_count() == 2);
  CHECK(check_axioms(alg).all_pass());
}

TEST_CASE("algebra parse errors report lines") {
  const std::string good = algebra_to_text(build_lpn({3, 0}));
  CHECK(parse_error_line("structure v1\n") == 1);
  CHECK(parse_error_line("ra v1\natoms 2 1' 1'\n") == 2);
  CHECK(parse_error_line("ra v1\natoms 2 1' b\nidentity c\n") == 3);
  CHECK(parse_error_line("ra v1\natoms 2 1' b\nidentity 1'\nsymmetric maybe\n") == 4);
  // Drop the last comp line.
  const std::string truncated = good.substr(0, good.rfind("comp"));
  CHECK_THROWS_AS(algebra_from_text(truncated), ParseError);
  // A duplicated comp line is reported at the duplicate.
  const std::size_t lines = static_cast<std::size_t>(std::count(good.begin(), good.end(), '\n'));
  const std::string last = good.substr(good.rfind("comp"));
  CHECK(parse_error_line(good + last) == lines + 1);
  // A total table that is no relation algebra still loads, so that
  // check-axioms can report on it.
  const std::string broken =
      "ra v1\natoms 2 1' b\nidentity 1'\nsymmetric true\n"
      "comp 1' 1' = 1'\ncomp 1' b = b\ncomp b b = b\n";
  CHECK_FALSE(check_axioms(algebra_from_text(broken)).all_pass());
}

TEST_CASE("structure text round trips") {
  StructureFile labeling;
  labeling.kind = StructureKind::AtomLabeling;
  labeling.algebra_path = "alg.ra";
  labeling.base = 3;
  labeling.edges = {{0, 1, "a0"}, {0, 2, "a1"}, {1, 2, "a2"}};
  CHECK(parse_structure_file(structure_file_text(labeling)) == labeling);

  StructureFile power;
  power.kind = StructureKind::Power;
  power.algebra_path = "../alg.ra";
  power.inner_path = "../aff3.rel";
  power.m = 2;
  CHECK(parse_structure_file(structure_file_text(power)) == power);

  StructureFile seeded;
  seeded.kind = StructureKind::Xi;
  seeded.algebra_path = "l32.ra";
  seeded.inner_path = "aff3.rel";
  seeded.n = 2;
  seeded.seed = 18446744073709551615ULL;
  CHECK(parse_structure_file(structure_file_text(seeded)) == seeded);

  StructureFile explicit_xi = seeded;
  explicit_xi.seed.reset();
  explicit_xi.tedges = {{0, 0, 1}, {0, 1, 2}};
  CHECK(parse_structure_file(structure_file_text(explicit_xi)) == explicit_xi);
}

TEST_CASE("base= is accepted for inner=") {
  const StructureFile f = parse_structure_file(
      "structure v1\nkind power\nalgebra a.ra\npower m=3 base=in.rel\n");
  CHECK(f.inner_path == "in.rel");
  CHECK(f.m == 3);
  CHECK_THROWS_AS(
      parse_structure_file("structure v1\nkind power\nalgebra a.ra\npower m=3 base=x inner=y\n"),
      ParseError);
}

TEST_CASE("structure parse errors") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_structure_file(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return 0;
  };
  CHECK(line_of("structure v1\nkind tree\n") == 2);
  CHECK(line_of("structure v1\nkind atom-labeling\nalgebra a.ra\nbase 3\nedge 1 0 a0\n") == 5);
  CHECK(line_of("structure v1\nkind atom-labeling\nalgebra a.ra\nbase 3\nedge 0 3 a0\n") == 5);
  CHECK(line_of("structure v1\nkind power\nalgebra a.ra\npower m=0 inner=x\n") == 4);
  CHECK(line_of("structure v1\nkind xi\nalgebra a.ra\nxi inner=x n=2\ntedge 0 0 3\n") == 5);
  CHECK(line_of("structure v1\nkind xi\nalgebra a.ra\nxi inner=x n=2 seed=1\ntedge 0 0 1\n") ==
        5);
  CHECK(line_of("structure v1\nkind xi\nalgebra a.ra\nxi inner=x n=2\n") == 4);
}

TEST_CASE("files resolve relative paths against their directory") {
  TempDir tmp;
  fs::create_directories(tmp.path / "alg");
  fs::create_directories(tmp.path / "s");
  const auto aff = build_affine(3);
  save_algebra(tmp.path / "alg" / "l30.ra", aff.algebra());
  save_text(tmp.path / "s" / "aff3.rel",
            structure_file_text(describe_atom_labeling(aff, "../alg/l30.ra")));
  write(tmp.path / "s" / "deep" / "pow.rel",
        "structure v1\nkind power\nalgebra ../../alg/l30.ra\npower m=2 inner=../aff3.rel\n");

  const auto loaded = load_structure(tmp.path / "s" / "aff3.rel");
  CHECK(loaded.labels() == aff.labels());
  const auto pow = load_structure(tmp.path / "s" / "deep" / "pow.rel");
  CHECK(pow.kind() == StructureKind::Power);
  CHECK(pow.base_size() == 81);

  save_algebra(tmp.path / "l32.ra", build_lpn({3, 2}));
  write(tmp.path / "xi.rel",
        "structure v1\nkind xi\nalgebra l32.ra\nxi inner=s/aff3.rel n=2 seed=1\n");
  const auto xi = load_structure(tmp.path / "xi.rel");
  CHECK(xi.partition().classes() == Partition::from_recipe({1, 2, 9}).classes());

  std::string explicit_text = "structure v1\nkind xi\nalgebra l32.ra\nxi inner=s/aff3.rel n=2\n";
  for (std::size_t x = 0; x < 9; ++x) {
    for (std::size_t y = 0; y < 9; ++y) {
      explicit_text += "tedge " + std::to_string(x) + " " + std::to_string(y) + " " +
                       std::to_string(1 + (x + y) % 2) + "\n";
    }
  }
  write(tmp.path / "xi2.rel", explicit_text);
  const auto xi2 = load_structure(tmp.path / "xi2.rel");
  CHECK(xi2.partition().class_of(2, 3) == 2);
  CHECK(xi2.partition().class_of(3, 3) == 1);

  // Missing cross pairs are rejected.
  write(tmp.path / "xi3.rel", "structure v1\nkind xi\nalgebra l32.ra\nxi inner=s/aff3.rel n=2\n"
                              "tedge 0 0 1\n");
  CHECK_THROWS_AS(load_structure(tmp.path / "xi3.rel"), ParseError);
  // An edge naming an atom the algebra lacks.
  write(tmp.path / "bad.rel",
        "structure v1\nkind atom-labeling\nalgebra l32.ra\nbase 2\nedge 0 1 z9\n");
  CHECK_THROWS_AS(load_structure(tmp.path / "bad.rel"), ParseError);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_algebra("/nonexistent/relalg/x.ra"), FileError);
  CHECK_THROWS_AS(load_structure("/nonexistent/relalg/x.rel"), FileError);
  TempDir tmp;
  write(tmp.path / "dangling.rel",
        "structure v1\nkind atom-labeling\nalgebra nowhere.ra\nbase 2\nedge 0 1 a0\n");
  CHECK_THROWS_AS(load_structure(tmp.path / "dangling.rel"), FileError);
}
