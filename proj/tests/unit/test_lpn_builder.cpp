#include <doctest.h>

#include "relalg/algebra.hpp"
#include "relalg/errors.hpp"
#include "relalg/lpn.hpp"

using namespace relalg;

namespace {

Element el(const FiniteRelationAlgebra& a, const char* text) { return a.parse_element(text); }

// The table with a_i ; a_j = 0' . -(a_i + a_j) taken literally, so that the
// t-atoms land below every product of two different a-atoms.
FiniteRelationAlgebra literal_reading(const LpnParams& params) {
  const auto good = build_lpn(params);
  const std::size_t k = good.atom_count();
  std::vector<AtomSet> comp(k * k);
  for (AtomId x = 0; x < k; ++x) {
    for (AtomId y = 0; y < k; ++y) comp[x * k + y] = good.comp_atoms(x, y);
  }
  const AtomSet diversity = good.diversity().atoms();
  for (unsigned i = 0; i <= params.p; ++i) {
    for (unsigned j = 0; j <= params.p; ++j) {
      if (i == j) continue;
      const AtomId a = lpn::a_atom(i);
      const AtomId b = lpn::a_atom(j);
      comp[a * k + b] = diversity & ~atom_bit(a) & ~atom_bit(b);
    }
  }
  return FiniteRelationAlgebra::symmetric(good.atom_names(), good.identity_atoms(), comp);
}

}  // namespace

TEST_CASE("L(p,n) sizes and table rows") {
  const auto l32 = build_lpn({3, 2});
  CHECK(l32.atom_count() == 7);
  CHECK(l32.element_count() == 128);
  CHECK(l32.atom_names() == std::vector<std::string>{"1'", "a0", "a1", "a2", "a3", "t1", "t2"});
  CHECK(l32.comp_atoms(lpn::t_atom({3, 2}, 1), lpn::t_atom({3, 2}, 2)) ==
        el(l32, "a0+a1+a2+a3").atoms());

  const LpnParams p41{4, 1};
  const auto l41 = build_lpn(p41);
  CHECK(l41.comp_atoms(lpn::a_atom(2), lpn::t_atom(p41, 1)) == el(l41, "t1").atoms());
}

TEST_CASE("p below 3 is rejected") {
  CHECK_THROWS_AS(build_lpn({2, 1}), ParameterError);
  CHECK_THROWS_AS(build_lpn({61, 4}), ParameterError);  // 67 atoms
}

TEST_CASE("the literal rows hold across the grid") {
  for (unsigned p = 3; p <= 9; ++p) {
    for (unsigned n = 0; n <= 4; ++n) {
      const LpnParams params{p, n};
      const auto alg = build_lpn(params);
      const AtomSet a = lpn::a_part(params);
      const AtomSet t = lpn::t_part(params);
      for (unsigned i = 0; i <= p; ++i) {
        const AtomId ai = lpn::a_atom(i);
        CHECK(alg.comp_atoms(ai, ai) == (alg.identity_atoms() | atom_bit(ai)));
        for (unsigned j = 0; j <= p; ++j) {
          if (i == j) continue;
          const AtomId aj = lpn::a_atom(j);
          CHECK(alg.comp_atoms(ai, aj) == (a & ~atom_bit(ai) & ~atom_bit(aj)));
        }
      }
      const Element big_t = alg.element(t);
      const Element tt = alg.compose(big_t, big_t);
      if (n >= 2) CHECK(alg.element(a).leq(tt));
      if (n == 1) CHECK(tt == alg.element(alg.identity_atoms() | a));
      if (n == 0) CHECK(alg.diversity() == alg.element(a));
      CHECK(check_axioms(alg).all_pass());
    }
  }
}

TEST_CASE("reading 0' as all diversity atoms breaks the Peircean law") {
  const AxiomReport r = check_axioms(literal_reading({3, 2}));
  REQUIRE_FALSE(r.all_pass());
  bool triangle_failed = false;
  for (const auto& c : r.checks) {
    if (c.family == "triangle-law") triangle_failed = !c.passed;
  }
  CHECK(triangle_failed);
  CHECK(r.first_failure()->family == "associativity");
  // With n = 0 both readings coincide.
  CHECK(check_axioms(literal_reading({3, 0})).all_pass());
}

TEST_CASE("recognize_lpn") {
  const auto r = recognize_lpn(build_lpn({5, 3}));
  REQUIRE(r.has_value());
  CHECK(*r == LpnParams{5, 3});
  CHECK_FALSE(recognize_lpn(literal_reading({3, 2})).has_value());
}

TEST_CASE("non-representability flag") {
  CHECK(notrap_flag({3, 2}));
  CHECK_FALSE(notrap_flag({3, 1}));
  CHECK(notrap_flag({5, 3}));
}

TEST_CASE("fused algebra products") {
  const FusedAlgebra f = build_fused({3, 2}, {0, 1});
  const auto& alg = f.algebra;
  const Element fused = el(alg, "a0a1");
  CHECK(alg.compose(fused, fused) == el(alg, "1'+a0a1+a2+a3"));
  CHECK(alg.compose(fused, el(alg, "a2")) == el(alg, "a0a1+a3"));
  CHECK(alg.compose(fused, el(alg, "t1")) == el(alg, "t1+t2"));
  CHECK(f.inclusion_check.ok);
  CHECK(check_axioms(alg).all_pass());

  // Pushed through the inclusion, the fused products are products in L(3,2).
  const auto& parent = f.parent;
  CHECK(parent.compose(el(parent, "a0+a1"), el(parent, "a2")) == el(parent, "a0+a1+a3"));
  for (const auto& [x, fx] : f.inclusion) {
    for (const auto& [y, fy] : f.inclusion) {
      AtomSet mapped = 0;
      for_each_atom(alg.compose(x, y).atoms(), [&](AtomId a) {
        mapped |= f.inclusion.at(alg.atom(a)).atoms();
      });
      CHECK(parent.compose(fx, fy).atoms() == mapped);
    }
  }
  CHECK_THROWS_AS(build_fused({3, 2}, {1, 1}), ParameterError);
  CHECK_THROWS_AS(build_fused({3, 2}, {0, 4}), ParameterError);
}

TEST_CASE("fusion embeddings") {
  const LpnParams params{3, 2};
  const FusionEmbedding e = fusion_embedding(params, {0, 1}, 5);
  CHECK(e.check.ok);
  CHECK(e.map.at(el(e.fused.algebra, "a0a1")) == el(e.target, "a0+a1+a4+a5"));
  CHECK(e.map.at(el(e.fused.algebra, "a2")) == el(e.target, "a2"));
  CHECK(e.map.at(el(e.fused.algebra, "t2")) == el(e.target, "t2"));

  // q = p is the inclusion itself.
  const FusionEmbedding same = fusion_embedding(params, {0, 1}, 3);
  CHECK(same.check.ok);
  for (const auto& [x, fx] : same.map) {
    CHECK(fx.atoms() == same.fused.inclusion.at(x).atoms());
  }

  CHECK(fusion_embedding({3, 0}, {0, 1}, 7).check.ok);
  CHECK_THROWS_AS(fusion_embedding(params, {0, 1}, 2), ParameterError);
}

TEST_CASE("fusion embeddings compose") {
  const LpnParams params{3, 1};
  const FusionEmbedding to5 = fusion_embedding(params, {1, 3}, 5);
  const FusionEmbedding to8 = fusion_embedding(params, {1, 3}, 8);
  // L(5,1) -> L(8,1) on the images: a_k for k in 4..5 joins the fused block,
  // and the new indices 6..8 are added to it.
  const LpnParams p5{5, 1};
  for (const auto& [x, fx] : to5.map) {
    AtomSet lifted = 0;
    for_each_atom(fx.atoms(), [&](AtomId a) {
      lifted |= to8.target.atom(a).atoms();
    });
    if (fx.contains(lpn::a_atom(1))) {
      for (unsigned k = 6; k <= 8; ++k) lifted |= atom_bit(lpn::a_atom(k));
    }
    // t-atoms sit at different positions in L(5,1) and L(8,1).
    if (fx.contains(lpn::t_atom(p5, 1))) {
      lifted = (lifted & ~atom_bit(lpn::t_atom(p5, 1))) | atom_bit(lpn::t_atom({8, 1}, 1));
    }
    CHECK(lifted == to8.map.at(to8.fused.algebra.element(x.atoms())).atoms());
  }
}
