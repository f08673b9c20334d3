#include <doctest.h>

#include <algorithm>
#include <set>

#include "relalg/algebra.hpp"
#include "relalg/errors.hpp"
#include "relalg/lpn.hpp"
#include "relalg/splitmix.hpp"
#include "relalg/subalgebra.hpp"

using namespace relalg;

namespace {

Element el(const FiniteRelationAlgebra& a, const char* text) { return a.parse_element(text); }

// Closure by brute force: keep applying every operation to every pair of
// known elements until nothing new appears.
std::set<AtomSet> closure_oracle(const FiniteRelationAlgebra& alg,
                                 const std::vector<Element>& gens) {
  std::set<AtomSet> seen{0, alg.universe(), alg.identity_atoms()};
  for (const auto& g : gens) seen.insert(g.atoms());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<AtomSet> now(seen.begin(), seen.end());
    for (AtomSet x : now) {
      const Element ex = alg.element(x);
      for (const Element& r : {alg.complement(ex), alg.converse(ex)}) {
        grew |= seen.insert(r.atoms()).second;
      }
      for (AtomSet y : now) {
        const Element ey = alg.element(y);
        for (const Element& r : {alg.join(ex, ey), alg.meet(ex, ey), alg.compose(ex, ey)}) {
          grew |= seen.insert(r.atoms()).second;
        }
      }
    }
  }
  return seen;
}

std::vector<AtomSet> minimal_nonzero(const std::set<AtomSet>& members) {
  std::vector<AtomSet> atoms;
  for (AtomSet x : members) {
    if (x == 0) continue;
    bool minimal = true;
    for (AtomSet y : members) {
      if (y != 0 && y != x && (y & ~x) == 0) minimal = false;
    }
    if (minimal) atoms.push_back(x);
  }
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

std::vector<AtomSet> atom_sets(const SubalgebraDescription& s) {
  std::vector<AtomSet> out;
  for (const auto& a : s.atoms) out.push_back(a.atoms());
  return out;
}

FiniteRelationAlgebra corrupt(const FiniteRelationAlgebra& alg, AtomId a, AtomId b,
                              AtomSet value) {
  const std::size_t k = alg.atom_count();
  std::vector<AtomSet> comp(k * k);
  for (AtomId x = 0; x < k; ++x) {
    for (AtomId y = 0; y < k; ++y) comp[x * k + y] = alg.comp_atoms(x, y);
  }
  comp[a * k + b] = value;
  return FiniteRelationAlgebra::symmetric(alg.atom_names(), alg.identity_atoms(), comp);
}

}  // namespace

TEST_CASE("boolean and converse operations") {
  const auto l32 = build_lpn({3, 2});
  CHECK(l32.meet(el(l32, "a0+a1"), el(l32, "a1+t1")) == el(l32, "a1"));
  CHECK(l32.complement(l32.zero()) == l32.top());
  CHECK(l32.converse(el(l32, "a0+t1")) == el(l32, "a0+t1"));
  CHECK(l32.join(el(l32, "a0"), el(l32, "t2")) == el(l32, "a0+t2"));
  CHECK(l32.format(l32.zero()) == "0");
  CHECK(l32.parse_element("1") == l32.top());
  CHECK(l32.element_count() == 128);
}

TEST_CASE("elements of different algebras do not mix") {
  const auto a = build_lpn({3, 2});
  const auto b = build_lpn({3, 2});
  CHECK_THROWS_AS(a.join(a.top(), b.top()), UsageError);
  CHECK_THROWS_AS(a.compose(a.identity(), b.identity()), UsageError);
  CHECK(a.same_table(b));
}

TEST_CASE("composition in L(3,2)") {
  const auto l32 = build_lpn({3, 2});
  CHECK(l32.compose(el(l32, "a0"), l32.identity()) == el(l32, "a0"));
  // a_i ; a_j stays inside A (see the 0' reading in the README).
  CHECK(l32.compose(el(l32, "a0"), el(l32, "a1")) == el(l32, "a2+a3"));
  CHECK(l32.compose(el(l32, "t1+t2"), el(l32, "t1")) == el(l32, "1'+a0+a1+a2+a3"));
  CHECK(l32.compose(el(l32, "t1"), el(l32, "t2")) == el(l32, "a0+a1+a2+a3"));
}

TEST_CASE("axioms of L(3,2) and L(5,3)") {
  for (const LpnParams params : {LpnParams{3, 2}, LpnParams{5, 3}}) {
    const AxiomReport r = check_axioms(build_lpn(params));
    CHECK(r.all_pass());
    CHECK(r.symmetric);
    CHECK(r.integral);
    CHECK(r.commutative);
    CHECK(r.first_failure() == nullptr);
  }
}

TEST_CASE("an injected table fault is caught with a witness") {
  const auto l32 = build_lpn({3, 2});
  const auto bad = corrupt(l32, lpn::a_atom(0), lpn::a_atom(0), atom_bit(lpn::a_atom(1)));
  const AxiomReport r = check_axioms(bad);
  REQUIRE_FALSE(r.all_pass());
  const AxiomCheck* f = r.first_failure();
  REQUIRE(f != nullptr);
  CHECK_FALSE(f->certificate.empty());
  CHECK_FALSE(f->witness.empty());
}

TEST_CASE("symmetric algebras are commutative and compose is additive") {
  const auto alg = build_lpn({4, 2});
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    for (AtomId b = 0; b < alg.atom_count(); ++b) {
      CHECK(alg.comp_atoms(a, b) == alg.comp_atoms(b, a));
    }
  }
  SplitMix64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Element x = alg.element(rng.next() & alg.universe());
    const Element y = alg.element(rng.next() & alg.universe());
    const Element z = alg.element(rng.next() & alg.universe());
    CHECK(alg.compose(alg.join(x, y), z) == alg.join(alg.compose(x, z), alg.compose(y, z)));
    CHECK(alg.compose(alg.compose(x, y), z) == alg.compose(x, alg.compose(y, z)));
    CHECK(alg.converse(alg.compose(x, y)) ==
          alg.compose(alg.converse(y), alg.converse(x)));
    CHECK(alg.compose(x, alg.identity()) == x);
    if (x.leq(y)) CHECK(alg.compose(x, z).leq(alg.compose(y, z)));
  }
}

TEST_CASE("subalgebra generation examples") {
  const auto l32 = build_lpn({3, 2});
  const auto s1 = generate_subalgebra(l32, {l32.identity()});
  CHECK(atom_sets(s1) ==
        std::vector<AtomSet>{l32.identity_atoms(), l32.diversity().atoms()});

  const auto s2 = generate_subalgebra(l32, {el(l32, "a0")});
  CHECK(s2.contains(el(l32, "a0")));
  // a0 ; (everything else) does not split the rest.
  CHECK(atom_sets(s2) == std::vector<AtomSet>{l32.identity_atoms(), el(l32, "a0").atoms(),
                                              el(l32, "a1+a2+a3+t1+t2").atoms()});
}

TEST_CASE("subalgebra generation matches the brute-force closure") {
  const auto alg = build_lpn({3, 2});
  SplitMix64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Element> gens;
    const int count = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < count; ++i) gens.push_back(alg.element(rng.next() & alg.universe()));
    const auto closure = closure_oracle(alg, gens);
    const auto sub = generate_subalgebra(alg, gens);
    CHECK(atom_sets(sub) == minimal_nonzero(closure));
    CHECK(sub.elements().size() == closure.size());
    for (const auto& e : sub.elements()) CHECK(closure.count(e.atoms()) == 1);
  }
}

TEST_CASE("the fused carrier is generated by its atoms") {
  const LpnParams params{3, 2};
  const auto alg = build_lpn(params);
  const std::vector<Element> gens{el(alg, "a0+a1"), el(alg, "a2"), el(alg, "a3"), el(alg, "t1"),
                                  el(alg, "t2")};
  const auto sub = generate_subalgebra(alg, gens);
  CHECK(atom_sets(sub) == std::vector<AtomSet>{el(alg, "1'").atoms(), el(alg, "a0+a1").atoms(),
                                               el(alg, "a2").atoms(), el(alg, "a3").atoms(),
                                               el(alg, "t1").atoms(), el(alg, "t2").atoms()});
}

TEST_CASE("embedding checks") {
  const auto l32 = build_lpn({3, 2});
  const auto full = full_subalgebra(l32);
  AtomMap id;
  for (const auto& a : full.atoms) id[a] = a;
  CHECK(check_embedding(l32, l32, full, id).ok);

  AtomMap collapse = id;
  collapse[el(l32, "a1")] = el(l32, "a0");
  const EmbeddingCheck bad = check_embedding(l32, l32, full, collapse);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());

  AtomMap partial = id;
  partial.erase(el(l32, "t2"));
  CHECK_THROWS_AS(check_embedding(l32, l32, full, partial), UsageError);
}
