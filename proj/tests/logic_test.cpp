#include <doctest.h>

#include <random>

#include "rdnboost/logic.hpp"
#include "support/generators.hpp"

using namespace rdnboost;

namespace {

Atom atom(const std::string& pred, const std::vector<Term>& args) {
  return Atom{pred, args};
}

Term C(const std::string& n) { return Term::constant(n); }
Term V(const std::string& n) { return Term::variable(n); }

}  // namespace

TEST_CASE("apply replaces bound variables and keeps the rest") {
  Substitution s;
  s.bind("X", C("alice"));
  Atom a = atom("friends", {V("X"), V("Y")});
  CHECK(apply(s, a) == atom("friends", {C("alice"), V("Y")}));

  Substitution empty;
  Atom c = atom("cancer", {V("X")});
  CHECK(apply(empty, c) == c);

  Substitution full;
  full.bind("X", C("alice"));
  full.bind("Y", C("bob"));
  CHECK(apply(full, a) == atom("friends", {C("alice"), C("bob")}));
}

TEST_CASE("apply is idempotent even through binding chains") {
  Substitution s;
  s.bind("X", V("Y"));
  s.bind("Y", C("alice"));
  Atom a = atom("p", {V("X"), V("Y"), V("Z")});
  Atom once = apply(s, a);
  CHECK(once == atom("p", {C("alice"), C("alice"), V("Z")}));
  CHECK(apply(s, once) == once);
}

TEST_CASE("unify matches patterns against ground atoms") {
  auto mgu = unify(atom("friends", {V("X"), V("Y")}), atom("friends", {C("alice"), C("bob")}));
  REQUIRE(mgu.has_value());
  CHECK(mgu->lookup("X") == C("alice"));
  CHECK(mgu->lookup("Y") == C("bob"));
}

TEST_CASE("unify fails on predicate mismatch and binding conflicts") {
  CHECK_FALSE(unify(atom("cancer", {V("X")}), atom("smokes", {C("alice")})).has_value());
  CHECK_FALSE(
      unify(atom("friends", {V("X"), V("X")}), atom("friends", {C("alice"), C("bob")})).has_value());
  CHECK_FALSE(unify(atom("p", {C("a")}), atom("p", {C("a"), C("b")})).has_value());

  Substitution seed;
  seed.bind("X", C("carol"));
  CHECK_FALSE(unify(atom("cancer", {V("X")}), atom("cancer", {C("alice")}), seed).has_value());
}

TEST_CASE("unify extends the seed") {
  Substitution seed;
  seed.bind("X", C("alice"));
  auto mgu = unify(atom("friends", {V("X"), V("Y")}), atom("friends", {C("alice"), C("bob")}), seed);
  REQUIRE(mgu.has_value());
  CHECK(mgu->lookup("X") == C("alice"));
  CHECK(mgu->lookup("Y") == C("bob"));
}

TEST_CASE("unify handles variable-variable aliasing") {
  auto mgu = unify(atom("p", {V("X"), V("X")}), atom("p", {V("Y"), C("a")}));
  REQUIRE(mgu.has_value());
  CHECK(apply(*mgu, atom("p", {V("X"), V("X")})) == apply(*mgu, atom("p", {V("Y"), C("a")})));
}

TEST_CASE("property: unification success implies equality after application") {
  std::mt19937 rng(7);
  int successes = 0;
  for (int i = 0; i < 2000; ++i) {
    Atom a = testgen::random_atom(rng, 3, 3, 3, 2);
    Atom b = testgen::random_atom(rng, 3, 3, 3, 2);
    auto mgu = unify(a, b);
    if (!mgu) continue;
    ++successes;
    CHECK(apply(*mgu, a) == apply(*mgu, b));
  }
  CHECK(successes > 50);  // the generator must actually exercise the success path
}

TEST_CASE("property: unifier is most general (ground instances factor through it)") {
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    Atom a = testgen::random_atom(rng, 3, 2, 2, 1);
    Atom b = testgen::random_atom(rng, 3, 2, 2, 1);
    auto mgu = unify(a, b);

    // Ground instance: every variable of both atoms bound to a random constant.
    Substitution g;
    std::vector<std::string> vars;
    collect_variables(a, vars);
    collect_variables(b, vars);
    for (const auto& v : vars) {
      g.bind(v, Term::constant(testgen::constant_name(testgen::pick(rng, 2))));
    }
    if (apply(g, a) == apply(g, b)) {
      // g unifies the pair, so unify must succeed and g must be an instance
      // of the mgu: applying g on top of the mgu's image reproduces apply(g, a).
      REQUIRE(mgu.has_value());
      CHECK(apply(g, apply(*mgu, a)) == apply(g, a));
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("property: substitution application is idempotent") {
  std::mt19937 rng(13);
  for (int i = 0; i < 2000; ++i) {
    Atom a = testgen::random_atom(rng, 3, 3, 4, 2);
    Atom b = testgen::random_atom(rng, 3, 3, 4, 2);
    auto mgu = unify(a, b);
    if (!mgu) continue;
    Atom once = apply(*mgu, a);
    CHECK(apply(*mgu, once) == once);
  }
}

TEST_CASE("rename_apart avoids taken variables") {
  Clause c{atom("cancer", {V("A")}), {atom("smokes", {V("A")})}};
  Clause renamed = rename_apart(c, {"A"});
  CHECK(renamed.head == atom("cancer", {V("A1")}));
  CHECK(renamed.body[0] == atom("smokes", {V("A1")}));
}

TEST_CASE("rename_apart with nothing taken may keep names") {
  Clause c{atom("cancer", {V("A")}), {atom("smokes", {V("A")})}};
  Clause renamed = rename_apart(c, {});
  CHECK(renamed == c);
}

TEST_CASE("rename_apart shares no variable with taken") {
  Clause c{atom("friends", {V("A"), V("B")}), {atom("smokes", {V("B")})}};
  Clause renamed = rename_apart(c, {"A", "B"});
  std::vector<std::string> vars;
  collect_variables(renamed.head, vars);
  for (const Atom& a : renamed.body) collect_variables(a, vars);
  for (const auto& v : vars) {
    CHECK(v != "A");
    CHECK(v != "B");
  }
}

TEST_CASE("property: rename_apart preserves clause shape") {
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    Clause c;
    c.head = testgen::random_atom(rng, 3, 2, 4, 2);
    std::size_t body_len = testgen::pick(rng, 3);
    for (std::size_t k = 0; k < body_len; ++k) {
      c.body.push_back(testgen::random_atom(rng, 3, 2, 4, 2));
    }
    std::set<std::string> taken = {"X0", "X2", "Q"};
    Clause r = rename_apart(c, taken);

    REQUIRE(r.body.size() == c.body.size());
    CHECK(r.head.predicate == c.head.predicate);
    REQUIRE(r.head.arity() == c.head.arity());

    // Same predicates and same variable-equality pattern: positions hold
    // equal terms in the copy iff they did in the original.
    std::vector<Term> orig, ren;
    auto collect = [](const Atom& a, std::vector<Term>& out) {
      for (const auto& t : a.args) out.push_back(t);
    };
    collect(c.head, orig);
    collect(r.head, ren);
    for (std::size_t k = 0; k < c.body.size(); ++k) {
      CHECK(r.body[k].predicate == c.body[k].predicate);
      REQUIRE(r.body[k].arity() == c.body[k].arity());
      collect(c.body[k], orig);
      collect(r.body[k], ren);
    }
    REQUIRE(orig.size() == ren.size());
    for (std::size_t x = 0; x < orig.size(); ++x) {
      CHECK(orig[x].kind() == ren[x].kind());
      if (orig[x].is_constant()) CHECK(orig[x] == ren[x]);
      for (std::size_t y = x + 1; y < orig.size(); ++y) {
        CHECK((orig[x] == orig[y]) == (ren[x] == ren[y]));
      }
    }
    std::vector<std::string> vars;
    collect_variables(r.head, vars);
    for (const Atom& a : r.body) collect_variables(a, vars);
    for (const auto& v : vars) CHECK_FALSE(taken.count(v));
  }
}

TEST_CASE("atom ordering is by predicate, then arity, then arguments") {
  CHECK(atom("a", {C("z")}) < atom("b", {C("a")}));
  CHECK(atom("p", {C("z")}) < atom("p", {C("a"), C("a")}));
  CHECK(atom("p", {C("a")}) < atom("p", {C("b")}));
}

TEST_CASE("to_string renders atoms and clauses") {
  CHECK(to_string(atom("friends", {C("alice"), V("B")})) == "friends(alice,B)");
  Clause c{atom("cancer", {V("A")}), {atom("smokes", {V("A")})}};
  CHECK(to_string(c) == "cancer(A) :- smokes(A).");
  Clause fact{atom("cancer", {C("alice")}), {}};
  CHECK(to_string(fact) == "cancer(alice).");
}
