#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistgen/surface.hpp"
#include "twistgen/words.hpp"

using namespace twistgen;

namespace {

struct Fixture {
  GenusModel model = GenusModel::make(9, ModelKind::Cyclic);
  CurveCatalog cat = build_catalog(model);
  MappingClassSpec spec = standard_spec(model);
  Environment env{model};
  Evaluator ev{env, cat, spec};
};

Word random_word(std::mt19937_64& rng, const GenusModel& model, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    switch (rng() % 5) {
      case 0: w = w * Word::rot(static_cast<long long>(rng() % 7) - 3); break;
      case 1: w = w * Word::twist(Family::B, 1 + static_cast<int>(rng() % model.r)); break;
      case 2: w = w * Word::twist(Family::C, 1 + static_cast<int>(rng() % (model.r - 1)), -1); break;
      case 3: w = w * Word::twist(Family::A, 1 + static_cast<int>(rng() % 2)); break;
      default: w = w * Word::twist(Family::F, 1 + static_cast<int>(rng() % model.block)); break;
    }
  }
  return w.reduced();
}

}  // namespace

TEST_CASE("parsing and formatting") {
  SUBCASE("three atoms") {
    Word w = parse_word("T^-4 * G10 * C2^-1");
    REQUIRE(w.size() == 3);
    CHECK(w.atoms()[0].kind == Atom::Kind::Rot);
    CHECK(w.atoms()[0].exp == -4);
    CHECK(w.atoms()[1].curve.family == Family::Gamma);
    CHECK(w.atoms()[1].curve.index == 10);
    CHECK(w.atoms()[2].exp == -1);
  }
  SUBCASE("round trip on canonical text") {
    for (const char* s : {"T^-4 * G10 * C2^-1", "A1 * A2^-1", "$G1 * T^4",
                          "R1 * R2^-1 * T^3", "Tv(x1+x2+x5+x6) * E"}) {
      CHECK(format_word(parse_word(s)) == s);
    }
  }
  SUBCASE("gm spelling accepted") {
    CHECK(parse_word("Gm10") == parse_word("G10"));
    CHECK(format_word(parse_word("G10"), true) == "Gm10");
  }
  SUBCASE("whitespace separation") {
    CHECK(parse_word("T B2 C1^-1") == parse_word("T * B2 * C1^-1"));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_word("X5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("B0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("T^"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("B"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("Tv()"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("b2"), std::invalid_argument);
  }
}

TEST_CASE("free reduction and word algebra") {
  Word a1 = Word::twist(Family::A, 1);
  SUBCASE("adjacent cancellation") {
    CHECK(reduce(a1 * Word::twist(Family::A, 1, -1)).empty());
    CHECK(reduce(parse_word("T^2 * T^-2")).empty());
    CHECK(reduce(parse_word("T^2 * T^-1")) == parse_word("T"));
  }
  SUBCASE("inverse reverses and negates") {
    Word w = parse_word("T^-4 * $G1 * T^4");
    CHECK(inverse(w) == parse_word("T^-4 * $G1^-1 * T^4"));
    CHECK(reduce(w * inverse(w)).empty());
  }
  SUBCASE("commutator with the empty word is trivial") {
    CHECK(commutator(parse_word("T^3 * B1"), Word()).empty());
  }
  SUBCASE("power") {
    CHECK(power(parse_word("T"), 3) == parse_word("T * T * T"));
    CHECK(reduce(power(parse_word("B2"), -2)) == parse_word("B2^-2"));
  }
}

TEST_CASE("mod-2 evaluation") {
  Fixture fx;
  SUBCASE("empty word is the identity") {
    CHECK(fx.ev.mod2(Word()) == BitMat::identity(9));
  }
  SUBCASE("twist equals transvection of the class") {
    CHECK(fx.ev.mod2(Word::twist(Family::B, 2)) ==
          transvection_matrix(fx.cat.cls({Family::B, 2})));
    CHECK(fx.ev.mod2(Word::twist(Family::B, 2, -1)) ==
          fx.ev.mod2(Word::twist(Family::B, 2)));
  }
  SUBCASE("homomorphism property on random words") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
      Word u = random_word(rng, fx.model, 4);
      Word v = random_word(rng, fx.model, 4);
      CHECK(fx.ev.mod2(u * v) == fx.ev.mod2(u) * fx.ev.mod2(v));
    }
  }
  SUBCASE("inverse evaluates to the matrix inverse") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 20; ++t) {
      Word u = random_word(rng, fx.model, 5);
      CHECK(fx.ev.mod2(inverse(u)) == mat_inv(fx.ev.mod2(u)));
    }
  }
  SUBCASE("images preserve the form") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
      CHECK(preserves_form(fx.ev.mod2(random_word(rng, fx.model, 6))));
    }
  }
  SUBCASE("commutator evaluates to the matrix commutator") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 20; ++t) {
      Word u = random_word(rng, fx.model, 4);
      Word v = random_word(rng, fx.model, 4);
      BitMat mu = fx.ev.mod2(u);
      BitMat mv = fx.ev.mod2(v);
      CHECK(fx.ev.mod2(commutator(u, v)) == mu * mv * mat_inv(mu) * mat_inv(mv));
    }
  }
  SUBCASE("label expansion preserves evaluation") {
    Environment env(fx.model);
    env.define("G1", parse_word("G10 * C2^-1 * F8 * B2^-1"));
    env.define("PHI", parse_word("$G1 * T^-2 * $G1^-1"));
    Evaluator ev(env, fx.cat, fx.spec);
    Word flat = expand_labels(parse_word("T * $PHI^-1 * B1"), env);
    for (const Atom& a : flat.atoms()) CHECK(a.kind != Atom::Kind::Named);
    Environment empty(fx.model);
    Evaluator ev2(empty, fx.cat, fx.spec);
    CHECK(ev2.mod2(flat) == ev.mod2(parse_word("T * $PHI^-1 * B1")));
  }
  SUBCASE("conjugation image law") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
      Word w = random_word(rng, fx.model, 4);
      CurveId a{Family::C, 1 + static_cast<int>(rng() % (fx.model.r - 1))};
      BitMat lhs = fx.ev.mod2(w * Word::twist(a) * inverse(w));
      BitMat rhs = transvection_matrix(fx.ev.mod2(w).apply(fx.cat.cls(a)));
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("vector application agrees with the full matrix") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 25; ++t) {
      Word w = random_word(rng, fx.model, 5);
      BitVec v(9, rng() & 0x1ff);
      CHECK(fx.ev.apply_mod2(w, v) == fx.ev.mod2(w).apply(v));
    }
  }
  SUBCASE("named definitions evaluate lazily and cache") {
    Environment env(fx.model);
    env.define("W1", parse_word("B1 * C1^-1"));
    env.define("W2", parse_word("$W1 * $W1^-1"));
    Evaluator ev(env, fx.cat, fx.spec);
    CHECK(ev.mod2(parse_word("$W2")) == BitMat::identity(9));
    CHECK(ev.mod2(parse_word("$W1^-1")) == mat_inv(ev.mod2(parse_word("$W1"))));
    CHECK_THROWS_AS(ev.mod2(parse_word("$missing")), std::invalid_argument);
  }
  SUBCASE("definitions may reference only earlier labels") {
    Environment env(fx.model);
    CHECK_THROWS_AS(env.define("bad", parse_word("$later")), std::invalid_argument);
    env.define("first", parse_word("T"));
    CHECK_THROWS_AS(env.define("first", parse_word("T")), std::invalid_argument);
  }
}

TEST_CASE("signed evaluation") {
  GenusModel model = GenusModel::make(12, ModelKind::Dihedral);
  CurveCatalog cat = build_catalog(model);
  MappingClassSpec spec = standard_spec(model);
  Environment env(model);
  Evaluator ev(env, cat, spec);

  SUBCASE("rho2 rho1 equals the rotation") {
    CHECK(ev.eval_signed(parse_word("R2 * R1")) == spec.T_signed);
  }
  SUBCASE("rotation order") {
    GenusModel odd = GenusModel::make(9, ModelKind::Cyclic);
    MappingClassSpec ospec = standard_spec(odd);
    Environment oenv(odd);
    CHECK(evaluate_signed(parse_word("T^9"), oenv, ospec) == SignedPermMat::identity(9));
    CHECK_FALSE(evaluate_signed(parse_word("T^3"), oenv, ospec) == SignedPermMat::identity(9));
  }
  SUBCASE("twists have no integer representation") {
    CHECK_THROWS_AS(ev.eval_signed(parse_word("A1")), std::invalid_argument);
    CHECK_THROWS_AS(ev.eval_signed(parse_word("Tv(x1+x2)")), std::invalid_argument);
  }
  SUBCASE("reflections are involutions") {
    CHECK(ev.eval_signed(parse_word("R1 * R1")) == SignedPermMat::identity(12));
    CHECK(ev.eval_signed(parse_word("R2^2")) == SignedPermMat::identity(12));
  }
}
