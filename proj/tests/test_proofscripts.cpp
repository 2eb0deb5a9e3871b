#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistgen/proofscripts.hpp"

using namespace twistgen;

namespace {

struct Ctx {
  GenusModel model;
  CurveCatalog cat;
  MappingClassSpec spec;
  explicit Ctx(int g, ModelKind kind)
      : model(GenusModel::make(g, kind)), cat(build_catalog(model)), spec(standard_spec(model)) {}
};

RunReport run(const std::string& id, int g, int gen_cap = 10) {
  Script s = builtin_script(id, g);
  Ctx ctx(g, s.model);
  RunOptions opts;
  opts.generation_cap = gen_cap;
  return run_script(s, ctx.cat, ctx.spec, opts);
}

}  // namespace

TEST_CASE("builtin script variant selection") {
  SUBCASE("t29 closes with d1 exactly at g=27") {
    Script s27 = builtin_script("t29", 27);
    Script s29 = builtin_script("t29", 29);
    CHECK_FALSE(s27.variant_notes.empty());
    CHECK(s29.variant_notes.empty());
    bool has_d1 = false;
    for (const auto& st : s27.steps) {
      if (st.to_text().find("D1") != std::string::npos) has_d1 = true;
    }
    CHECK(has_d1);
  }
  SUBCASE("t42 wraps the 44th d-index per genus") {
    auto text_of = [](int g) {
      std::string all;
      for (const auto& st : builtin_script("t42", g).steps) all += st.to_text() + "\n";
      return all;
    };
    CHECK(text_of(42).find("F29 * D3^-1") != std::string::npos);
    CHECK(text_of(44).find("F29 * D1^-1") != std::string::npos);
    CHECK(text_of(46).find("F29 * D44^-1") != std::string::npos);
  }
  SUBCASE("t4k3 wraps the 44th u-index at g=43") {
    std::string all;
    for (const auto& st : builtin_script("t4k3", 43).steps) all += st.to_text() + "\n";
    CHECK(all.find("F29 * U3^-1") != std::string::npos);
  }
  SUBCASE("prop41 exponent follows the residue") {
    Script s12 = builtin_script("prop41", 12);
    bool has6 = false;
    for (const auto& st : s12.steps) {
      if (st.to_text().find("T^6") != std::string::npos) has6 = true;
    }
    CHECK(has6);
  }
  SUBCASE("range errors name the bound") {
    CHECK_THROWS_WITH_AS(builtin_script("t29", 25),
                         doctest::Contains("bound 27"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(builtin_script("t42", 40),
                         doctest::Contains("bound 42"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_script("t4k2", 31), std::invalid_argument);
    CHECK_THROWS_AS(builtin_script("nosuch", 29), std::invalid_argument);
  }
  SUBCASE("ids are registered") {
    for (const auto& id : builtin_script_ids()) CHECK(is_builtin_script_id(id));
    CHECK_FALSE(is_builtin_script_id("t30"));
  }
}

TEST_CASE("every builtin script passes at its minimal genus and two larger") {
  struct Case { const char* id; std::vector<int> genera; };
  const Case cases[] = {
      {"t29", {27, 29, 31}},     {"t42", {42, 44, 46}},
      {"t9odd", {9, 11, 13}},    {"t8even", {8, 10, 12}},
      {"t4k2", {30, 34, 38}},    {"t4k3", {43, 47, 51}},
      {"t4k2_10", {10, 14, 18}}, {"t4k3_7", {7, 11, 15}},
      {"prop41", {7, 8, 9}},     {"com", {7, 8, 9, 10, 29, 30, 43, 44}},
  };
  for (const auto& c : cases) {
    for (int g : c.genera) {
      CAPTURE(c.id);
      CAPTURE(g);
      RunReport r = run(c.id, g);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("script runs are deterministic") {
  for (const char* id : {"t29", "t4k3_7"}) {
    int g = std::string(id) == "t29" ? 29 : 11;
    RunReport a = run(id, g);
    RunReport b = run(id, g);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
      CHECK(a.steps[i].status == b.steps[i].status);
      CHECK(a.steps[i].witness == b.steps[i].witness);
      CHECK(a.steps[i].text == b.steps[i].text);
    }
  }
}

TEST_CASE("negative controls fail at exactly the tampered step") {
  SUBCASE("tampered class-image target") {
    Script s = builtin_script("t29", 29);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      if (s.steps[i].kind == Step::Kind::AssertClassImage) {
        idx = i;
        break;
      }
    }
    s.steps[idx].pairs[0].second = CurveId{Family::B, 1};  // gm10 -> b1 is wrong
    Ctx ctx(29, s.model);
    RunReport r = run_script(s, ctx.cat, ctx.spec);
    CHECK_FALSE(r.pass);
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
      CAPTURE(i);
      CHECK((r.steps[i].status == StepResult::Status::Fail) == (i == idx));
    }
  }
  SUBCASE("tampered curve id in an identity") {
    Script s = builtin_script("t9odd", 9);
    // Find "assert_eq ... == B2 * A1^-1" style step and corrupt its rhs index.
    std::size_t idx = s.steps.size();
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      if (s.steps[i].kind == Step::Kind::AssertRepEqual && s.steps[i].rhs.size() == 2) {
        idx = i;
        break;
      }
    }
    REQUIRE(idx < s.steps.size());
    Word bad = Word::twist(Family::B, 3) * Word::twist(Family::A, 1, -1);
    s.steps[idx].rhs = bad;
    Ctx ctx(9, s.model);
    RunReport r = run_script(s, ctx.cat, ctx.spec);
    CHECK_FALSE(r.pass);
    int fails = 0;
    for (const auto& st : r.steps) {
      if (st.status == StepResult::Status::Fail) ++fails;
    }
    CHECK(fails == 1);
    CHECK(r.steps[idx].status == StepResult::Status::Fail);
  }
}

TEST_CASE("find_conjugator") {
  Ctx ctx(12, ModelKind::Dihedral);
  auto cls = [&](Family f, int i) { return ctx.cat.cls({f, i}); };
  SUBCASE("identical tuples give the empty word") {
    auto w = find_conjugator({{cls(Family::B, 1), cls(Family::B, 1)}}, ctx.cat);
    CHECK(w.empty());
  }
  SUBCASE("crossing pair is a single transvection") {
    BitVec u = cls(Family::A, 1);   // {1,2}
    BitVec v = cls(Family::B, 1);   // {2,3}
    REQUIRE(dot_form(u, v) == 1);
    Word w = find_conjugator({{u, v}}, ctx.cat);
    CHECK(w.size() == 1);
    Environment env(ctx.model);
    Evaluator ev(env, ctx.cat, ctx.spec);
    CHECK(ev.mod2(w).apply(u) == v);
  }
  SUBCASE("disjoint pair routes through a bridge") {
    BitVec u = cls(Family::A, 1);   // {1,2}
    BitVec v = cls(Family::B, 2);   // {4,5}
    REQUIRE(dot_form(u, v) == 0);
    Word w = find_conjugator({{u, v}}, ctx.cat);
    Environment env(ctx.model);
    Evaluator ev(env, ctx.cat, ctx.spec);
    CHECK(ev.mod2(w).apply(u) == v);
  }
  SUBCASE("two pairs, already-placed class stays fixed") {
    Ctx c30(30, ModelKind::Dihedral);
    auto cc = [&](Family f, int i) { return c30.cat.cls({f, i}); };
    std::vector<std::pair<BitVec, BitVec>> pairs = {
        {cc(Family::Gamma, 10), cc(Family::B, 2 * c30.model.k)},
        {cc(Family::F, 18), cc(Family::C, 2)}};
    Word w = find_conjugator(pairs, c30.cat);
    Environment env(c30.model);
    Evaluator ev(env, c30.cat, c30.spec);
    BitMat m = ev.mod2(w);
    CHECK(m.apply(pairs[0].first) == pairs[0].second);
    CHECK(m.apply(pairs[1].first) == pairs[1].second);
    CHECK(preserves_form(m));
  }
  SUBCASE("form mismatch is rejected") {
    // <a1,b1> = 1 but <a1,b2> = 0: no conjugator can match both pairs.
    std::vector<std::pair<BitVec, BitVec>> pairs = {
        {cls(Family::A, 1), cls(Family::A, 1)},
        {cls(Family::B, 1), cls(Family::B, 2)}};
    CHECK_THROWS_WITH_AS(find_conjugator(pairs, ctx.cat),
                         doctest::Contains("pairs not equivalent"), std::invalid_argument);
  }
  SUBCASE("one-sided classes are rejected") {
    BitVec odd = BitVec::from_indices(12, {1});
    CHECK_THROWS_AS(find_conjugator({{odd, cls(Family::A, 1)}}, ctx.cat),
                    std::invalid_argument);
  }
  SUBCASE("random equivalent tuples verify after construction") {
    std::mt19937_64 rng(31);
    Environment env(ctx.model);
    Evaluator ev(env, ctx.cat, ctx.spec);
    std::vector<BitVec> pool;
    for (const auto& [id, v] : ctx.cat.entries()) {
      (void)id;
      pool.push_back(v);
    }
    for (int t = 0; t < 25; ++t) {
      // Build the target tuple by a random form-preserving image of the
      // sources, so equivalence is guaranteed.
      BitMat m = BitMat::identity(12);
      for (int s = 0; s < 8; ++s) {
        const BitVec& c = pool[rng() % pool.size()];
        m = m * transvection_matrix(c);
      }
      BitVec u1 = pool[rng() % pool.size()];
      BitVec u2 = pool[rng() % pool.size()];
      if (u1 == u2) continue;
      std::vector<std::pair<BitVec, BitVec>> pairs = {{u1, m.apply(u1)}, {u2, m.apply(u2)}};
      Word w = find_conjugator(pairs, ctx.cat);
      BitMat got = ev.mod2(w);
      CHECK(got.apply(u1) == pairs[0].second);
      CHECK(got.apply(u2) == pairs[1].second);
    }
  }
}

TEST_CASE("commutator scripts certify the factorizations") {
  for (int g : {44, 29, 30, 43}) {
    CAPTURE(g);
    Script s = commutator_scripts(g);
    Ctx ctx(g, ModelKind::Dihedral);
    RunOptions opts;
    RunReport r = run_script(s, ctx.cat, ctx.spec, opts);
    CHECK(r.pass);
    int expected_words = (g % 4 == 0 || g % 4 == 1) ? 2 : 3;
    for (const auto& st : s.steps) {
      if (st.kind == Step::Kind::AssertGeneration) {
        CHECK(static_cast<int>(st.gens.size()) == expected_words);
      }
    }
  }
  for (int g : {8, 9}) {
    CAPTURE(g);
    Script s = commutator_scripts(g);
    for (const auto& st : s.steps) {
      if (st.kind == Step::Kind::AssertGeneration) CHECK(st.gens.size() == 3);
    }
  }
  for (int g : {10, 7}) {
    Script s = commutator_scripts(g);
    for (const auto& st : s.steps) {
      if (st.kind == Step::Kind::AssertGeneration) CHECK(st.gens.size() == 4);
    }
  }
}

TEST_CASE("script DSL round trip") {
  for (const char* id : {"t9odd", "t8even", "prop41"}) {
    int g = std::string(id) == "t8even" ? 8 : 9;
    Script s = builtin_script(id, g);
    std::string text = script_to_text(s);
    Script back = script_from_text(text);
    CHECK(back.id == s.id);
    CHECK(back.genus == s.genus);
    CHECK(back.model == s.model);
    REQUIRE(back.steps.size() == s.steps.size());
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      CHECK(back.steps[i].to_text() == s.steps[i].to_text());
    }
    // A reparsed script runs identically.
    Ctx ctx(g, s.model);
    RunReport r1 = run_script(s, ctx.cat, ctx.spec);
    RunReport r2 = run_script(back, ctx.cat, ctx.spec);
    CHECK(r1.pass == r2.pass);
  }
}

TEST_CASE("deferred generation is reported, not failed") {
  RunReport r = run("t29", 29);
  CHECK(r.pass);
  CHECK(r.deferred == 1);
  bool saw = false;
  for (const auto& st : r.steps) {
    if (st.status == StepResult::Status::Deferred) {
      saw = true;
      CHECK(st.kind == Step::Kind::AssertGeneration);
      CHECK(st.detail.find("deferred") != std::string::npos);
    }
  }
  CHECK(saw);
}

TEST_CASE("class image law follows from passing image steps") {
  // For every passing AssertClassImage, conjugating the twist matches the
  // transvection of the mapped class.
  Script s = builtin_script("t29", 29);
  Ctx ctx(29, s.model);
  Environment env(ctx.model);
  Evaluator ev(env, ctx.cat, ctx.spec);
  int checked = 0;
  for (const auto& st : s.steps) {
    if (st.kind == Step::Kind::Define) {
      env.define(st.label, st.word);
      continue;
    }
    if (st.kind != Step::Kind::AssertClassImage) continue;
    BitMat m = ev.mod2(st.word);
    for (const auto& [src, dst] : st.pairs) {
      BitMat lhs = m * transvection_matrix(ctx.cat.cls(src)) * mat_inv(m);
      CHECK(lhs == transvection_matrix(ctx.cat.cls(dst)));
      ++checked;
    }
  }
  CHECK(checked > 20);
}
