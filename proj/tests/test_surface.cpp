#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "twistgen/surface.hpp"

using namespace twistgen;

namespace {

BitVec vec(int dim, std::initializer_list<int> idx) {
  return BitVec::from_indices(dim, std::vector<int>(idx));
}

}  // namespace

TEST_CASE("genus model parameters") {
  GenusModel m9 = GenusModel::make(9, ModelKind::Cyclic);
  CHECK(m9.r == 4);
  CHECK(m9.k == 2);
  CHECK(m9.block == 9);
  GenusModel m8 = GenusModel::make(8, ModelKind::Cyclic);
  CHECK(m8.r == 3);
  CHECK(m8.block == 7);
  CHECK(GenusModel::make(30, ModelKind::Dihedral).block == 27);
  CHECK(GenusModel::make(43, ModelKind::Dihedral).block == 41);
  CHECK(GenusModel::make(43, ModelKind::Cyclic).block == 43);
  CHECK_THROWS_AS(GenusModel::make(4, ModelKind::Cyclic), std::invalid_argument);
}

TEST_CASE("standard rotation per residue class") {
  SUBCASE("g=9 full cycle") {
    auto [tm, ts] = standard_rotation(GenusModel::make(9, ModelKind::Dihedral));
    for (int i = 1; i <= 8; ++i) CHECK(ts.image_of(i) == i + 1);
    CHECK(ts.image_of(9) == 1);
    CHECK(tm.pow(9) == BitMat::identity(9));
    CHECK_FALSE(tm.pow(3) == BitMat::identity(9));
  }
  SUBCASE("g=8 seven-cycle with x8 fixed") {
    auto [tm, ts] = standard_rotation(GenusModel::make(8, ModelKind::Dihedral));
    CHECK(ts.image_of(7) == 1);
    CHECK(ts.image_of(8) == 8);
    CHECK(tm.pow(7) == BitMat::identity(8));
  }
  SUBCASE("g=14 dihedral fixes three crosscaps") {
    auto [tm, ts] = standard_rotation(GenusModel::make(14, ModelKind::Dihedral));
    CHECK(ts.image_of(11) == 1);
    for (int j : {12, 13, 14}) CHECK(ts.image_of(j) == j);
    CHECK(tm.pow(11) == BitMat::identity(14));
  }
  SUBCASE("g=11 dihedral fixes two crosscaps") {
    auto [tm, ts] = standard_rotation(GenusModel::make(11, ModelKind::Dihedral));
    CHECK(ts.image_of(9) == 1);
    CHECK(ts.image_of(10) == 10);
    CHECK(ts.image_of(11) == 11);
  }
  SUBCASE("cyclic order g or g-1") {
    for (int g : {9, 11, 13, 15}) {
      auto [tm, ts] = standard_rotation(GenusModel::make(g, ModelKind::Cyclic));
      CHECK(tm.pow(g) == BitMat::identity(g));
    }
    for (int g : {8, 10, 12}) {
      auto [tm, ts] = standard_rotation(GenusModel::make(g, ModelKind::Cyclic));
      CHECK(tm.pow(g - 1) == BitMat::identity(g));
    }
  }
}

TEST_CASE("reflections") {
  SUBCASE("invariants for all supported g") {
    for (int g = 7; g <= 16; ++g) {
      CAPTURE(g);
      GenusModel model = GenusModel::make(g, ModelKind::Dihedral);
      auto [rho1, rho2] = standard_reflections(model);
      auto [tm, ts] = standard_rotation(model);
      (void)tm;
      CHECK(rho1 * rho1 == SignedPermMat::identity(g));
      CHECK(rho2 * rho2 == SignedPermMat::identity(g));
      CHECK(rho2 * rho1 == ts);
      int m = (g % 4 == 0 || g % 4 == 2) ? 2 * model.k : 2 * model.k + 1;
      CHECK(ts.pow(m) * rho1 * ts.pow(-m) == rho2);
      CHECK(D_hom(rho1) == 1);
      CHECK(D_hom(rho2) == 1);
      CHECK(D_hom(ts) == 1);
    }
  }
  SUBCASE("rho2 rho1 = T at g=12 as signed matrices") {
    GenusModel model = GenusModel::make(12, ModelKind::Dihedral);
    auto [rho1, rho2] = standard_reflections(model);
    CHECK(rho2 * rho1 == standard_rotation(model).second);
  }
  SUBCASE("D(rho1) = 1 at g=13") {
    auto [rho1, rho2] = standard_reflections(GenusModel::make(13, ModelKind::Dihedral));
    CHECK(D_hom(rho1) == 1);
    (void)rho2;
  }
  SUBCASE("cyclic arrangement has no reflections for g = 2,3 mod 4") {
    CHECK_THROWS_AS(standard_reflections(GenusModel::make(10, ModelKind::Cyclic)),
                    std::invalid_argument);
    CHECK_THROWS_AS(standard_reflections(GenusModel::make(11, ModelKind::Cyclic)),
                    std::invalid_argument);
  }
  SUBCASE("identity involution fails the constraints") {
    GenusModel model = GenusModel::make(9, ModelKind::Dihedral);
    std::vector<int> sigma(9);
    for (int i = 0; i < 9; ++i) sigma[static_cast<size_t>(i)] = i + 1;
    std::vector<std::string> diag;
    auto sols = solve_reflection_signs(model, sigma, &diag);
    CHECK(sols.empty());
    CHECK_FALSE(diag.empty());
  }
  SUBCASE("every returned solution passes the postconditions") {
    GenusModel model = GenusModel::make(8, ModelKind::Dihedral);
    auto [tm, ts] = standard_rotation(model);
    (void)tm;
    // Axis-0 dihedral reflection of the 7-cycle, fixing x8.
    std::vector<int> sigma(8);
    for (int p = 0; p < 7; ++p) sigma[static_cast<size_t>(p)] = ((0 - p) % 7 + 7) % 7 + 1;
    sigma[7] = 8;
    auto sols = solve_reflection_signs(model, sigma);
    CHECK_FALSE(sols.empty());
    for (const auto& s : sols) {
      CHECK(s.rho1 * s.rho1 == SignedPermMat::identity(8));
      CHECK(s.rho2 * s.rho1 == ts);
      CHECK(D_hom(s.rho1) == 1);
      CHECK(D_hom(s.rho2) == 1);
    }
  }
}

TEST_CASE("catalog construction") {
  SUBCASE("chain anchors at odd genus") {
    GenusModel model = GenusModel::make(9, ModelKind::Cyclic);
    CurveCatalog cat = build_catalog(model);
    CHECK(cat.cls({Family::A, 1}) == vec(9, {1, 2}));
    CHECK(cat.cls({Family::B, 2}) == vec(9, {4, 5}));
    CHECK(cat.cls({Family::C, 3}) == vec(9, {7, 8}));
    auto [tm, ts] = standard_rotation(model);
    (void)ts;
    // T^2(b_r) = a1 and T(a1) = b1.
    CHECK(tm.pow(2).apply(cat.cls({Family::B, model.r})) == cat.cls({Family::A, 1}));
    CHECK(tm.apply(cat.cls({Family::A, 1})) == cat.cls({Family::B, 1}));
  }
  SUBCASE("u-family anchor at g = 4k+3") {
    GenusModel model = GenusModel::make(11, ModelKind::Dihedral);
    CurveCatalog cat = build_catalog(model);
    CHECK(cat.cls({Family::U, 4 * model.k + 1}) == cat.cls({Family::C, 2 * model.k}));
    CHECK(cat.cls({Family::U, 3}) == vec(11, {3, 10}));
  }
  SUBCASE("d-family wrap at even genus") {
    GenusModel model = GenusModel::make(44, ModelKind::Cyclic);
    CurveCatalog cat = build_catalog(model);
    auto [tm, ts] = standard_rotation(model);
    (void)ts;
    // Conjugating d33 by T^-33 lands on d_{g-1}.
    CHECK(tm.pow(-33).apply(cat.cls({Family::D, 33})) == cat.cls({Family::D, 43}));
    CHECK(cat.normalize({Family::D, 44}).index == 1);
  }
  SUBCASE("index errors") {
    GenusModel model = GenusModel::make(9, ModelKind::Cyclic);
    CurveCatalog cat = build_catalog(model);
    CHECK_THROWS_AS(cat.cls({Family::D, 8}), std::invalid_argument);   // d_{g-1}, odd genus
    CHECK_THROWS_AS(cat.cls({Family::U, 3}), std::invalid_argument);   // wrong model
    CHECK_THROWS_AS(cat.cls({Family::B, 5}), std::invalid_argument);   // beyond b_r
    CHECK_THROWS_AS(cat.cls({Family::C, 0}), std::invalid_argument);
    CHECK(cat.cls({Family::F, 10}) == cat.cls({Family::F, 1}));        // index wrap
  }
  SUBCASE("odd-weight seed rejected") {
    GenusModel model = GenusModel::make(9, ModelKind::Cyclic);
    SeedClasses bad{vec(9, {1, 2, 3}), vec(9, {2, 3}), ""};
    CHECK_THROWS_AS(build_catalog(model, bad), std::invalid_argument);
  }
}

TEST_CASE("catalog validation") {
  SUBCASE("default catalogs validate at the acceptance genera") {
    for (int g : {8, 9, 27, 29}) {
      CAPTURE(g);
      GenusModel model = GenusModel::make(g, ModelKind::Cyclic);
      auto report = validate_catalog(build_catalog(model), standard_spec(model));
      CHECK(report.pass);
      CHECK(report.failures() == 0);
    }
    for (int g : {30, 43}) {
      CAPTURE(g);
      GenusModel model = GenusModel::make(g, ModelKind::Dihedral);
      auto report = validate_catalog(build_catalog(model), standard_spec(model));
      CHECK(report.pass);
    }
  }
  SUBCASE("corrupting b3 breaks its chain constraint") {
    GenusModel model = GenusModel::make(9, ModelKind::Cyclic);
    CurveCatalog cat = build_catalog(model);
    cat.override_class({Family::B, 3}, vec(9, {6, 8}));
    auto report = validate_catalog(cat, standard_spec(model));
    CHECK_FALSE(report.pass);
    bool found = false;
    for (const auto& e : report.entries) {
      if (!e.pass && e.constraint.find("T(b3)=c3") != std::string::npos) found = true;
    }
    CHECK(found);
  }
  SUBCASE("every class is two-sided") {
    for (int g : {9, 12, 14, 15}) {
      GenusModel model = GenusModel::make(g, ModelKind::Dihedral);
      CurveCatalog cat = build_catalog(model);
      for (const auto& [id, cls] : cat.entries()) {
        CAPTURE(g);
        CAPTURE(id.to_string());
        CHECK(cls.even_weight());
        CHECK_FALSE(cls.is_zero());
      }
    }
  }
}

TEST_CASE("D homomorphism values") {
  for (int g = 7; g <= 16; ++g) {
    CAPTURE(g);
    GenusModel model = GenusModel::make(g, ModelKind::Dihedral);
    MappingClassSpec spec = standard_spec(model);
    CHECK(D_hom(spec.T_signed) == 1);
    CHECK(D_hom(SignedPermMat::identity(g)) == 1);
    REQUIRE(spec.has_reflections());
    CHECK(D_hom(*spec.rho1) == 1);
    CHECK(D_hom(*spec.rho2) == 1);
  }
  // D(T) = 1 at g = 29/30 in both arrangements.
  CHECK(D_hom(standard_spec(GenusModel::make(29, ModelKind::Cyclic)).T_signed) == 1);
  CHECK(D_hom(standard_spec(GenusModel::make(30, ModelKind::Dihedral)).T_signed) == 1);
}

TEST_CASE("catalog file format") {
  GenusModel model = GenusModel::make(9, ModelKind::Cyclic);
  CurveCatalog cat = build_catalog(model);
  std::string text = catalog_to_text(cat);
  SUBCASE("round trip is bit-exact") {
    CurveCatalog back = catalog_from_text(text);
    CHECK(back.entries() == cat.entries());
    CHECK(catalog_to_text(back) == text);
  }
  SUBCASE("a1 record appears first") {
    auto pos = text.find("a1 = x1+x2");
    REQUIRE(pos != std::string::npos);
    for (const auto& [id, cls] : cat.entries()) {
      (void)cls;
      auto other = text.find("\n" + id.to_string() + " = ");
      if (id == CurveId{Family::A, 1}) continue;
      CHECK(other > pos);
    }
  }
  SUBCASE("seeds file round trip") {
    std::string seeds_text = seeds_to_text(model, cat.seeds());
    SeedClasses back = seeds_from_text(seeds_text, model);
    CHECK(back.a2 == cat.seeds().a2);
    CHECK(back.f1 == cat.seeds().f1);
    CHECK_THROWS_AS(seeds_from_text(seeds_text, GenusModel::make(11, ModelKind::Cyclic)),
                    std::invalid_argument);
  }
}

TEST_CASE("seed inference returns the shipped defaults") {
  // The full run at g=29 is exercised by the acceptance suite; the g=9
  // space here keeps the unit test fast.
  GenusModel model = GenusModel::make(9, ModelKind::Cyclic);
  auto found = infer_seed_classes(model);
  SeedClasses def = default_seeds(model);
  bool has_default = false;
  for (const auto& s : found) {
    CHECK(s.a2.even_weight());
    CHECK(s.f1.even_weight());
    if (s.a2 == def.a2 && s.f1 == def.f1) has_default = true;
  }
  CHECK(has_default);
  // The degenerate assignment a2 = [a1] is rejected.
  for (const auto& s : found) {
    CHECK_FALSE(s.a2 == vec(9, {1, 2}));
  }
}
