#include "twistgen/proofscripts.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "twistgen/detail/script_checks.hpp"

namespace twistgen {

namespace {

std::uint64_t signed_hash(const SignedPermMat& p) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
    h ^= h >> 31;
  };
  mix(static_cast<std::uint64_t>(p.dim()));
  for (int i = 1; i <= p.dim(); ++i) {
    mix(static_cast<std::uint64_t>(p.image_of(i)));
    mix(static_cast<std::uint64_t>(p.sign_of(i) + 2));
  }
  return h;
}

}  // namespace

std::string Step::to_text() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Define:
      os << "def " << label << " = " << format_word(word, true);
      break;
    case Kind::AssertRepEqual:
      os << (level == CheckLevel::Signed ? "assert_eq_signed " : "assert_eq ")
         << format_word(word, true) << " == " << format_word(rhs, true);
      break;
    case Kind::AssertClassImage: {
      os << "assert_img " << format_word(word, true) << " : ";
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) os << ", ";
        os << pairs[i].first.to_string() << "->" << pairs[i].second.to_string();
      }
      break;
    }
    case Kind::AssertGeneration: {
      os << "assert_gen [";
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) os << ", ";
        os << format_word(gens[i], true);
      }
      os << "] == " << reference;
      break;
    }
  }
  return os.str();
}

namespace {

// Script construction helper: words are assembled against the model so that
// family indices carry the model's wrap arithmetic (the paper's small-genus
// parentheticals are exactly these wraps).
class Builder {
 public:
  Builder(std::string id, int g, ModelKind kind, std::string title)
      : model_(GenusModel::make(g, kind)) {
    script_.id = std::move(id);
    script_.genus = g;
    script_.model = kind;
    script_.title = std::move(title);
  }

  const GenusModel& model() const { return model_; }
  int g() const { return model_.g; }
  int r() const { return model_.r; }
  int k() const { return model_.k; }
  int block() const { return model_.block; }

  int fidx(int i) const { return ((i - 1) % block() + block()) % block() + 1; }
  int gidx(int i) const { return fidx(i); }
  int uidx(int i) const { return fidx(i); }
  int didx(int i) const {
    if (model_.odd) return i;
    int m = model_.g - 1;
    return ((i - 1) % m + m) % m + 1;
  }

  static Word T(long long e = 1) { return Word::rot(e); }
  Word A(int i, long long e = 1) const { return Word::twist(Family::A, i, e); }
  Word Bw(int i, long long e = 1) const { return Word::twist(Family::B, i, e); }
  Word Cw(int i, long long e = 1) const { return Word::twist(Family::C, i, e); }
  Word Dw(int i, long long e = 1) const { return Word::twist(Family::D, didx(i), e); }
  Word E(long long e = 1) const { return Word::twist(Family::E, 1, e); }
  Word F(int i, long long e = 1) const { return Word::twist(Family::F, fidx(i), e); }
  Word Gm(int i, long long e = 1) const { return Word::twist(Family::Gamma, gidx(i), e); }
  Word U(int i, long long e = 1) const { return Word::twist(Family::U, uidx(i), e); }
  static Word L(const std::string& label, long long e = 1) { return Word::named(label, e); }

  CurveId a(int i) const { return {Family::A, i}; }
  CurveId b(int i) const { return {Family::B, i}; }
  CurveId c(int i) const { return {Family::C, i}; }
  CurveId d(int i) const { return {Family::D, didx(i)}; }
  CurveId f(int i) const { return {Family::F, fidx(i)}; }
  CurveId gm(int i) const { return {Family::Gamma, gidx(i)}; }
  CurveId u(int i) const { return {Family::U, uidx(i)}; }

  void note(const std::string& s) { script_.variant_notes.push_back(s); }

  void def(const std::string& label, const Word& w) {
    Step s;
    s.kind = Step::Kind::Define;
    s.label = label;
    s.word = w;
    script_.steps.push_back(std::move(s));
  }

  void aeq(const Word& lhs, const Word& rhs, CheckLevel level = CheckLevel::Mod2) {
    Step s;
    s.kind = Step::Kind::AssertRepEqual;
    s.word = lhs;
    s.rhs = rhs;
    s.level = level;
    script_.steps.push_back(std::move(s));
  }

  void img(const Word& w, std::vector<std::pair<CurveId, CurveId>> pairs) {
    Step s;
    s.kind = Step::Kind::AssertClassImage;
    s.word = w;
    s.pairs = std::move(pairs);
    script_.steps.push_back(std::move(s));
  }

  void agen(std::vector<Word> gens) {
    Step s;
    s.kind = Step::Kind::AssertGeneration;
    s.gens = std::move(gens);
    s.reference = "omori";
    script_.steps.push_back(std::move(s));
  }

  Script take() { return std::move(script_); }

 private:
  GenusModel model_;
  Script script_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// t29: odd g >= 27, generators T and Gm10 C2^-1 F18 C12^-1.

Script build_t29(int g) {
  require(g % 2 == 1 && g >= 27, "t29 requires odd genus >= 27 (bound 27), got " + std::to_string(g));
  Builder b("t29", g, ModelKind::Cyclic, "two generators, odd genus");

  b.def("G1", b.Gm(10) * b.Cw(2, -1) * b.F(18) * b.Cw(12, -1));
  b.img(b.T(-4), {{b.gm(10), b.gm(6)}, {b.c(2), b.a(1)}, {b.f(18), b.f(14)}, {b.c(12), b.c(10)}});
  b.def("G2", b.Gm(6) * b.A(1, -1) * b.F(14) * b.Cw(10, -1));
  b.aeq(b.T(-4) * b.L("G1") * b.T(4), b.L("G2"));
  b.def("PHI1", b.L("G2") * b.L("G1", -1));
  b.img(b.L("PHI1"), {{b.gm(6), b.c(2)}, {b.a(1), b.a(1)}, {b.f(14), b.f(14)}, {b.c(10), b.c(10)}});
  b.def("G3", b.Cw(2) * b.A(1, -1) * b.F(14) * b.Cw(10, -1));
  b.aeq(b.L("PHI1") * b.L("G2") * b.L("PHI1", -1), b.L("G3"));
  b.aeq(b.L("G2") * b.L("G3", -1), b.Gm(6) * b.Cw(2, -1));
  b.img(b.T(4), {{b.gm(6), b.gm(10)}, {b.c(2), b.c(4)}});
  b.aeq(b.T(4) * b.Gm(6) * b.Cw(2, -1) * b.T(-4), b.Gm(10) * b.Cw(4, -1));
  b.def("G4", b.Cw(4) * b.Cw(2, -1) * b.F(18) * b.Cw(12, -1));
  b.aeq(b.Cw(4) * b.Gm(10, -1) * b.L("G1"), b.L("G4"));
  b.def("G5", b.Bw(4) * b.Bw(2, -1) * b.F(17) * b.Bw(12, -1));
  b.img(b.T(-1), {{b.c(4), b.b(4)}, {b.c(2), b.b(2)}, {b.f(18), b.f(17)}, {b.c(12), b.b(12)}});
  b.aeq(b.T(-1) * b.L("G4") * b.T(1), b.L("G5"));
  b.def("PHI2", b.L("G4") * b.L("G5"));
  b.img(b.L("PHI2"), {{b.c(2), b.b(2)}, {b.a(1), b.a(1)}, {b.f(14), b.f(14)}, {b.c(10), b.c(10)}});
  b.def("G6", b.Bw(2) * b.A(1, -1) * b.F(14) * b.Cw(10, -1));
  b.aeq(b.L("PHI2") * b.L("G3") * b.L("PHI2", -1), b.L("G6"));
  b.aeq(b.L("G3") * b.L("G6", -1), b.Cw(2) * b.Bw(2, -1));
  b.def("G7", b.Cw(3) * b.Cw(1, -1) * b.F(16) * b.Cw(11, -1));
  b.img(b.T(-2), {{b.c(4), b.c(3)}, {b.c(2), b.c(1)}, {b.f(18), b.f(16)}, {b.c(12), b.c(11)}});
  b.aeq(b.T(-2) * b.L("G4") * b.T(2), b.L("G7"));

  // T^4 c11 wraps to the d1 class exactly when g = 27.
  CurveId fourth = g == 27 ? CurveId{Family::D, 1} : CurveId{Family::C, 13};
  Word fourth_tw = g == 27 ? b.Dw(1, -1) : b.Cw(13, -1);
  if (g == 27) b.note("g=27 variant: G8/G9 close with D1 instead of C13");
  b.def("G8", b.Cw(5) * b.Cw(3, -1) * b.F(20) * fourth_tw);
  b.img(b.T(4), {{b.c(3), b.c(5)}, {b.c(1), b.c(3)}, {b.f(16), b.f(20)}, {b.c(11), fourth}});
  b.aeq(b.T(4) * b.L("G7") * b.T(-4), b.L("G8"));
  b.def("PHI3", b.L("G7") * b.L("G5"));
  b.img(b.L("PHI3"), {{b.c(3), b.b(4)}, {b.c(5), b.c(5)}, {b.f(20), b.f(20)}, {fourth, fourth}});
  b.def("G9", b.Cw(5) * b.Bw(4, -1) * b.F(20) * fourth_tw);
  b.aeq(b.L("PHI3") * b.L("G8") * b.L("PHI3", -1), b.L("G9"));
  b.aeq(b.L("G8", -1) * b.L("G9"), b.Cw(3) * b.Bw(4, -1));
  b.img(b.T(-4), {{b.b(3), b.b(1)}, {b.b(4), b.b(2)}});
  b.aeq(b.T(-4) * b.Bw(3) * b.Cw(3, -1) * b.Cw(3) * b.Bw(4, -1) * b.T(4), b.Bw(1) * b.Bw(2, -1));
  b.def("G10", b.Cw(3) * b.Bw(2, -1) * b.F(16) * b.Cw(11, -1));
  b.img(b.T(-4), {{b.c(5), b.c(3)}, {b.b(4), b.b(2)}, {b.f(20), b.f(16)}, {fourth, b.c(11)}});
  b.aeq(b.T(-4) * b.L("G9") * b.T(4), b.L("G10"));
  b.def("G11", b.Cw(3) * b.Cw(2, -1) * b.F(16) * b.Cw(11, -1));
  b.aeq(b.L("G10") * b.Bw(2) * b.Cw(2, -1), b.L("G11"));
  b.def("G12", b.Bw(2) * b.Bw(1, -1) * b.F(13) * b.Bw(10, -1));
  b.img(b.T(-3), {{b.c(3), b.b(2)}, {b.c(2), b.b(1)}, {b.f(16), b.f(13)}, {b.c(11), b.b(10)}});
  b.aeq(b.T(-3) * b.L("G11") * b.T(3), b.L("G12"));
  b.img(b.T(5), {{b.f(13), b.f(18)}, {b.b(10), b.c(12)}});
  b.aeq(b.T(5) * b.Bw(1) * b.Bw(2, -1) * b.L("G12") * b.T(-5), b.F(18) * b.Cw(12, -1));
  b.aeq(b.L("G1") * b.F(18, -1) * b.Cw(12), b.Gm(10) * b.Cw(2, -1));
  b.img(b.T(-2), {{b.gm(10), b.gm(8)}, {b.c(2), b.c(1)}});
  b.aeq(b.T(-2) * b.Gm(10) * b.Cw(2, -1) * b.T(2), b.Gm(8) * b.Cw(1, -1));
  b.aeq(b.Cw(4) * b.Gm(10, -1) * b.Gm(10) * b.Cw(2, -1), b.Cw(4) * b.Cw(2, -1));
  b.img(b.T(-2), {{b.c(2), b.c(1)}, {b.c(4), b.c(3)}});
  b.aeq(b.T(-2) * b.Cw(2) * b.Cw(4, -1) * b.T(2), b.Cw(1) * b.Cw(3, -1));
  b.aeq(b.Gm(8) * b.Cw(1, -1) * b.Cw(1) * b.Cw(3, -1) * b.Cw(3) * b.Bw(4, -1), b.Gm(8) * b.Bw(4, -1));
  b.img(b.T(-7), {{b.gm(8), b.gm(1)}, {b.b(4), b.a(1)}});
  b.aeq(b.T(-7) * b.Gm(8) * b.Bw(4, -1) * b.T(7), b.Gm(1) * b.A(1, -1));
  b.aeq(b.Gm(1) * b.A(1, -1), b.A(2) * b.A(1, -1));
  b.aeq(b.Cw(12) * b.Cw(2) * b.Gm(10, -1) * b.L("G1"), b.F(18));
  b.img(b.T(-17), {{b.f(18), b.f(1)}});
  b.aeq(b.T(-17) * b.F(18) * b.T(17), b.F(1));
  b.aeq(b.A(1) * b.F(1) * b.A(1, -1), b.E());
  b.agen({Builder::T(), b.L("G1")});
  return b.take();
}

// ---------------------------------------------------------------------------
// Shared middle section of t42 / t4k3: the fourth factor is D33 (even
// cyclic) or U33 (dihedral, g = 3 mod 4); every other move is identical.

void chain_middle(Builder& b, const std::string& main_label, Family X, const char* p) {
  auto Xw = [&](int i, long long e = 1) {
    return X == Family::D ? b.Dw(i, e) : b.U(i, e);
  };
  auto xc = [&](int i) { return X == Family::D ? b.d(i) : b.u(i); };
  auto lbl = [&](int i) { return std::string(p) + std::to_string(i); };
  Word MAIN = Builder::L(main_label);

  b.def(lbl(6), b.Gm(6) * b.A(1, -1) * b.F(14) * Xw(33, -1));
  b.img(b.T(-4), {{b.gm(10), b.gm(6)}, {b.c(2), b.a(1)}, {b.f(18), b.f(14)}, {xc(33), xc(29)}});
  b.aeq(b.T(-4) * MAIN * b.T(4) * Xw(29) * Xw(33, -1), Builder::L(lbl(6)));
  b.def("PHI3", Builder::L(lbl(6)) * Builder::L(main_label, -1));
  b.img(Builder::L("PHI3"), {{b.gm(6), b.c(2)}, {b.a(1), b.a(1)}, {b.f(14), b.f(14)}, {xc(33), xc(33)}});
  b.def(lbl(7), b.Cw(2) * b.A(1, -1) * b.F(14) * Xw(33, -1));
  b.aeq(Builder::L("PHI3") * Builder::L(lbl(6)) * Builder::L("PHI3", -1), Builder::L(lbl(7)));
  b.aeq(Builder::L(lbl(6)) * Builder::L(lbl(7), -1), b.Gm(6) * b.Cw(2, -1));
  b.img(b.T(4), {{b.gm(6), b.gm(10)}, {b.c(2), b.c(4)}});
  b.aeq(b.T(4) * b.Gm(6) * b.Cw(2, -1) * b.T(-4), b.Gm(10) * b.Cw(4, -1));
  b.def(lbl(8), b.Cw(4) * b.Cw(2, -1) * b.F(18) * Xw(33, -1));
  b.aeq(b.Cw(4) * b.Gm(10, -1) * MAIN, Builder::L(lbl(8)));
  b.def(lbl(9), b.Bw(4) * b.Bw(2, -1) * b.F(17) * Xw(33, -1));
  b.img(b.T(-1), {{b.c(4), b.b(4)}, {b.c(2), b.b(2)}, {b.f(18), b.f(17)}, {xc(33), xc(32)}});
  b.aeq(b.T(-1) * Builder::L(lbl(8)) * b.T(1) * Xw(32) * Xw(33, -1), Builder::L(lbl(9)));
  b.def("PHI4", Builder::L(lbl(8)) * Builder::L(lbl(9)));
  b.img(Builder::L("PHI4"), {{b.c(2), b.b(2)}, {b.a(1), b.a(1)}, {b.f(14), b.f(14)}, {xc(33), xc(33)}});
  b.def(lbl(10), b.Bw(2) * b.A(1, -1) * b.F(14) * Xw(33, -1));
  b.aeq(Builder::L("PHI4") * Builder::L(lbl(7)) * Builder::L("PHI4", -1), Builder::L(lbl(10)));
  b.aeq(Builder::L(lbl(10)) * Builder::L(lbl(7), -1), b.Bw(2) * b.Cw(2, -1));
  b.img(b.T(1), {{b.b(2), b.c(2)}, {b.c(2), b.b(3)}});
  b.aeq(b.T(1) * b.Bw(2) * b.Cw(2, -1) * b.T(-1), b.Cw(2) * b.Bw(3, -1));
  b.aeq(b.T(-2) * b.Bw(2) * b.Cw(2, -1) * b.Cw(2) * b.Bw(3, -1) * b.T(2), b.Bw(1) * b.Bw(2, -1));
  b.def(lbl(11), b.Cw(3) * b.Cw(1, -1) * b.F(16) * Xw(33, -1));
  b.img(b.T(-2), {{b.c(4), b.c(3)}, {b.c(2), b.c(1)}, {b.f(18), b.f(16)}, {xc(33), xc(31)}});
  b.aeq(b.T(-2) * Builder::L(lbl(8)) * b.T(2) * Xw(31) * Xw(33, -1), Builder::L(lbl(11)));
  b.def(lbl(12), b.Cw(5) * b.Cw(3, -1) * b.F(20) * Xw(33, -1));
  b.img(b.T(4), {{b.c(3), b.c(5)}, {b.c(1), b.c(3)}, {b.f(16), b.f(20)}, {xc(33), xc(37)}});
  b.aeq(b.T(4) * Builder::L(lbl(11)) * b.T(-4) * Xw(37) * Xw(33, -1), Builder::L(lbl(12)));
  b.def("PHI5", Builder::L(lbl(11)) * Builder::L(lbl(9)));
  b.img(Builder::L("PHI5"), {{b.c(3), b.b(4)}, {b.c(5), b.c(5)}, {b.f(20), b.f(20)}, {xc(33), xc(33)}});
  b.def(lbl(13), b.Cw(5) * b.Bw(4, -1) * b.F(20) * Xw(33, -1));
  b.aeq(Builder::L("PHI5") * Builder::L(lbl(12)) * Builder::L("PHI5", -1), Builder::L(lbl(13)));
  b.def(lbl(14), b.Cw(3) * b.Bw(2, -1) * b.F(16) * Xw(33, -1));
  b.img(b.T(-4), {{b.c(5), b.c(3)}, {b.b(4), b.b(2)}, {b.f(20), b.f(16)}, {xc(33), xc(29)}});
  b.aeq(b.T(-4) * Builder::L(lbl(13)) * b.T(4) * Xw(29) * Xw(33, -1), Builder::L(lbl(14)));
  b.def(lbl(15), b.Cw(2, -1) * b.Cw(3) * b.F(16) * Xw(33, -1));
  b.aeq(Builder::L(lbl(14)) * b.Bw(2) * b.Cw(2, -1), Builder::L(lbl(15)));
  b.def(lbl(16), b.Bw(1, -1) * b.Bw(2) * b.F(13) * Xw(33, -1));
  b.img(b.T(-3), {{b.c(2), b.b(1)}, {b.c(3), b.b(2)}, {b.f(16), b.f(13)}, {xc(33), xc(30)}});
  b.aeq(b.T(-3) * Builder::L(lbl(15)) * b.T(3) * Xw(30) * Xw(33, -1), Builder::L(lbl(16)));
  b.aeq(b.Bw(1) * b.Bw(2, -1) * Builder::L(lbl(16)), b.F(13) * Xw(33, -1));
  b.img(b.T(5), {{b.f(13), b.f(18)}, {xc(33), xc(38)}});
  b.aeq(b.T(5) * b.F(13) * Xw(33, -1) * b.T(-5) * Xw(38) * Xw(33, -1), b.F(18) * Xw(33, -1));
  b.aeq(MAIN * b.F(18, -1) * Xw(33), b.Gm(10) * b.Cw(2, -1));
  b.img(b.T(-2), {{b.gm(10), b.gm(8)}, {b.c(2), b.c(1)}});
  b.aeq(b.T(-2) * b.Gm(10) * b.Cw(2, -1) * b.T(2), b.Gm(8) * b.Cw(1, -1));
  b.aeq(b.Cw(4) * b.Gm(10, -1) * b.Gm(10) * b.Cw(2, -1), b.Cw(4) * b.Cw(2, -1));
  b.img(b.T(2), {{b.c(4), b.c(5)}, {b.c(2), b.c(3)}});
  b.aeq(b.T(2) * b.Cw(4) * b.Cw(2, -1) * b.T(-2), b.Cw(5) * b.Cw(3, -1));
  b.img(b.T(-2), {{b.c(2), b.c(1)}, {b.c(4), b.c(3)}});
  b.aeq(b.T(-2) * b.Cw(2) * b.Cw(4, -1) * b.T(2), b.Cw(1) * b.Cw(3, -1));
  b.aeq(Builder::L(lbl(13), -1) * Builder::L(lbl(12)), b.Bw(4) * b.Cw(3, -1));
  b.aeq(b.Bw(4) * b.Cw(3, -1) * b.Cw(3) * b.Cw(5, -1), b.Bw(4) * b.Cw(5, -1));
  b.aeq(b.Gm(8) * b.Cw(1, -1) * b.Cw(1) * b.Cw(3, -1) * b.Cw(3) * b.Cw(5, -1) * b.Cw(5) * b.Bw(4, -1),
        b.Gm(8) * b.Bw(4, -1));
  b.img(b.T(-7), {{b.gm(8), b.gm(1)}, {b.b(4), b.a(1)}});
  b.aeq(b.T(-7) * b.Gm(8) * b.Bw(4, -1) * b.T(7), b.A(2) * b.A(1, -1));
}

// t42: even g >= 42, generators T and Gm10 C2^-1 F18 D33^-1.
Script build_t42(int g) {
  require(g % 2 == 0 && g >= 42, "t42 requires even genus >= 42 (bound 42), got " + std::to_string(g));
  Builder b("t42", g, ModelKind::Cyclic, "two generators, even genus");

  b.def("H1", b.Gm(10) * b.Cw(2, -1) * b.F(18) * b.Dw(33, -1));
  int w44 = b.didx(44);
  if (w44 != 44) b.note("g=" + std::to_string(g) + " variant: H2 closes with D" + std::to_string(w44));
  b.def("H2", b.Gm(21) * b.Bw(8, -1) * b.F(29) * b.Dw(44, -1));
  b.img(b.T(11), {{b.gm(10), b.gm(21)}, {b.c(2), b.b(8)}, {b.f(18), b.f(29)}, {b.d(33), b.d(44)}});
  b.aeq(b.T(11) * b.L("H1") * b.T(-11), b.L("H2"));
  b.def("PHI1", b.L("H2") * b.L("H1"));
  b.img(b.L("PHI1"), {{b.d(44), b.d(33)}, {b.gm(21), b.gm(21)}, {b.b(8), b.b(8)}, {b.f(29), b.f(29)}});
  b.def("H3", b.Gm(21) * b.Bw(8, -1) * b.F(29) * b.Dw(33, -1));
  b.aeq(b.L("PHI1") * b.L("H2") * b.L("PHI1", -1), b.L("H3"));
  b.def("H4", b.Gm(22) * b.Cw(8, -1) * b.F(30) * b.Dw(34, -1));
  b.img(b.T(1), {{b.gm(21), b.gm(22)}, {b.b(8), b.c(8)}, {b.f(29), b.f(30)}, {b.d(33), b.d(34)}});
  b.aeq(b.T(1) * b.L("H3") * b.T(-1), b.L("H4"));
  b.def("PHI2", b.L("H4") * b.L("H1"));
  b.img(b.L("PHI2"), {{b.d(34), b.d(33)}, {b.gm(22), b.gm(22)}, {b.c(8), b.c(8)}, {b.f(30), b.f(30)}});
  b.def("H5", b.Gm(22) * b.Cw(8, -1) * b.F(30) * b.Dw(33, -1));
  b.aeq(b.L("PHI2") * b.L("H4") * b.L("PHI2", -1), b.L("H5"));
  b.aeq(b.L("H4", -1) * b.L("H5"), b.Dw(34) * b.Dw(33, -1));
  chain_middle(b, "H1", Family::D, "H");
  b.def("W1", b.F(18, -1) * b.Dw(33) * b.Bw(16));
  b.img(b.L("W1"), {{b.f(18), b.f(18)}, {b.d(33), b.b(16)}});
  b.img(b.T(-17), {{b.f(18), b.f(1)}});
  b.aeq(b.T(-17) * b.F(18) * b.T(17), b.F(1));
  b.aeq(b.A(1) * b.F(1) * b.A(1, -1), b.E());
  b.aeq(b.F(18) * b.F(18, -1) * b.Dw(33), b.Dw(33));
  b.img(b.T(-33), {{b.d(33), b.d(g - 1)}});
  b.aeq(b.T(-33) * b.Dw(33) * b.T(33), b.Dw(g - 1));
  b.agen({Builder::T(), b.L("H1")});
  return b.take();
}

// t9odd: odd g >= 9, generators T, A1 A2^-1, F1 B2^-1.
Script build_t9odd(int g) {
  require(g % 2 == 1 && g >= 9, "t9odd requires odd genus >= 9 (bound 9), got " + std::to_string(g));
  Builder b("t9odd", g, ModelKind::Cyclic, "three generators, odd genus");

  b.img(b.T(-3), {{b.f(1), b.f(g - 2)}, {b.b(2), b.a(1)}});
  b.aeq(b.T(-3) * b.F(1) * b.Bw(2, -1) * b.T(3), b.F(g - 2) * b.A(1, -1));
  b.def("PSI1", b.A(1) * b.F(g - 2, -1) * b.F(1) * b.Bw(2, -1));
  b.img(b.L("PSI1"), {{b.f(g - 2), b.f(g - 2)}, {b.a(1), b.f(1)}});
  b.aeq(b.L("PSI1") * b.F(g - 2) * b.A(1, -1) * b.L("PSI1", -1), b.F(g - 2) * b.F(1, -1));
  b.aeq(b.F(g - 2) * b.F(1, -1) * b.F(1) * b.Bw(2, -1), b.F(g - 2) * b.Bw(2, -1));
  b.aeq(b.Bw(2) * b.F(g - 2, -1) * b.F(g - 2) * b.A(1, -1), b.Bw(2) * b.A(1, -1));
  b.aeq(b.Bw(2) * b.A(1, -1) * b.A(1) * b.A(2, -1), b.Bw(2) * b.A(2, -1));
  b.img(b.T(-2), {{b.b(2), b.b(1)}, {b.a(2), b.gm(g - 1)}});
  b.aeq(b.T(-2) * b.Bw(2) * b.A(2, -1) * b.T(2), b.Bw(1) * b.Gm(g - 1, -1));
  b.def("PSI2", b.A(1) * b.Bw(2, -1) * b.Bw(1) * b.Gm(g - 1, -1));
  b.img(b.L("PSI2"), {{b.a(1), b.b(1)}, {b.b(2), b.b(2)}});
  b.aeq(b.L("PSI2") * b.A(1) * b.Bw(2, -1) * b.L("PSI2", -1), b.Bw(1) * b.Bw(2, -1));
  b.aeq(b.A(1) * b.F(1) * b.A(1, -1), b.E());
  b.agen({Builder::T(), b.A(1) * b.A(2, -1), b.F(1) * b.Bw(2, -1)});
  return b.take();
}

// t8even: even g >= 8, generators T, D{g-1} A2^-1, F1 B2^-1.
Script build_t8even(int g) {
  require(g % 2 == 0 && g >= 8, "t8even requires even genus >= 8 (bound 8), got " + std::to_string(g));
  Builder b("t8even", g, ModelKind::Cyclic, "three generators, even genus");

  b.img(b.T(-3), {{b.f(1), b.f(g - 3)}, {b.b(2), b.a(1)}});
  b.aeq(b.T(-3) * b.F(1) * b.Bw(2, -1) * b.T(3), b.F(g - 3) * b.A(1, -1));
  b.def("PSI1", b.F(g - 3) * b.A(1, -1) * b.Dw(g - 1) * b.A(2, -1));
  b.img(b.L("PSI1"), {{b.f(g - 3), b.d(g - 1)}, {b.a(1), b.a(1)}});
  b.aeq(b.L("PSI1") * b.F(g - 3) * b.A(1, -1) * b.L("PSI1", -1), b.Dw(g - 1) * b.A(1, -1));
  b.aeq(b.A(1) * b.Dw(g - 1, -1) * b.Dw(g - 1) * b.A(2, -1), b.A(1) * b.A(2, -1));
  b.def("PSI2", b.A(1) * b.Dw(g - 1, -1) * b.F(1) * b.Bw(2, -1));
  b.img(b.L("PSI2"), {{b.a(1), b.f(1)}, {b.d(g - 1), b.d(g - 1)}});
  b.aeq(b.L("PSI2") * b.A(1) * b.Dw(g - 1, -1) * b.L("PSI2", -1), b.F(1) * b.Dw(g - 1, -1));
  b.aeq(b.F(1) * b.Dw(g - 1, -1) * b.Dw(g - 1) * b.A(1, -1), b.F(1) * b.A(1, -1));
  b.aeq(b.A(1) * b.F(1, -1) * b.F(1) * b.Bw(2, -1), b.A(1) * b.Bw(2, -1));
  b.img(b.T(2), {{b.a(1), b.c(1)}, {b.b(2), b.b(3)}});
  b.aeq(b.T(2) * b.A(1) * b.Bw(2, -1) * b.T(-2), b.Cw(1) * b.Bw(3, -1));
  b.def("PSI3", b.Cw(1) * b.Bw(3, -1) * b.Bw(2) * b.A(1, -1));
  b.img(b.L("PSI3"), {{b.b(3), b.b(3)}, {b.c(1), b.b(2)}});
  b.aeq(b.L("PSI3") * b.Cw(1) * b.Bw(3, -1) * b.L("PSI3", -1), b.Bw(2) * b.Bw(3, -1));
  b.img(b.T(-2), {{b.b(3), b.b(2)}, {b.b(2), b.b(1)}});
  b.aeq(b.T(-2) * b.Bw(3) * b.Bw(2, -1) * b.T(2), b.Bw(2) * b.Bw(1, -1));
  b.aeq(b.A(1) * b.F(1) * b.A(1, -1), b.E());
  b.agen({Builder::T(), b.Dw(g - 1) * b.A(2, -1), b.F(1) * b.Bw(2, -1)});
  return b.take();
}

// t4k2: g = 4k+2 >= 30, generators T, Gm10 C2^-1 F18 B{2k}^-1 and
// C{2k-1} D{4k+1}^-1, on the dihedral arrangement.
Script build_t4k2(int g) {
  require(g % 4 == 2 && g >= 30, "t4k2 requires g = 4k+2 >= 30 (bound 30), got " + std::to_string(g));
  Builder b("t4k2", g, ModelKind::Dihedral, "three generators, g = 4k+2");
  const int k = b.k();
  const int b2k = 2 * k, c2k1 = 2 * k - 1, d41 = 4 * k + 1;

  b.def("K1", b.Gm(10) * b.Cw(2, -1) * b.F(18) * b.Bw(b2k, -1));
  b.img(b.T(-4), {{b.gm(10), b.gm(6)}, {b.c(2), b.a(1)}, {b.f(18), b.f(14)}, {b.b(b2k), b.b(b2k)}});
  b.def("K2", b.Gm(6) * b.A(1, -1) * b.F(14) * b.Bw(b2k, -1));
  b.aeq(b.T(-4) * b.L("K1") * b.T(4), b.L("K2"));
  b.def("PHI1", b.L("K2") * b.L("K1", -1));
  b.img(b.L("PHI1"), {{b.gm(6), b.c(2)}, {b.a(1), b.a(1)}, {b.f(14), b.f(14)}, {b.b(b2k), b.b(b2k)}});
  b.def("K3", b.Cw(2) * b.A(1, -1) * b.F(14) * b.Bw(b2k, -1));
  b.aeq(b.L("PHI1") * b.L("K2") * b.L("PHI1", -1), b.L("K3"));
  b.aeq(b.L("K2") * b.L("K3", -1), b.Gm(6) * b.Cw(2, -1));
  b.img(b.T(4), {{b.gm(6), b.gm(10)}, {b.c(2), b.c(4)}});
  b.aeq(b.T(4) * b.Gm(6) * b.Cw(2, -1) * b.T(-4), b.Gm(10) * b.Cw(4, -1));
  b.def("K4", b.Cw(4) * b.Cw(2, -1) * b.F(18) * b.Bw(b2k, -1));
  b.aeq(b.Cw(4) * b.Gm(10, -1) * b.L("K1"), b.L("K4"));
  b.def("K5", b.Bw(4) * b.Bw(2, -1) * b.F(17) * b.Bw(b2k, -1));
  b.img(b.T(-1), {{b.c(4), b.b(4)}, {b.c(2), b.b(2)}, {b.f(18), b.f(17)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(-1) * b.L("K4") * b.T(1), b.L("K5"));
  b.def("PHI2", b.L("K4") * b.L("K5"));
  b.img(b.L("PHI2"), {{b.c(2), b.b(2)}, {b.a(1), b.a(1)}, {b.f(14), b.f(14)}, {b.b(b2k), b.b(b2k)}});
  b.def("K6", b.Bw(2) * b.A(1, -1) * b.F(14) * b.Bw(b2k, -1));
  b.aeq(b.L("PHI2") * b.L("K3") * b.L("PHI2", -1), b.L("K6"));
  b.aeq(b.L("K3") * b.L("K6", -1), b.Cw(2) * b.Bw(2, -1));
  b.img(b.T(1), {{b.b(2), b.c(2)}, {b.c(2), b.b(3)}});
  b.aeq(b.T(1) * b.Bw(2) * b.Cw(2, -1) * b.T(-1), b.Cw(2) * b.Bw(3, -1));
  b.aeq(b.T(-2) * b.Bw(2) * b.Cw(2, -1) * b.Cw(2) * b.Bw(3, -1) * b.T(2), b.Bw(1) * b.Bw(2, -1));
  b.def("K7", b.Cw(3) * b.Cw(1, -1) * b.F(16) * b.Bw(b2k, -1));
  b.img(b.T(-2), {{b.c(4), b.c(3)}, {b.c(2), b.c(1)}, {b.f(18), b.f(16)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(-2) * b.L("K4") * b.T(2), b.L("K7"));
  b.def("K8", b.Cw(5) * b.Cw(3, -1) * b.F(20) * b.Bw(b2k, -1));
  b.img(b.T(4), {{b.c(3), b.c(5)}, {b.c(1), b.c(3)}, {b.f(16), b.f(20)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(4) * b.L("K7") * b.T(-4), b.L("K8"));
  b.def("PHI3", b.L("K7") * b.L("K5"));
  b.img(b.L("PHI3"), {{b.c(3), b.b(4)}, {b.c(5), b.c(5)}, {b.f(20), b.f(20)}, {b.b(b2k), b.b(b2k)}});
  b.def("K9", b.Cw(5) * b.Bw(4, -1) * b.F(20) * b.Bw(b2k, -1));
  b.aeq(b.L("PHI3") * b.L("K8") * b.L("PHI3", -1), b.L("K9"));
  b.aeq(b.L("K8", -1) * b.L("K9"), b.Cw(3) * b.Bw(4, -1));
  b.def("K10", b.Cw(3) * b.Bw(2, -1) * b.F(16) * b.Bw(b2k, -1));
  b.img(b.T(-4), {{b.c(5), b.c(3)}, {b.b(4), b.b(2)}, {b.f(20), b.f(16)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(-4) * b.L("K9") * b.T(4), b.L("K10"));
  b.def("K11", b.Cw(2, -1) * b.Cw(3) * b.F(16) * b.Bw(b2k, -1));
  b.aeq(b.L("K10") * b.Bw(2) * b.Cw(2, -1), b.L("K11"));
  // The printed operand is K10; the chain shape of the sibling proofs makes
  // K11 the consistent one, and only K11 typechecks against the stated
  // result.
  b.def("K12", b.Bw(1, -1) * b.Bw(2) * b.F(13) * b.Bw(b2k, -1));
  b.img(b.T(-3), {{b.c(2), b.b(1)}, {b.c(3), b.b(2)}, {b.f(16), b.f(13)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(-3) * b.L("K11") * b.T(3), b.L("K12"));
  b.aeq(b.L("K12") * b.Bw(1) * b.Bw(2, -1), b.F(13) * b.Bw(b2k, -1));
  b.img(b.T(5), {{b.f(13), b.f(18)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(5) * b.F(13) * b.Bw(b2k, -1) * b.T(-5), b.F(18) * b.Bw(b2k, -1));
  b.aeq(b.L("K1") * b.Bw(b2k) * b.F(18, -1), b.Gm(10) * b.Cw(2, -1));
  b.img(b.T(-2), {{b.gm(10), b.gm(8)}, {b.c(2), b.c(1)}});
  b.aeq(b.T(-2) * b.Gm(10) * b.Cw(2, -1) * b.T(2), b.Gm(8) * b.Cw(1, -1));
  b.aeq(b.Cw(4) * b.Gm(10, -1) * b.Gm(10) * b.Cw(2, -1), b.Cw(4) * b.Cw(2, -1));
  b.img(b.T(-2), {{b.c(4), b.c(3)}, {b.c(2), b.c(1)}});
  b.aeq(b.T(-2) * b.Cw(4) * b.Cw(2, -1) * b.T(2), b.Cw(3) * b.Cw(1, -1));
  b.img(b.T(2), {{b.c(4), b.c(5)}, {b.c(2), b.c(3)}});
  b.aeq(b.T(2) * b.Cw(4) * b.Cw(2, -1) * b.T(-2), b.Cw(5) * b.Cw(3, -1));
  b.aeq(b.Bw(4) * b.Cw(3, -1) * b.Cw(3) * b.Cw(5, -1), b.Bw(4) * b.Cw(5, -1));
  b.aeq(b.Gm(8) * b.Cw(1, -1) * b.Cw(1) * b.Cw(3, -1) * b.Cw(3) * b.Cw(5, -1) * b.Cw(5) * b.Bw(4, -1),
        b.Gm(8) * b.Bw(4, -1));
  b.img(b.T(-7), {{b.gm(8), b.gm(1)}, {b.b(4), b.a(1)}});
  b.aeq(b.T(-7) * b.Gm(8) * b.Bw(4, -1) * b.T(7), b.A(2) * b.A(1, -1));
  b.def("PSI1", b.Cw(c2k1) * b.Dw(d41, -1) * b.Bw(c2k1));
  b.img(b.L("PSI1"), {{b.c(c2k1), b.b(c2k1)}, {b.d(d41), b.d(d41)}});
  b.aeq(b.L("PSI1") * b.Cw(c2k1) * b.Dw(d41, -1) * b.L("PSI1", -1), b.Bw(c2k1) * b.Dw(d41, -1));
  b.def("PSI2", b.F(18) * b.Bw(b2k, -1) * b.Dw(d41, -1));
  b.img(b.L("PSI2"), {{b.f(18), b.f(18)}, {b.b(b2k), b.d(d41)}});
  b.aeq(b.L("PSI2") * b.F(18) * b.Bw(b2k, -1) * b.L("PSI2", -1), b.F(18) * b.Dw(d41, -1));
  b.img(b.T(-17), {{b.f(18), b.f(1)}});
  b.aeq(b.T(-17) * b.F(18) * b.T(17), b.F(1));
  b.aeq(b.A(1) * b.F(1) * b.A(1, -1), b.E());
  b.agen({Builder::T(), b.L("K1"), b.Cw(c2k1) * b.Dw(d41, -1)});
  return b.take();
}

// t4k3: g = 4k+3 >= 43, generators T, Gm10 C2^-1 F18 U33^-1 and
// B{2k+1} A1^-1, on the dihedral arrangement.
Script build_t4k3(int g) {
  require(g % 4 == 3 && g >= 43, "t4k3 requires g = 4k+3 >= 43 (bound 43), got " + std::to_string(g));
  Builder b("t4k3", g, ModelKind::Dihedral, "three generators, g = 4k+3");
  const int k = b.k();

  b.def("L1", b.Gm(10) * b.Cw(2, -1) * b.F(18) * b.U(33, -1));
  int w44 = b.uidx(44);
  if (w44 != 44) b.note("g=" + std::to_string(g) + " variant: L2 closes with U" + std::to_string(w44));
  b.def("L2", b.Gm(21) * b.Bw(8, -1) * b.F(29) * b.U(44, -1));
  b.img(b.T(11), {{b.gm(10), b.gm(21)}, {b.c(2), b.b(8)}, {b.f(18), b.f(29)}, {b.u(33), b.u(44)}});
  b.aeq(b.T(11) * b.L("L1") * b.T(-11), b.L("L2"));
  b.def("PHI1", b.L("L2") * b.L("L1"));
  b.img(b.L("PHI1"), {{b.u(44), b.u(33)}, {b.gm(21), b.gm(21)}, {b.b(8), b.b(8)}, {b.f(29), b.f(29)}});
  b.def("L3", b.Gm(21) * b.Bw(8, -1) * b.F(29) * b.U(33, -1));
  b.aeq(b.L("PHI1") * b.L("L2") * b.L("PHI1", -1), b.L("L3"));
  // The print says T L4 T^-1; the operand can only be L3.
  b.def("L4", b.Gm(22) * b.Cw(8, -1) * b.F(30) * b.U(34, -1));
  b.img(b.T(1), {{b.gm(21), b.gm(22)}, {b.b(8), b.c(8)}, {b.f(29), b.f(30)}, {b.u(33), b.u(34)}});
  b.aeq(b.T(1) * b.L("L3") * b.T(-1), b.L("L4"));
  b.def("PHI2", b.L("L4") * b.L("L1"));
  b.img(b.L("PHI2"), {{b.u(34), b.u(33)}, {b.gm(22), b.gm(22)}, {b.c(8), b.c(8)}, {b.f(30), b.f(30)}});
  b.def("L5", b.Gm(22) * b.Cw(8, -1) * b.F(30) * b.U(33, -1));
  b.aeq(b.L("PHI2") * b.L("L4") * b.L("PHI2", -1), b.L("L5"));
  b.aeq(b.L("L4", -1) * b.L("L5"), b.U(34) * b.U(33, -1));
  chain_middle(b, "L1", Family::U, "L");
  b.def("W1", b.F(18, -1) * b.U(33) * b.Bw(16));
  b.img(b.L("W1"), {{b.f(18), b.f(18)}, {b.u(33), b.b(16)}});
  b.img(b.T(-17), {{b.f(18), b.f(1)}});
  b.aeq(b.T(-17) * b.F(18) * b.T(17), b.F(1));
  b.aeq(b.A(1) * b.F(1) * b.A(1, -1), b.E());
  b.aeq(b.F(18) * b.F(18, -1) * b.U(33), b.U(33));
  const int m = 4 * k - 32;
  b.img(b.T(m), {{b.u(33), b.u(4 * k + 1)}});
  b.aeq(b.T(m) * b.U(33) * b.T(-m), b.Cw(2 * k));
  b.agen({Builder::T(), b.L("L1"), b.Bw(2 * k + 1) * b.A(1, -1)});
  return b.take();
}

// t4k2_10: g = 4k+2 >= 10, generators T, A1 A2^-1, F1 B{2k}^-1,
// C{2k-1} D{4k+1}^-1.
Script build_t4k2_10(int g) {
  require(g % 4 == 2 && g >= 10,
          "t4k2_10 requires g = 4k+2 >= 10 (bound 10), got " + std::to_string(g));
  Builder b("t4k2_10", g, ModelKind::Dihedral, "four generators, g = 4k+2");
  const int k = b.k();
  const int b2k = 2 * k, c2k1 = 2 * k - 1, d41 = 4 * k + 1;

  b.img(b.T(3), {{b.f(1), b.f(4)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(3) * b.F(1) * b.Bw(b2k, -1) * b.T(-3), b.F(4) * b.Bw(b2k, -1));
  b.def("PSI1", b.A(1) * b.A(2, -1) * b.Bw(b2k) * b.F(4, -1));
  b.img(b.L("PSI1"), {{b.a(1), b.a(1)}, {b.a(2), b.f(4)}});
  b.aeq(b.L("PSI1") * b.A(1) * b.A(2, -1) * b.L("PSI1", -1), b.A(1) * b.F(4, -1));
  b.aeq(b.A(1) * b.F(4, -1) * b.F(4) * b.Bw(b2k, -1), b.A(1) * b.Bw(b2k, -1));
  b.img(b.T(1), {{b.a(1), b.b(1)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(1) * b.A(1) * b.Bw(b2k, -1) * b.T(-1), b.Bw(1) * b.Bw(b2k, -1));
  b.img(b.T(2), {{b.b(1), b.b(2)}, {b.b(b2k), b.b(b2k)}});
  b.aeq(b.T(2) * b.Bw(1) * b.Bw(b2k, -1) * b.T(-2), b.Bw(2) * b.Bw(b2k, -1));
  b.aeq(b.Bw(1) * b.Bw(b2k, -1) * b.Bw(b2k) * b.Bw(2, -1), b.Bw(1) * b.Bw(2, -1));
  b.aeq(b.A(1) * b.F(1) * b.Bw(b2k, -1) * b.Bw(b2k) * b.A(1, -1), b.E());
  b.def("PSI2", b.Cw(c2k1) * b.Dw(d41, -1) * b.Bw(c2k1));
  b.img(b.L("PSI2"), {{b.c(c2k1), b.b(c2k1)}, {b.d(d41), b.d(d41)}});
  b.aeq(b.L("PSI2") * b.Cw(c2k1) * b.Dw(d41, -1) * b.L("PSI2", -1), b.Bw(c2k1) * b.Dw(d41, -1));
  b.agen({Builder::T(), b.A(1) * b.A(2, -1), b.F(1) * b.Bw(b2k, -1), b.Cw(c2k1) * b.Dw(d41, -1)});
  return b.take();
}

// t4k3_7: g = 4k+3 >= 7, generators T, A1 A2^-1, F{g-2} U3^-1,
// B{2k} B{2k+1}^-1.
Script build_t4k3_7(int g) {
  require(g % 4 == 3 && g >= 7, "t4k3_7 requires g = 4k+3 >= 7 (bound 7), got " + std::to_string(g));
  Builder b("t4k3_7", g, ModelKind::Dihedral, "four generators, g = 4k+3");
  const int k = b.k();

  b.def("PSI1", b.F(g - 2) * b.U(3, -1) * b.A(1) * b.A(2, -1));
  b.img(b.L("PSI1"), {{b.f(g - 2), b.f(g - 2)}, {b.u(3), b.a(2)}});
  b.aeq(b.L("PSI1") * b.F(g - 2) * b.U(3, -1) * b.L("PSI1", -1), b.F(g - 2) * b.A(2, -1));
  b.aeq(b.A(1) * b.A(2, -1) * b.A(2) * b.F(g - 2, -1), b.A(1) * b.F(g - 2, -1));
  b.aeq(b.U(3) * b.F(g - 2, -1) * b.F(g - 2) * b.A(1, -1), b.U(3) * b.A(1, -1));
  b.def("PSI2", b.Bw(2 * k) * b.Bw(2 * k + 1, -1) * b.A(1) * b.U(3, -1));
  b.img(b.L("PSI2"), {{b.b(2 * k), b.b(2 * k)}, {b.b(2 * k + 1), b.u(3)}});
  b.aeq(b.L("PSI2") * b.Bw(2 * k) * b.Bw(2 * k + 1, -1) * b.L("PSI2", -1), b.Bw(2 * k) * b.U(3, -1));
  b.aeq(b.Bw(2 * k) * b.U(3, -1) * b.U(3) * b.A(1, -1), b.Bw(2 * k) * b.A(1, -1));
  b.img(b.T(3), {{b.b(2 * k), b.b(1)}, {b.a(1), b.b(2)}});
  b.aeq(b.T(3) * b.Bw(2 * k) * b.A(1, -1) * b.T(-3), b.Bw(1) * b.Bw(2, -1));
  b.img(b.T(-3), {{b.u(3), b.c(2 * k)}});
  b.aeq(b.T(-3) * b.U(3) * b.T(3), b.Cw(2 * k));
  // The change-of-coordinates word is transcribed verbatim, including the
  // asymmetric rotation powers.
  b.def("PHI", b.T(3) * b.Cw(2 * k) * b.Bw(2 * k + 1) * b.Cw(2 * k - 1) * b.Bw(2 * k) * b.Cw(2 * k) *
                   b.U(g - 4, -1) * b.T(-2));
  b.img(b.L("PHI"), {{b.f(g - 2), b.f(1)}});
  b.aeq(b.L("PHI") * b.F(g - 2) * b.L("PHI", -1), b.F(1));
  b.aeq(b.A(1) * b.F(1) * b.A(1, -1), b.E());
  b.agen({Builder::T(), b.A(1) * b.A(2, -1), b.F(g - 2) * b.U(3, -1),
          b.Bw(2 * k) * b.Bw(2 * k + 1, -1)});
  return b.take();
}

// prop41: T = [T^m, rho1] with m = 2k (g = 0,2 mod 4) or 2k+1 (1,3 mod 4),
// checked at the signed and mod-2 levels.
Script build_prop41(int g) {
  require(g >= 7, "prop41 requires g >= 7 (bound 7), got " + std::to_string(g));
  Builder b("prop41", g, ModelKind::Dihedral, "rotation as a commutator of reflections");
  const int m = (g % 4 == 0 || g % 4 == 2) ? 2 * b.k() : 2 * b.k() + 1;
  b.note("commutator exponent m = " + std::to_string(m));
  Word comm = commutator(Builder::T(m), Word::refl1());
  for (CheckLevel level : {CheckLevel::Signed, CheckLevel::Mod2}) {
    b.aeq(Word::refl2() * Word::refl1(), Builder::T(), level);
    b.aeq(Builder::T(m) * Word::refl1() * Builder::T(-m), Word::refl2(), level);
    b.aeq(comm, Builder::T(), level);
  }
  return b.take();
}

// com: commutator generating sets. At large genus the generator count is
// two (g = 0,1 mod 4) or three (2,3 mod 4); near the small bounds one more.
Script build_com(int g) {
  const int res = g % 4;
  const int large_bound[4] = {44, 29, 30, 43};
  const int small_bound[4] = {8, 9, 10, 7};
  bool large = g >= large_bound[res];
  require(g >= small_bound[res], "com requires g >= " + std::to_string(small_bound[res]) +
                                     " for g = " + std::to_string(res) +
                                     " mod 4 (bound " + std::to_string(small_bound[res]) + "), got " +
                                     std::to_string(g));
  Builder b("com", g, ModelKind::Dihedral,
            large ? "commutator generators, large genus" : "commutator generators, small genus");
  const int k = b.k();
  const int m = (res == 0 || res == 2) ? 2 * k : 2 * k + 1;
  b.note(large ? "large-genus case (" + std::to_string(res == 0 || res == 1 ? 2 : 3) + " commutators)"
               : "small-genus case (" + std::to_string(res == 0 || res == 1 ? 3 : 4) + " commutators)");

  Word t_comm = commutator(Builder::T(m), Word::refl1());
  b.aeq(t_comm, Builder::T(), CheckLevel::Signed);
  b.aeq(t_comm, Builder::T(), CheckLevel::Mod2);

  GenusModel model = b.model();
  CurveCatalog cat = build_catalog(model);
  auto conj = [&](std::vector<std::pair<CurveId, CurveId>> pairs) {
    std::vector<std::pair<BitVec, BitVec>> classes;
    for (const auto& [s, t] : pairs) classes.emplace_back(cat.cls(s), cat.cls(t));
    return find_conjugator(classes, cat);
  };
  std::vector<Word> gens{t_comm};

  if (large) {
    // The main generator's tail pair differs per residue class.
    CurveId tail = res == 0   ? b.d(33)
                   : res == 1 ? b.c(12)
                   : res == 2 ? b.b(2 * k)
                              : b.u(33);
    Word tail_tw = Word::twist(tail, -1);
    b.def("PHI", conj({{b.gm(10), tail}, {b.f(18), b.c(2)}}));
    b.img(b.L("PHI"), {{b.gm(10), tail}, {b.f(18), b.c(2)}});
    Word main = b.Gm(10) * b.Cw(2, -1) * b.F(18) * tail_tw;
    Word main_comm = commutator(b.Gm(10) * b.F(18), b.L("PHI"));
    b.aeq(main_comm, main);
    gens.push_back(main_comm);
    if (res == 2) {
      b.def("PSI2", conj({{b.c(2 * k - 1), b.d(4 * k + 1)}}));
      b.img(b.L("PSI2"), {{b.c(2 * k - 1), b.d(4 * k + 1)}});
      Word w = commutator(b.Cw(2 * k - 1), b.L("PSI2"));
      b.aeq(w, b.Cw(2 * k - 1) * b.Dw(4 * k + 1, -1));
      gens.push_back(w);
    } else if (res == 3) {
      b.def("PHI2", conj({{b.b(2 * k + 1), b.a(1)}}));
      b.img(b.L("PHI2"), {{b.b(2 * k + 1), b.a(1)}});
      Word w = commutator(b.Bw(2 * k + 1), b.L("PHI2"));
      b.aeq(w, b.Bw(2 * k + 1) * b.A(1, -1));
      gens.push_back(w);
    }
  } else {
    // Small-genus cases factor the three/four-generator sets.
    auto add = [&](const std::string& label, CurveId src, CurveId dst, const Word& twist_src,
                   const Word& twist_dst_inv) {
      b.def(label, conj({{src, dst}}));
      b.img(b.L(label), {{src, dst}});
      Word w = commutator(twist_src, b.L(label));
      b.aeq(w, twist_src * twist_dst_inv);
      gens.push_back(w);
    };
    if (res == 0) {
      add("CHI1", b.d(g - 1), b.a(2), b.Dw(g - 1), b.A(2, -1));
      add("CHI2", b.f(1), b.b(2), b.F(1), b.Bw(2, -1));
    } else if (res == 1) {
      add("CHI1", b.a(1), b.a(2), b.A(1), b.A(2, -1));
      add("CHI2", b.f(1), b.b(2), b.F(1), b.Bw(2, -1));
    } else if (res == 2) {
      add("CHI1", b.a(1), b.a(2), b.A(1), b.A(2, -1));
      add("CHI2", b.f(1), b.b(2 * k), b.F(1), b.Bw(2 * k, -1));
      add("CHI3", b.c(2 * k - 1), b.d(4 * k + 1), b.Cw(2 * k - 1), b.Dw(4 * k + 1, -1));
    } else {
      add("CHI1", b.a(1), b.a(2), b.A(1), b.A(2, -1));
      add("CHI2", b.f(g - 2), b.u(3), b.F(g - 2), b.U(3, -1));
      add("CHI3", b.b(2 * k), b.b(2 * k + 1), b.Bw(2 * k), b.Bw(2 * k + 1, -1));
    }
  }
  b.agen(gens);
  return b.take();
}

}  // namespace

std::vector<std::string> builtin_script_ids() {
  return {"t29", "t42", "t9odd", "t8even", "t4k2", "t4k3", "t4k2_10", "t4k3_7", "prop41", "com"};
}

bool is_builtin_script_id(const std::string& id) {
  auto ids = builtin_script_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ModelKind script_model_kind(const std::string& id) {
  if (id == "t29" || id == "t42" || id == "t9odd" || id == "t8even") return ModelKind::Cyclic;
  return ModelKind::Dihedral;
}

Script builtin_script(const std::string& id, int g) {
  if (id == "t29") return build_t29(g);
  if (id == "t42") return build_t42(g);
  if (id == "t9odd") return build_t9odd(g);
  if (id == "t8even") return build_t8even(g);
  if (id == "t4k2") return build_t4k2(g);
  if (id == "t4k3") return build_t4k3(g);
  if (id == "t4k2_10") return build_t4k2_10(g);
  if (id == "t4k3_7") return build_t4k3_7(g);
  if (id == "prop41") return build_prop41(g);
  if (id == "com") return build_com(g);
  throw std::invalid_argument("unknown script id: " + id);
}

Script commutator_scripts(int g) { return build_com(g); }

std::vector<Word> omori_generator_words(const GenusModel& model) {
  std::vector<Word> out;
  out.push_back(Word::twist(Family::A, 1));
  out.push_back(Word::twist(Family::A, 2));
  for (int i = 1; i <= model.r; ++i) out.push_back(Word::twist(Family::B, i));
  for (int i = 1; i <= model.r - 1; ++i) out.push_back(Word::twist(Family::C, i));
  if (!model.odd) out.push_back(Word::twist(Family::D, model.g - 1));
  out.push_back(Word::twist(Family::E, 1));
  return out;
}

std::vector<Word> script_generator_words(const std::string& id, int g) {
  if (id == "omori") return omori_generator_words(GenusModel::make(g, ModelKind::Cyclic));
  Script s = builtin_script(id, g);
  Environment env(GenusModel::make(g, s.model));
  std::vector<Word> out;
  for (const Step& st : s.steps) {
    if (st.kind == Step::Kind::Define) env.define(st.label, st.word);
    if (st.kind == Step::Kind::AssertGeneration) {
      out.clear();
      for (const Word& w : st.gens) out.push_back(expand_labels(w, env));
    }
  }
  if (out.empty()) throw std::invalid_argument("script " + id + " has no generation step");
  return out;
}

GenSet evaluate_genset(const std::vector<Word>& words, const CurveCatalog& cat,
                       const MappingClassSpec& spec) {
  Environment env(cat.model());
  Evaluator ev(env, cat, spec);
  std::vector<BitMat> mats;
  mats.reserve(words.size());
  for (const Word& w : words) mats.push_back(ev.mod2(w));
  return GenSet(cat.genus(), std::move(mats));
}

RunReport run_script(const Script& s, const CurveCatalog& cat, const MappingClassSpec& spec,
                     const RunOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.script_id = s.id;
  report.genus = s.genus;
  report.model = s.model;
  report.semantics_note =
      "certifies the homological shadow of the proof (exact identities in the mod-2 "
      "and, where stated, signed representation, plus exact generation of the mod-2 "
      "image group); it does not certify mapping-class-level equality";
  if (cat.genus() != s.genus || cat.model().kind != s.model) {
    throw std::invalid_argument("script/catalog model mismatch");
  }

  Environment env(cat.model());
  Evaluator ev(env, cat, spec);

  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const Step& st = s.steps[i];
    StepResult r;
    r.index = i;
    r.kind = st.kind;
    r.level = st.level;
    r.text = st.to_text();
    try {
      if (opts.level_filter && st.kind == Step::Kind::AssertRepEqual &&
          st.level != *opts.level_filter) {
        r.status = StepResult::Status::Deferred;
        r.detail = "skipped by level filter";
        report.steps.push_back(std::move(r));
        ++report.deferred;
        continue;
      }
      switch (st.kind) {
        case Step::Kind::Define: {
          env.define(st.label, st.word);
          r.witness = ev.mod2(st.word).hash();
          r.status = StepResult::Status::Pass;
          break;
        }
        case Step::Kind::AssertRepEqual: {
          if (st.level == CheckLevel::Mod2) {
            BitMat lhs = ev.mod2(st.word);
            BitMat rhs = ev.mod2(st.rhs);
            r.witness = lhs.hash();
            r.status = lhs == rhs ? StepResult::Status::Pass : StepResult::Status::Fail;
            if (r.status == StepResult::Status::Fail) r.detail = "mod-2 matrices differ";
          } else {
            SignedPermMat lhs = ev.eval_signed(st.word);
            SignedPermMat rhs = ev.eval_signed(st.rhs);
            r.witness = signed_hash(lhs);
            r.status = lhs == rhs ? StepResult::Status::Pass : StepResult::Status::Fail;
            if (r.status == StepResult::Status::Fail) {
              r.detail = "signed matrices differ: " + lhs.to_string() + " vs " + rhs.to_string();
            }
          }
          break;
        }
        case Step::Kind::AssertClassImage: {
          r.status = StepResult::Status::Pass;
          std::uint64_t w = 1469598103934665603ULL;
          for (const auto& [src, dst] : st.pairs) {
            BitVec got = ev.apply_mod2(st.word, cat.cls(src));
            BitVec want = cat.cls(dst);
            w = (w ^ got.raw()) * 1099511628211ULL;
            if (!(got == want)) {
              r.status = StepResult::Status::Fail;
              r.detail = src.to_string() + " maps to " + got.to_string() + ", expected " +
                         dst.to_string() + " = " + want.to_string();
              break;
            }
          }
          r.witness = w;
          break;
        }
        case Step::Kind::AssertGeneration: {
          if (s.genus > opts.generation_cap) {
            r.status = StepResult::Status::Deferred;
            r.detail = "generation check deferred beyond cap " +
                       std::to_string(opts.generation_cap) +
                       "; run the order command for the exact chain computation";
            ++report.deferred;
            break;
          }
          std::vector<BitMat> mats;
          mats.reserve(st.gens.size());
          for (const Word& w : st.gens) mats.push_back(ev.mod2(w));
          GenSet candidate(cat.genus(), std::move(mats));
          GenSet reference = evaluate_genset(omori_generator_words(cat.model()), cat, spec);
          bool same = same_group(candidate, reference, opts.bsgs);
          r.status = same ? StepResult::Status::Pass : StepResult::Status::Fail;
          if (!same) r.detail = "candidate image differs from the reference image group";
          break;
        }
      }
    } catch (const std::exception& e) {
      r.status = StepResult::Status::Fail;
      r.detail = e.what();
    }
    if (r.status == StepResult::Status::Fail) report.pass = false;
    report.steps.push_back(std::move(r));
  }
  auto t1 = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

namespace {

// Even-weight solution of the affine conditions used as a bridge when no
// catalog class fits.
std::optional<BitVec> solve_bridge(const BitVec& u, const BitVec& v,
                                   const std::vector<BitVec>& placed, int dim) {
  // Conditions: <u,w> = 1, <v,w> = 1, <p,w> = <p,v> for each placed p,
  // <ones,w> = 0 (even weight). Gaussian elimination over GF(2) on the
  // transposed system.
  std::vector<std::uint64_t> rows;
  std::vector<int> rhs;
  rows.push_back(u.raw());
  rhs.push_back(1);
  rows.push_back(v.raw());
  rhs.push_back(1);
  for (const auto& p : placed) {
    rows.push_back(p.raw());
    rhs.push_back(dot_form(p, v));
  }
  BitVec ones(dim, dim == 64 ? ~0ULL : ((1ULL << dim) - 1));
  rows.push_back(ones.raw());
  rhs.push_back(0);

  std::size_t m = rows.size();
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < dim && rank < m; ++col) {
    std::size_t sel = m;
    for (std::size_t r = rank; r < m; ++r) {
      if ((rows[r] >> col) & 1) {
        sel = r;
        break;
      }
    }
    if (sel == m) continue;
    std::swap(rows[rank], rows[sel]);
    std::swap(rhs[rank], rhs[sel]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r != rank && ((rows[r] >> col) & 1)) {
        rows[r] ^= rows[rank];
        rhs[r] ^= rhs[rank];
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r) {
    if (rhs[r]) return std::nullopt;  // inconsistent
  }
  std::uint64_t w = 0;
  for (std::size_t r = 0; r < rank; ++r) {
    if (rhs[r]) w |= 1ULL << pivot_col[r];
  }
  return BitVec(dim, w);
}

}  // namespace

Word find_conjugator(const std::vector<std::pair<BitVec, BitVec>>& pairs,
                     const CurveCatalog& cat) {
  const int dim = cat.genus();
  for (const auto& [u, v] : pairs) {
    if (u.dim() != dim || v.dim() != dim) throw std::invalid_argument("pair dimension mismatch");
    if (u.is_zero() || v.is_zero() || !u.even_weight() || !v.even_weight()) {
      throw std::invalid_argument("pairs must be nonzero two-sided classes");
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (dot_form(pairs[i].first, pairs[j].first) != dot_form(pairs[i].second, pairs[j].second)) {
        throw std::invalid_argument("pairs not equivalent: pairwise form values differ");
      }
    }
  }

  // Catalog classes in index-lex order, preferred as bridge vectors.
  std::vector<BitVec> catalog_classes;
  for (const auto& [id, cls] : cat.entries()) {
    (void)id;
    if (!cls.is_zero() && cls.even_weight()) catalog_classes.push_back(cls);
  }
  std::sort(catalog_classes.begin(), catalog_classes.end(),
            [](const BitVec& a, const BitVec& b) { return a.raw() < b.raw(); });
  catalog_classes.erase(std::unique(catalog_classes.begin(), catalog_classes.end()),
                        catalog_classes.end());

  Word word;
  BitMat current = BitMat::identity(dim);
  std::vector<BitVec> placed;

  auto apply_move = [&](const BitVec& c) {
    word = Word::twist_class(c.indices()) * word;
    current = transvection_matrix(c) * current;
  };
  auto ok_for_placed = [&](const BitVec& c) {
    for (const auto& p : placed) {
      if (dot_form(p, c)) return false;
    }
    return true;
  };

  for (const auto& [src, dst] : pairs) {
    BitVec u = current.apply(src);
    const BitVec& v = dst;
    if (!(u == v)) {
      bool done = false;
      if (dot_form(u, v) == 1) {
        BitVec c = u ^ v;
        if (ok_for_placed(c)) {
          apply_move(c);
          done = true;
        }
      }
      if (!done) {
        // Route through a bridge w with <u,w> = <v,w> = 1, keeping placed
        // classes orthogonal to both moves.
        std::optional<BitVec> bridge;
        for (const auto& cand : catalog_classes) {
          if (dot_form(u, cand) == 1 && dot_form(v, cand) == 1 && ok_for_placed(cand ^ u) &&
              ok_for_placed(cand ^ v) && !(cand == u) && !(cand == v)) {
            bridge = cand;
            break;
          }
        }
        if (!bridge) bridge = solve_bridge(u, v, placed, dim);
        if (!bridge || (*bridge == u) || (*bridge == v)) {
          throw std::runtime_error("no bridge vector exists in the available span");
        }
        apply_move(u ^ *bridge);
        apply_move(*bridge ^ v);
      }
    }
    placed.push_back(v);
  }

  for (const auto& [src, dst] : pairs) {
    if (!(current.apply(src) == dst)) {
      throw std::logic_error("conjugator construction failed verification");
    }
  }
  return word;
}

std::string script_to_text(const Script& s) {
  std::ostringstream os;
  os << "# " << s.title << "\n";
  for (const auto& n : s.variant_notes) os << "# " << n << "\n";
  os << "script = " << s.id << "\n";
  os << "genus = " << s.genus << "\n";
  os << "model = " << to_string(s.model) << "\n";
  for (const auto& st : s.steps) os << st.to_text() << "\n";
  return os.str();
}

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

CurveId parse_curve_or_throw(const std::string& text) {
  auto id = CurveId::parse(trim_copy(text));
  if (!id) throw std::invalid_argument("bad curve id: " + text);
  return *id;
}

}  // namespace

Script script_from_text(const std::string& text) {
  Script s;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("script line " + std::to_string(lineno) + ": " + what);
    };
    if (line.rfind("script =", 0) == 0 || line.rfind("script=", 0) == 0) {
      s.id = trim_copy(line.substr(line.find('=') + 1));
    } else if (line.rfind("genus", 0) == 0 && line.find('=') != std::string::npos &&
               line.find("==") == std::string::npos) {
      s.genus = std::stoi(trim_copy(line.substr(line.find('=') + 1)));
    } else if (line.rfind("model", 0) == 0 && line.find('=') != std::string::npos &&
               line.find("==") == std::string::npos) {
      s.model = model_kind_from_string(trim_copy(line.substr(line.find('=') + 1)));
    } else if (line.rfind("def ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) fail("def needs '='");
      Step st;
      st.kind = Step::Kind::Define;
      st.label = trim_copy(line.substr(4, eq - 4));
      st.word = parse_word(line.substr(eq + 1));
      s.steps.push_back(std::move(st));
    } else if (line.rfind("assert_eq_signed ", 0) == 0 || line.rfind("assert_eq ", 0) == 0) {
      bool is_signed = line.rfind("assert_eq_signed ", 0) == 0;
      std::size_t body_at = is_signed ? 17 : 10;
      auto eq = line.find("==");
      if (eq == std::string::npos) fail("assert_eq needs '=='");
      Step st;
      st.kind = Step::Kind::AssertRepEqual;
      st.level = is_signed ? CheckLevel::Signed : CheckLevel::Mod2;
      st.word = parse_word(line.substr(body_at, eq - body_at));
      st.rhs = parse_word(line.substr(eq + 2));
      s.steps.push_back(std::move(st));
    } else if (line.rfind("assert_img ", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("assert_img needs ':'");
      Step st;
      st.kind = Step::Kind::AssertClassImage;
      st.word = parse_word(line.substr(11, colon - 11));
      std::string rest = line.substr(colon + 1);
      std::istringstream ps(rest);
      std::string pair;
      while (std::getline(ps, pair, ',')) {
        auto arrow = pair.find("->");
        if (arrow == std::string::npos) fail("assert_img pair needs '->'");
        st.pairs.emplace_back(parse_curve_or_throw(pair.substr(0, arrow)),
                              parse_curve_or_throw(pair.substr(arrow + 2)));
      }
      if (st.pairs.empty()) fail("assert_img needs at least one pair");
      s.steps.push_back(std::move(st));
    } else if (line.rfind("assert_gen ", 0) == 0) {
      auto lb = line.find('[');
      auto rb = line.find(']');
      auto eq = line.find("==");
      if (lb == std::string::npos || rb == std::string::npos || eq == std::string::npos) {
        fail("assert_gen needs '[...] == <reference>'");
      }
      Step st;
      st.kind = Step::Kind::AssertGeneration;
      std::string inner = line.substr(lb + 1, rb - lb - 1);
      std::istringstream gs(inner);
      std::string wtext;
      while (std::getline(gs, wtext, ',')) {
        if (!trim_copy(wtext).empty()) st.gens.push_back(parse_word(wtext));
      }
      st.reference = trim_copy(line.substr(eq + 2));
      if (st.gens.empty()) fail("assert_gen needs at least one word");
      s.steps.push_back(std::move(st));
    } else {
      fail("unrecognized step: " + line);
    }
  }
  if (s.genus == 0) throw std::invalid_argument("script text missing 'genus ='");
  return s;
}

}  // namespace twistgen
