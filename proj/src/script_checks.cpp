#include "twistgen/detail/script_checks.hpp"

#include <map>

#include "twistgen/proofscripts.hpp"
#include "twistgen/words.hpp"

namespace twistgen::detail {

namespace {

// Scripts whose curve-level claims constrain the catalog at this genus and
// arrangement. Commutator scripts are excluded: their conjugators are
// derived from the catalog, not read off the figures.
std::vector<std::string> applicable_validation_ids(const GenusModel& model) {
  std::vector<std::string> ids;
  const int g = model.g;
  bool cyclic_like = model.kind == ModelKind::Cyclic || model.residue() <= 1;
  if (cyclic_like) {
    if (model.odd) {
      if (g >= 9) ids.push_back("t9odd");
      if (g >= 27) ids.push_back("t29");
    } else {
      if (g >= 8) ids.push_back("t8even");
      if (g >= 42) ids.push_back("t42");
    }
  } else if (model.residue() == 2) {
    if (g >= 10) ids.push_back("t4k2_10");
    if (g >= 30) ids.push_back("t4k2");
  } else {
    if (g >= 7) ids.push_back("t4k3_7");
    if (g >= 43) ids.push_back("t4k3");
  }
  return ids;
}

struct Touch {
  bool gamma = false;
  bool f = false;
};

Touch touch_of_curve(const CurveId& id) {
  Touch t;
  if (id.family == Family::Gamma || (id.family == Family::A && id.index == 2)) t.gamma = true;
  if (id.family == Family::F || id.family == Family::E) t.f = true;
  return t;
}

Touch touch_of_word(const Word& w, const Environment& env, std::map<std::string, Touch>& memo);

Touch touch_of_atom(const Atom& a, const Environment& env, std::map<std::string, Touch>& memo) {
  Touch t;
  switch (a.kind) {
    case Atom::Kind::Twist: return touch_of_curve(a.curve);
    case Atom::Kind::Named: {
      auto it = memo.find(a.label);
      if (it != memo.end()) return it->second;
      Touch sub = touch_of_word(env.lookup(a.label), env, memo);
      memo[a.label] = sub;
      return sub;
    }
    default: return t;
  }
}

Touch touch_of_word(const Word& w, const Environment& env, std::map<std::string, Touch>& memo) {
  Touch t;
  for (const Atom& a : w.atoms()) {
    Touch s = touch_of_atom(a, env, memo);
    t.gamma = t.gamma || s.gamma;
    t.f = t.f || s.f;
  }
  return t;
}

}  // namespace

std::vector<ValidationEntry> proof_step_constraints(const CurveCatalog& cat,
                                                    const MappingClassSpec& spec) {
  std::vector<ValidationEntry> out;
  for (const auto& id : applicable_validation_ids(cat.model())) {
    Script s = builtin_script(id, cat.genus());
    Environment env(cat.model());
    Evaluator ev(env, cat, spec);
    for (const Step& st : s.steps) {
      if (st.kind == Step::Kind::AssertGeneration) continue;
      if (st.kind == Step::Kind::AssertRepEqual && st.level == CheckLevel::Signed) continue;
      ValidationEntry e;
      e.constraint = id + ": " + st.to_text();
      try {
        switch (st.kind) {
          case Step::Kind::Define:
            env.define(st.label, st.word);
            e.pass = true;
            break;
          case Step::Kind::AssertRepEqual:
            e.pass = ev.mod2(st.word) == ev.mod2(st.rhs);
            if (!e.pass) e.detail = "mod-2 matrices differ";
            break;
          case Step::Kind::AssertClassImage: {
            e.pass = true;
            for (const auto& [src, dst] : st.pairs) {
              BitVec got = ev.apply_mod2(st.word, cat.cls(src));
              if (!(got == cat.cls(dst))) {
                e.pass = false;
                e.detail = src.to_string() + " maps to " + got.to_string() + ", expected " +
                           dst.to_string();
                break;
              }
            }
            break;
          }
          default: e.pass = true; break;
        }
      } catch (const std::exception& ex) {
        e.pass = false;
        e.detail = ex.what();
      }
      if (st.kind != Step::Kind::Define || !e.pass) out.push_back(std::move(e));
    }
  }
  return out;
}

bool quick_class_image_check(const CurveCatalog& cat, const MappingClassSpec& spec,
                             SeedTouch touch) {
  for (const auto& id : applicable_validation_ids(cat.model())) {
    Script s = builtin_script(id, cat.genus());
    Environment env(cat.model());
    Evaluator ev(env, cat, spec);
    std::map<std::string, Touch> memo;
    for (const Step& st : s.steps) {
      if (st.kind == Step::Kind::Define) {
        env.define(st.label, st.word);
        continue;
      }
      if (st.kind != Step::Kind::AssertClassImage) continue;
      Touch t = touch_of_word(st.word, env, memo);
      for (const auto& [src, dst] : st.pairs) {
        Touch ts = touch_of_curve(src);
        Touch td = touch_of_curve(dst);
        t.gamma = t.gamma || ts.gamma || td.gamma;
        t.f = t.f || ts.f || td.f;
      }
      if (touch == SeedTouch::GammaOnly && t.f) continue;
      if (touch == SeedTouch::FOnly && t.gamma) continue;
      for (const auto& [src, dst] : st.pairs) {
        if (!(ev.apply_mod2(st.word, cat.cls(src)) == cat.cls(dst))) return false;
      }
    }
  }
  return true;
}

}  // namespace twistgen::detail
