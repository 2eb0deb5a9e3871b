// Development probe: searches the structured candidate space for the seed
// classes [a2] and [f1] at a given genus/model and prints every assignment
// the full catalog validator accepts.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>

#include "twistgen/surface.hpp"

using namespace twistgen;

static BitVec parse_terms(const std::string& text, int dim) {
  BitVec v(dim);
  std::string token;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      if (!token.empty() && token[0] == 'x') v.set(std::atoi(token.c_str() + 1), true);
      token.clear();
    } else {
      token += text[i];
    }
  }
  return v;
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: seed_probe <genus> [cyclic|dihedral] [<a2> <f1>]\n");
    return 2;
  }
  int g = std::atoi(argv[1]);
  ModelKind kind = ModelKind::Cyclic;
  if (argc > 2) kind = model_kind_from_string(argv[2]);
  try {
    GenusModel model = GenusModel::make(g, kind);
    if (argc > 4) {
      SeedClasses seeds{parse_terms(argv[3], g), parse_terms(argv[4], g), "probe"};
      auto cat = build_catalog(model, seeds);
      auto spec = standard_spec(model);
      auto report = validate_catalog(cat, spec);
      std::printf("validate: %s (%d failures / %zu entries)\n", report.pass ? "PASS" : "FAIL",
                  report.failures(), report.entries.size());
      for (const auto& e : report.entries) {
        if (!e.pass) std::printf("  FAIL %s: %s\n", e.constraint.c_str(), e.detail.c_str());
      }
      return report.pass ? 0 : 1;
    }
    auto found = infer_seed_classes(model);
    std::printf("g=%d %s: %zu consistent assignment(s)\n", g, to_string(kind).c_str(),
                found.size());
    for (const auto& s : found) {
      std::printf("  a2 = %-28s f1 = %s\n", s.a2.to_string().c_str(), s.f1.to_string().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
