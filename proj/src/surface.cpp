#include "twistgen/surface.hpp"

#include <algorithm>
#include <set>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "twistgen/detail/script_checks.hpp"

namespace twistgen {

namespace {

int block_size_for(int g, ModelKind kind) {
  if (kind == ModelKind::Cyclic) return (g % 2 == 1) ? g : g - 1;
  switch (g % 4) {
    case 0: return g - 1;
    case 1: return g;
    case 2: return g - 3;
    default: return g - 2;
  }
}

}  // namespace

std::string to_string(ModelKind kind) {
  return kind == ModelKind::Cyclic ? "cyclic" : "dihedral";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "cyclic") return ModelKind::Cyclic;
  if (s == "dihedral") return ModelKind::Dihedral;
  throw std::invalid_argument("unknown model kind: " + s);
}

GenusModel GenusModel::make(int g, ModelKind kind) {
  if (g < 5 || g > kMaxDim) {
    throw std::invalid_argument("unsupported genus " + std::to_string(g) +
                                " (supported: 5 <= g <= " + std::to_string(kMaxDim) + ")");
  }
  GenusModel m;
  m.g = g;
  m.kind = kind;
  m.odd = (g % 2 == 1);
  m.r = m.odd ? (g - 1) / 2 : (g - 2) / 2;
  m.k = g / 4;
  m.block = block_size_for(g, kind);
  return m;
}

std::vector<int> GenusModel::fixed_indices() const {
  std::vector<int> out;
  for (int i = block + 1; i <= g; ++i) out.push_back(i);
  return out;
}

std::string family_prefix(Family f) {
  switch (f) {
    case Family::A: return "a";
    case Family::B: return "b";
    case Family::C: return "c";
    case Family::D: return "d";
    case Family::E: return "e";
    case Family::F: return "f";
    case Family::Gamma: return "gm";
    case Family::U: return "u";
  }
  return "?";
}

std::string CurveId::to_string() const {
  if (family == Family::E) return "e";
  return family_prefix(family) + std::to_string(index);
}

std::optional<CurveId> CurveId::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "e") return CurveId{Family::E, 1};
  Family fam;
  size_t pos = 1;
  switch (text[0]) {
    case 'a': fam = Family::A; break;
    case 'b': fam = Family::B; break;
    case 'c': fam = Family::C; break;
    case 'd': fam = Family::D; break;
    case 'f': fam = Family::F; break;
    case 'u': fam = Family::U; break;
    case 'g':
      if (text.size() < 2 || text[1] != 'm') return std::nullopt;
      fam = Family::Gamma;
      pos = 2;
      break;
    default: return std::nullopt;
  }
  if (pos >= text.size()) return std::nullopt;
  int index = 0;
  for (size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    index = index * 10 + (text[i] - '0');
    if (index > 100000) return std::nullopt;
  }
  if (index == 0) return std::nullopt;
  return CurveId{fam, index};
}

std::pair<BitMat, SignedPermMat> standard_rotation(const GenusModel& model) {
  const int g = model.g;
  const int n = model.block;
  std::vector<int> perm(static_cast<size_t>(g));
  for (int i = 1; i <= g; ++i) {
    int image = i;
    if (i < n)
      image = i + 1;
    else if (i == n)
      image = 1;
    perm[static_cast<size_t>(i - 1)] = image;
  }
  SignedPermMat t(std::move(perm), std::vector<int>(static_cast<size_t>(g), 1));
  return {t.mod2(), t};
}

namespace {

SignedPermMat make_rho(const std::vector<int>& sigma, int sign) {
  return SignedPermMat(sigma, std::vector<int>(sigma.size(), sign));
}

int reflection_exponent_for(const GenusModel& model) {
  switch (model.residue()) {
    case 0:
    case 2: return 2 * model.k;
    default: return 2 * model.k + 1;
  }
}

}  // namespace

std::vector<ReflectionSolution> solve_reflection_signs(const GenusModel& model,
                                                       const std::vector<int>& sigma,
                                                       std::vector<std::string>* diagnostics) {
  const int g = model.g;
  if (static_cast<int>(sigma.size()) != g) {
    throw std::invalid_argument("sigma has wrong length");
  }
  auto note = [&](const std::string& s) {
    if (diagnostics) diagnostics->push_back(s);
  };

  for (int i = 1; i <= g; ++i) {
    int j = sigma[static_cast<size_t>(i - 1)];
    if (j < 1 || j > g || sigma[static_cast<size_t>(j - 1)] != i) {
      note("sigma is not an involution");
      return {};
    }
  }

  auto [t2, t] = standard_rotation(model);
  (void)t2;
  const int m = reflection_exponent_for(model);
  std::vector<ReflectionSolution> out;

  // The w-eigenvector condition for quotient_det forces a constant sign
  // vector, so the enumeration reduces to the two constant candidates.
  for (int sign : {1, -1}) {
    SignedPermMat rho1 = make_rho(sigma, sign);
    if (!(rho1 * rho1).is_identity()) {
      note(std::string("sign ") + (sign > 0 ? "+1" : "-1") + ": rho1 is not an involution");
      continue;
    }
    SignedPermMat rho2 = t * rho1;  // rho2 rho1 = T since rho1^-1 = rho1
    if (!(rho2 * rho2).is_identity()) {
      note(std::string("sign ") + (sign > 0 ? "+1" : "-1") + ": rho2 = T rho1 is not an involution");
      continue;
    }
    SignedPermMat conj = t.pow(m) * rho1 * t.pow(-m);
    if (!(rho2 == conj)) {
      note(std::string("sign ") + (sign > 0 ? "+1" : "-1") + ": rho2 != T^" + std::to_string(m) +
           " rho1 T^-" + std::to_string(m));
      continue;
    }
    int d1, d2;
    try {
      d1 = quotient_det(rho1);
      d2 = quotient_det(rho2);
    } catch (const std::domain_error&) {
      note(std::string("sign ") + (sign > 0 ? "+1" : "-1") + ": w is not an eigenvector");
      continue;
    }
    if (d1 != 1 || d2 != 1) {
      note(std::string("sign ") + (sign > 0 ? "+1" : "-1") + ": D(rho1)=" + std::to_string(d1) +
           ", D(rho2)=" + std::to_string(d2) + " (need both +1)");
      continue;
    }
    out.push_back(ReflectionSolution{sigma, std::vector<int>(static_cast<size_t>(g), sign), rho1, rho2});
  }
  return out;
}

std::pair<SignedPermMat, SignedPermMat> standard_reflections(const GenusModel& model) {
  const int g = model.g;
  if (g < 7) throw std::invalid_argument("reflections require g >= 7");
  if (model.kind == ModelKind::Cyclic && model.residue() >= 2) {
    throw std::invalid_argument(
        "the cyclic arrangement admits no twist-subgroup reflections for g = " + std::to_string(g) +
        "; use the dihedral model");
  }
  const int n = model.block;

  // Candidate involutions: a dihedral reflection on the rotation circle
  // combined with an involution of the T-fixed crosscaps.
  std::vector<std::vector<std::pair<int, int>>> fixed_involutions;
  const auto fixed = model.fixed_indices();
  fixed_involutions.push_back({});  // identity on the fixed part
  for (size_t a = 0; a < fixed.size(); ++a) {
    for (size_t b = a + 1; b < fixed.size(); ++b) {
      fixed_involutions.push_back({{fixed[a], fixed[b]}});
    }
  }

  std::vector<ReflectionSolution> solutions;
  for (int axis = 0; axis < n; ++axis) {
    for (const auto& swaps : fixed_involutions) {
      std::vector<int> sigma(static_cast<size_t>(g));
      for (int i = 1; i <= g; ++i) sigma[static_cast<size_t>(i - 1)] = i;
      for (int p = 0; p < n; ++p) {
        int q = ((axis - p) % n + n) % n;
        sigma[static_cast<size_t>(p)] = q + 1;
      }
      for (auto [a, b] : swaps) {
        sigma[static_cast<size_t>(a - 1)] = b;
        sigma[static_cast<size_t>(b - 1)] = a;
      }
      auto found = solve_reflection_signs(model, sigma);
      solutions.insert(solutions.end(), found.begin(), found.end());
    }
  }
  if (solutions.empty()) {
    throw std::runtime_error("no reflection satisfies all constraints at g = " + std::to_string(g));
  }
  auto key = [](const ReflectionSolution& s) {
    std::vector<int> k = s.sigma;
    for (int v : s.signs) k.push_back(v > 0 ? 0 : 1);
    return k;
  };
  auto best = std::min_element(solutions.begin(), solutions.end(),
                               [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return {best->rho1, best->rho2};
}

MappingClassSpec standard_spec(const GenusModel& model) {
  MappingClassSpec spec;
  spec.model = model;
  auto [tm, ts] = standard_rotation(model);
  spec.T_mod2 = tm;
  spec.T_signed = ts;
  spec.reflection_exponent = reflection_exponent_for(model);
  bool want_rho = model.g >= 7 && (model.kind == ModelKind::Dihedral || model.residue() <= 1);
  if (want_rho) {
    auto [r1, r2] = standard_reflections(model);
    spec.rho1 = r1;
    spec.rho2 = r2;
  }
  return spec;
}

CurveCatalog::CurveCatalog(GenusModel model, std::map<CurveId, BitVec> classes, SeedClasses seeds)
    : model_(model), classes_(std::move(classes)), seeds_(std::move(seeds)) {}

bool CurveCatalog::has(const CurveId& id) const {
  try {
    return classes_.count(normalize(id)) > 0;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

CurveId CurveCatalog::normalize(const CurveId& id) const {
  if (id.index <= 0) throw std::invalid_argument("curve index must be positive: " + id.to_string());
  const int g = model_.g;
  const int n = model_.block;
  CurveId out = id;
  switch (id.family) {
    case Family::A:
      if (id.index > 2) throw std::invalid_argument("a-family has indices 1, 2");
      break;
    case Family::B:
      if (id.index > model_.r)
        throw std::invalid_argument("b-family index out of range: " + id.to_string());
      break;
    case Family::C:
      if (id.index > model_.r - 1)
        throw std::invalid_argument("c-family index out of range: " + id.to_string());
      break;
    case Family::D:
      if (model_.odd) {
        if (id.index >= g - 1)
          throw std::invalid_argument("no curve d" + std::to_string(id.index) +
                                      " on an odd-genus surface");
      } else {
        out.index = ((id.index - 1) % (g - 1)) + 1;
      }
      break;
    case Family::E:
      out.index = 1;
      break;
    case Family::F:
    case Family::Gamma:
      out.index = ((id.index - 1) % n) + 1;
      break;
    case Family::U:
      if (!(model_.kind == ModelKind::Dihedral && model_.residue() == 3))
        throw std::invalid_argument("u-family exists only on the dihedral model for g = 3 mod 4");
      out.index = ((id.index - 1) % n) + 1;
      break;
  }
  return out;
}

BitVec CurveCatalog::cls(const CurveId& id) const {
  CurveId norm = normalize(id);
  auto it = classes_.find(norm);
  if (it == classes_.end()) {
    throw std::invalid_argument("curve not in catalog: " + id.to_string());
  }
  return it->second;
}

void CurveCatalog::override_class(const CurveId& id, const BitVec& v) {
  classes_[normalize(id)] = v;
}

CurveCatalog build_catalog(const GenusModel& model, const SeedClasses& seeds) {
  const int g = model.g;
  const int n = model.block;
  if (seeds.a2.dim() != g || seeds.f1.dim() != g) {
    throw std::invalid_argument("seed dimension does not match genus");
  }
  if (!seeds.a2.even_weight() || !seeds.f1.even_weight()) {
    throw std::invalid_argument("seed classes must be two-sided (even weight)");
  }
  if (seeds.a2.is_zero() || seeds.f1.is_zero()) {
    throw std::invalid_argument("seed classes must be nonzero");
  }

  auto pair_class = [&](int i, int j) {
    BitVec v(g);
    v.set(i, true);
    v.set(j, true);
    return v;
  };

  std::map<CurveId, BitVec> cls;
  cls[{Family::A, 1}] = pair_class(1, 2);
  cls[{Family::A, 2}] = seeds.a2;
  for (int i = 1; i <= model.r; ++i) cls[{Family::B, i}] = pair_class(2 * i, 2 * i + 1);
  for (int i = 1; i <= model.r - 1; ++i) cls[{Family::C, i}] = pair_class(2 * i + 1, 2 * i + 2);

  auto [t_mod2, t_signed] = standard_rotation(model);
  (void)t_signed;

  BitVec gamma = seeds.a2;
  BitVec f = seeds.f1;
  for (int i = 1; i <= n; ++i) {
    cls[{Family::Gamma, i}] = gamma;
    cls[{Family::F, i}] = f;
    gamma = t_mod2.apply(gamma);
    f = t_mod2.apply(f);
  }

  if (!model.odd) {
    for (int j = 1; j <= g - 1; ++j) cls[{Family::D, j}] = pair_class(j, g);
  } else {
    for (int j = 1; j <= g - 2; ++j) cls[{Family::D, j}] = pair_class(j, g);
  }

  if (model.kind == ModelKind::Dihedral && model.residue() == 3) {
    for (int j = 1; j <= n; ++j) cls[{Family::U, j}] = pair_class(j, g - 1);
  }

  cls[{Family::E, 1}] = transvection_matrix(cls[{Family::A, 1}]).apply(seeds.f1);

  return CurveCatalog(model, std::move(cls), seeds);
}

SeedClasses default_seeds(const GenusModel& model) {
  // Recovered by infer_seed_classes from the proof-chain constraints and
  // frozen here; the mod-2 shadow admits several consistent assignments
  // (see infer_seed_classes), these are the canonical picks.
  const int g = model.g;
  const int n = model.block;
  auto mk = [&](std::vector<int> a2, std::vector<int> f1, const std::string& note) {
    return SeedClasses{BitVec::from_indices(g, a2), BitVec::from_indices(g, f1), note};
  };
  bool dihedral_only = model.kind == ModelKind::Dihedral && model.residue() >= 2;
  if (!dihedral_only) {
    // Both rotation arrangements for g = 0,1 mod 4 and the cyclic ones for
    // g = 2,3 mod 4 share one assignment.
    return mk({1, 2, 3, 4}, {2, 3}, "canonical seeds, cyclic-compatible arrangement");
  }
  if (model.residue() == 2) {
    return mk({1, 2, 3, 4}, {1, 3}, "canonical seeds, reflection arrangement g = 2 mod 4");
  }
  // g = 3 mod 4 reflection arrangement; the smallest two genera degenerate.
  if (g == 7) return mk({1, 2, 3, 4}, {2, 3, 4, 5, 6, 7}, "solver-pinned seeds, g = 7");
  if (g == 11) return mk({1, 2, 3, 4}, {1, 7, 8, 9}, "solver-pinned seeds, g = 11");
  return mk({1, 2, 3, 4}, {1, 9, n - 1, n}, "canonical seeds, reflection arrangement g = 3 mod 4");
}

CurveCatalog build_catalog(const GenusModel& model) {
  return build_catalog(model, default_seeds(model));
}

int D_hom(const SignedPermMat& p) { return quotient_det(p); }

int ValidationReport::failures() const {
  int n = 0;
  for (const auto& e : entries)
    if (!e.pass) ++n;
  return n;
}

namespace {

void check_equal(ValidationReport& report, const std::string& name, const BitVec& got,
                 const BitVec& want) {
  ValidationEntry e;
  e.constraint = name;
  e.pass = (got == want);
  if (!e.pass) e.detail = "got " + got.to_string() + ", want " + want.to_string();
  report.entries.push_back(std::move(e));
  report.pass = report.pass && report.entries.back().pass;
}

}  // namespace

ValidationReport validate_catalog(const CurveCatalog& cat, const MappingClassSpec& spec) {
  if (cat.genus() != spec.model.g || cat.model().kind != spec.model.kind) {
    throw std::invalid_argument("catalog and mapping-class spec disagree on the surface model");
  }
  ValidationReport report;
  const GenusModel& model = cat.model();
  const BitMat& T = spec.T_mod2;
  const int n = model.block;

  for (const auto& [id, v] : cat.entries()) {
    ValidationEntry e;
    e.constraint = "two-sided(" + id.to_string() + ")";
    e.pass = v.even_weight() && !v.is_zero();
    if (!e.pass) e.detail = id.to_string() + " = " + v.to_string();
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }

  auto image = [&](const CurveId& id) { return T.apply(cat.cls(id)); };
  auto C = [&](Family f, int i) { return CurveId{f, i}; };

  // Figure facts that the proof chains consume: a2 is a class distinct from
  // a1 (A2 A1^-1 must act nontrivially), e = A1(f1) is a class distinct
  // from f1 (E is a genuinely new twist), and the commutator-route tuple
  // (gamma10, f18) matches its targets' form value.
  {
    ValidationEntry e;
    e.constraint = "a2 distinct from a1";
    e.pass = !(cat.cls(C(Family::A, 2)) == cat.cls(C(Family::A, 1)));
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }
  {
    ValidationEntry e;
    e.constraint = "e distinct from f1 (<a1,f1> = 1)";
    e.pass = dot_form(cat.cls(C(Family::A, 1)), cat.cls(C(Family::F, 1))) == 1;
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }
  if (model.block >= 18) {
    ValidationEntry e;
    e.constraint = "<gamma10,f18> = 0 (commutator tuple form match)";
    e.pass = dot_form(cat.cls(C(Family::Gamma, 10)), cat.cls(C(Family::F, 18))) == 0;
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }
  {
    // The reference twists generate the full image group, so their classes
    // must span the whole two-sided subspace (dimension g-1); the chain
    // curves alone can miss the off-circle crosscaps.
    std::vector<CurveId> ref;
    ref.push_back(C(Family::A, 1));
    ref.push_back(C(Family::A, 2));
    for (int i = 1; i <= model.r; ++i) ref.push_back(C(Family::B, i));
    for (int i = 1; i <= model.r - 1; ++i) ref.push_back(C(Family::C, i));
    if (!model.odd) ref.push_back(C(Family::D, model.g - 1));
    ref.push_back(C(Family::E, 1));
    std::map<int, std::uint64_t> pivots;  // lowest set bit -> basis vector
    int rank = 0;
    for (const auto& id : ref) {
      std::uint64_t v = cat.cls(id).raw();
      while (v) {
        int low = std::countr_zero(v);
        auto it = pivots.find(low);
        if (it == pivots.end()) {
          pivots[low] = v;
          ++rank;
          break;
        }
        v ^= it->second;
      }
    }
    ValidationEntry e;
    e.constraint = "reference classes span the two-sided subspace";
    e.pass = rank == model.g - 1;
    if (!e.pass) e.detail = "rank " + std::to_string(rank);
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }

  check_equal(report, "T(a1)=b1", image(C(Family::A, 1)), cat.cls(C(Family::B, 1)));
  int chain_max = 0;
  switch (model.kind == ModelKind::Dihedral ? model.residue() : (model.odd ? 1 : 0)) {
    case 0: chain_max = model.r - 1; break;           // (g-1)-cycle arrangements
    case 1: chain_max = model.r - 1; break;           // full-cycle arrangements
    case 2: chain_max = 2 * model.k - 2; break;
    default: chain_max = 2 * model.k - 1; break;
  }
  for (int i = 1; i <= chain_max; ++i) {
    check_equal(report, "T(b" + std::to_string(i) + ")=c" + std::to_string(i),
                image(C(Family::B, i)), cat.cls(C(Family::C, i)));
    check_equal(report, "T(c" + std::to_string(i) + ")=b" + std::to_string(i + 1),
                image(C(Family::C, i)), cat.cls(C(Family::B, i + 1)));
  }
  bool full_chain = model.kind == ModelKind::Cyclic || model.residue() <= 1;
  if (full_chain) {
    check_equal(report, "T^2(b" + std::to_string(model.r) + ")=a1",
                T.apply(image(C(Family::B, model.r))), cat.cls(C(Family::A, 1)));
  }

  for (int i = 1; i <= n; ++i) {
    check_equal(report, "T(gm" + std::to_string(i) + ")=gm" + std::to_string(i % n + 1),
                image(C(Family::Gamma, i)), cat.cls(C(Family::Gamma, i % n + 1)));
    check_equal(report, "T(f" + std::to_string(i) + ")=f" + std::to_string(i % n + 1),
                image(C(Family::F, i)), cat.cls(C(Family::F, i % n + 1)));
  }

  if (!model.odd) {
    if (model.kind == ModelKind::Cyclic || model.residue() == 0) {
      for (int j = 1; j <= n; ++j) {
        int next = j % (model.g - 1) + 1;
        check_equal(report, "T(d" + std::to_string(j) + ")=d" + std::to_string(next),
                    image(C(Family::D, j)), cat.cls(C(Family::D, next)));
      }
    } else {
      for (int j = 1; j <= n; ++j) {
        int next = j % n + 1;
        check_equal(report, "T(d" + std::to_string(j) + ")=d" + std::to_string(next),
                    image(C(Family::D, j)), cat.cls(C(Family::D, next)));
      }
      check_equal(report, "T(d" + std::to_string(model.g - 2) + ") fixed",
                  image(C(Family::D, model.g - 2)), cat.cls(C(Family::D, model.g - 2)));
      check_equal(report, "T(d" + std::to_string(model.g - 1) + ") fixed",
                  image(C(Family::D, model.g - 1)), cat.cls(C(Family::D, model.g - 1)));
      check_equal(report, "T(b" + std::to_string(2 * model.k) + ") fixed",
                  image(C(Family::B, 2 * model.k)), cat.cls(C(Family::B, 2 * model.k)));
    }
  }

  if (model.kind == ModelKind::Dihedral && model.residue() == 3) {
    for (int j = 1; j <= n; ++j) {
      int next = j % n + 1;
      check_equal(report, "T(u" + std::to_string(j) + ")=u" + std::to_string(next),
                  image(C(Family::U, j)), cat.cls(C(Family::U, next)));
    }
    check_equal(report, "u" + std::to_string(4 * model.k + 1) + "=c" + std::to_string(2 * model.k),
                cat.cls(C(Family::U, 4 * model.k + 1)), cat.cls(C(Family::C, 2 * model.k)));
  }

  auto script_entries = detail::proof_step_constraints(cat, spec);
  for (auto& e : script_entries) {
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }
  return report;
}

namespace {

std::vector<BitVec> seed_candidates(const GenusModel& model) {
  const int g = model.g;
  const int n = model.block;
  std::set<std::uint64_t> seen;
  std::vector<BitVec> out;
  auto add = [&](const BitVec& v) {
    if (v.is_zero() || !v.even_weight()) return;
    if (seen.insert(v.raw()).second) out.push_back(v);
  };
  auto block_vec = [&](int start, int len) {
    BitVec v(g);
    for (int offset = 0; offset < len; ++offset) {
      int idx = ((start - 1 + offset) % n) + 1;
      v.set(idx, true);
    }
    return v;
  };
  const auto fixed = model.fixed_indices();
  const int fixed_count = static_cast<int>(fixed.size());
  std::vector<BitVec> fixed_subsets;
  for (int mask = 0; mask < (1 << fixed_count); ++mask) {
    BitVec v(g);
    for (int i = 0; i < fixed_count; ++i) {
      if (mask & (1 << i)) v.set(fixed[static_cast<size_t>(i)], true);
    }
    fixed_subsets.push_back(v);
  }

  // One cyclically-consecutive block inside the rotation circle plus any
  // subset of the T-fixed crosscap classes.
  for (int len = 0; len <= n - 1; ++len) {
    for (int start = 1; start <= n; ++start) {
      BitVec base = block_vec(start, len);
      for (const auto& fs : fixed_subsets) add(base ^ fs);
      if (len == 0) break;  // the empty block is start-independent
    }
  }
  // Two disjoint short blocks (the long-range curves of the figures meet
  // the circle in two arcs), again with optional fixed classes.
  const int cap = 6;
  for (int len1 = 1; len1 <= cap - 1; ++len1) {
    for (int len2 = 1; len1 + len2 <= cap; ++len2) {
      for (int s1 = 1; s1 <= n; ++s1) {
        for (int s2 = 1; s2 <= n; ++s2) {
          // Enforce disjointness of the two cyclic intervals.
          int gap1 = ((s2 - s1) % n + n) % n;
          int gap2 = ((s1 - s2) % n + n) % n;
          if (gap1 < len1 || gap2 < len2) continue;
          BitVec base = block_vec(s1, len1) ^ block_vec(s2, len2);
          for (const auto& fs : fixed_subsets) add(base ^ fs);
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SeedClasses> infer_seed_classes(const GenusModel& model) {
  auto spec = standard_spec(model);
  auto candidates = seed_candidates(model);
  BitVec dummy(model.g);
  dummy.set(1, true);
  dummy.set(2, true);

  std::vector<BitVec> a2_pool, f1_pool;
  for (const auto& c : candidates) {
    try {
      auto cat = build_catalog(model, SeedClasses{c, dummy, ""});
      if (detail::quick_class_image_check(cat, spec, detail::SeedTouch::GammaOnly))
        a2_pool.push_back(c);
    } catch (const std::exception&) {
    }
  }
  for (const auto& c : candidates) {
    try {
      auto cat = build_catalog(model, SeedClasses{dummy, c, ""});
      if (detail::quick_class_image_check(cat, spec, detail::SeedTouch::FOnly))
        f1_pool.push_back(c);
    } catch (const std::exception&) {
    }
  }

  std::vector<SeedClasses> out;
  for (const auto& a2c : a2_pool) {
    for (const auto& f1c : f1_pool) {
      SeedClasses s{a2c, f1c, "inferred"};
      try {
        auto cat = build_catalog(model, s);
        if (!detail::quick_class_image_check(cat, spec, detail::SeedTouch::Any)) continue;
        if (validate_catalog(cat, spec).pass) out.push_back(s);
      } catch (const std::exception&) {
      }
    }
  }
  if (out.empty()) {
    throw std::runtime_error("no consistent catalog in search space at g = " +
                             std::to_string(model.g) + " (" + to_string(model.kind) + ")");
  }
  return out;
}

std::string catalog_to_text(const CurveCatalog& cat) {
  std::ostringstream os;
  os << "# curve classes on N_" << cat.genus() << " (" << to_string(cat.model().kind)
     << " crosscap arrangement)\n";
  os << "genus = " << cat.genus() << "\n";
  os << "model = " << to_string(cat.model().kind) << "\n";
  const Family order[] = {Family::A, Family::B, Family::C, Family::D,
                          Family::E, Family::F, Family::Gamma, Family::U};
  for (Family fam : order) {
    std::vector<std::pair<int, BitVec>> rows;
    for (const auto& [id, v] : cat.entries()) {
      if (id.family == fam) rows.emplace_back(id.index, v);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [idx, v] : rows) {
      os << CurveId{fam, idx}.to_string() << " = " << v.to_string() << "\n";
    }
  }
  return os.str();
}

namespace {

struct ParsedCatalogText {
  int genus = 0;
  ModelKind kind = ModelKind::Cyclic;
  bool kind_seen = false;
  std::vector<std::pair<std::string, std::string>> records;
};

ParsedCatalogText parse_catalog_text(const std::string& text) {
  ParsedCatalogText out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'name = value'");
    }
    std::string name = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (name == "genus") {
      out.genus = std::stoi(value);
    } else if (name == "model") {
      out.kind = model_kind_from_string(value);
      out.kind_seen = true;
    } else {
      out.records.emplace_back(name, value);
    }
  }
  if (out.genus == 0) throw std::invalid_argument("catalog text is missing 'genus ='");
  return out;
}

BitVec parse_class_text(const std::string& value, int dim) {
  if (value == "0") return BitVec(dim);
  BitVec v(dim);
  std::string token;
  std::istringstream is(value);
  while (std::getline(is, token, '+')) {
    size_t a = token.find_first_not_of(" \t");
    size_t b = token.find_last_not_of(" \t");
    if (a == std::string::npos) throw std::invalid_argument("empty term in class: " + value);
    token = token.substr(a, b - a + 1);
    if (token.size() < 2 || token[0] != 'x')
      throw std::invalid_argument("bad basis term '" + token + "'");
    int idx = std::stoi(token.substr(1));
    if (idx < 1 || idx > dim) throw std::invalid_argument("basis index out of range: " + token);
    v.set(idx, true);
  }
  return v;
}

}  // namespace

CurveCatalog catalog_from_text(const std::string& text) {
  auto parsed = parse_catalog_text(text);
  GenusModel model = GenusModel::make(parsed.genus, parsed.kind);
  std::map<CurveId, BitVec> classes;
  for (const auto& [name, value] : parsed.records) {
    auto id = CurveId::parse(name);
    if (!id) throw std::invalid_argument("unknown curve name: " + name);
    classes[*id] = parse_class_text(value, model.g);
  }
  auto a2 = classes.find(CurveId{Family::A, 2});
  auto f1 = classes.find(CurveId{Family::F, 1});
  if (a2 == classes.end() || f1 == classes.end()) {
    throw std::invalid_argument("catalog text must define a2 and f1");
  }
  SeedClasses seeds{a2->second, f1->second, "file"};
  return CurveCatalog(model, std::move(classes), seeds);
}

SeedClasses seeds_from_text(const std::string& text, const GenusModel& expected_model) {
  auto parsed = parse_catalog_text(text);
  if (parsed.genus != expected_model.g) {
    throw std::invalid_argument("seed file genus " + std::to_string(parsed.genus) +
                                " does not match requested genus " +
                                std::to_string(expected_model.g));
  }
  if (parsed.kind_seen && parsed.kind != expected_model.kind) {
    throw std::invalid_argument("seed file model does not match requested model");
  }
  std::optional<BitVec> a2, f1;
  for (const auto& [name, value] : parsed.records) {
    if (name == "a2") a2 = parse_class_text(value, expected_model.g);
    if (name == "f1") f1 = parse_class_text(value, expected_model.g);
  }
  if (!a2 || !f1) throw std::invalid_argument("seed file must define a2 and f1");
  return SeedClasses{*a2, *f1, "file"};
}

std::string seeds_to_text(const GenusModel& model, const SeedClasses& seeds) {
  std::ostringstream os;
  if (!seeds.provenance.empty()) os << "# " << seeds.provenance << "\n";
  os << "genus = " << model.g << "\n";
  os << "model = " << to_string(model.kind) << "\n";
  os << "a2 = " << seeds.a2.to_string() << "\n";
  os << "f1 = " << seeds.f1.to_string() << "\n";
  return os.str();
}

}  // namespace twistgen
