#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistgen/f2linalg.hpp"

// The genus-g surface model: named curve classes, the rotation T, the
// reflections rho_1/rho_2, and the determinant homomorphism D.
//
// Two crosscap arrangements are supported. In the cyclic model all (odd g)
// or all but one (even g) crosscaps sit on the rotation circle; this is the
// arrangement behind the chain-conjugation theorems. In the dihedral model
// the number of off-circle crosscaps depends on g mod 4 (0, 1, 3, 2 for
// g = 4k+1, 4k, 4k+2, 4k+3) so that the rotation splits into two
// reflections lying in the twist subgroup. The models agree for
// g = 0, 1 mod 4.

namespace twistgen {

enum class ModelKind { Cyclic, Dihedral };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

struct GenusModel {
  int g = 0;
  ModelKind kind = ModelKind::Cyclic;
  int r = 0;       // g = 2r+1 or g = 2r+2
  int k = 0;       // g mod 4 class parameter: g in {4k, 4k+1, 4k+2, 4k+3}
  int block = 0;   // crosscaps on the rotation circle; T cycles x_1..x_block
  bool odd = false;

  static GenusModel make(int g, ModelKind kind);
  int residue() const { return g % 4; }
  // Indices of basis vectors fixed by T (block+1 .. g).
  std::vector<int> fixed_indices() const;
};

enum class Family { A, B, C, D, E, F, Gamma, U };

std::string family_prefix(Family f);

struct CurveId {
  Family family = Family::A;
  int index = 1;  // E has no printed index; stored as 1

  bool operator==(const CurveId&) const = default;
  auto operator<=>(const CurveId&) const = default;
  std::string to_string() const;
  static std::optional<CurveId> parse(const std::string& text);
};

// Figure-derived seed classes; everything else in the catalog is generated
// from these by the rotation action and the chain-position rules.
struct SeedClasses {
  BitVec a2;
  BitVec f1;
  std::string provenance;
};

class CurveCatalog {
 public:
  CurveCatalog() = default;
  CurveCatalog(GenusModel model, std::map<CurveId, BitVec> classes, SeedClasses seeds);

  const GenusModel& model() const { return model_; }
  int genus() const { return model_.g; }
  const SeedClasses& seeds() const { return seeds_; }

  bool has(const CurveId& id) const;
  // Class lookup with the model's index arithmetic applied (gamma/f/u wrap
  // around their T-orbit; d wraps only for even g). Throws
  // std::invalid_argument for ids outside the family range.
  BitVec cls(const CurveId& id) const;
  CurveId normalize(const CurveId& id) const;

  const std::map<CurveId, BitVec>& entries() const { return classes_; }

  // Used by tests and negative controls.
  void override_class(const CurveId& id, const BitVec& v);

 private:
  GenusModel model_;
  std::map<CurveId, BitVec> classes_;
  SeedClasses seeds_;
};

struct MappingClassSpec {
  GenusModel model;
  BitMat T_mod2;
  SignedPermMat T_signed;
  std::optional<SignedPermMat> rho1;
  std::optional<SignedPermMat> rho2;
  // Exponent m with rho2 = T^m rho1 T^-m (2k or 2k+1 by residue).
  int reflection_exponent = 0;

  bool has_reflections() const { return rho1.has_value(); }
};

// Rotation per the model's crosscap arrangement (all signs +1).
std::pair<BitMat, SignedPermMat> standard_rotation(const GenusModel& model);

struct ReflectionSolution {
  std::vector<int> sigma;   // involution, 1-based images
  std::vector<int> signs;   // +1/-1 per index
  SignedPermMat rho1;
  SignedPermMat rho2;
};

// Enumerates sign vectors for a candidate involution sigma such that
// rho1 = (sigma, signs) satisfies: rho1^2 = id, rho2 := T rho1 is an
// involution equal to T^m rho1 T^-m, w stays an eigenvector, and
// D(rho1) = D(rho2) = 1. Returns all solutions; on an empty result the
// failure reason for each candidate is appended to *diagnostics if given.
std::vector<ReflectionSolution> solve_reflection_signs(const GenusModel& model,
                                                       const std::vector<int>& sigma,
                                                       std::vector<std::string>* diagnostics = nullptr);

// Canonical reflection pair (lexicographically least solution over the
// candidate axes). Requires the dihedral model for g = 2, 3 mod 4 and g >= 7.
std::pair<SignedPermMat, SignedPermMat> standard_reflections(const GenusModel& model);

MappingClassSpec standard_spec(const GenusModel& model);

// Built-in seed classes for [a2] and [f1]; recovered once by
// infer_seed_classes and frozen here. Throws for unsupported genus.
SeedClasses default_seeds(const GenusModel& model);

CurveCatalog build_catalog(const GenusModel& model, const SeedClasses& seeds);
CurveCatalog build_catalog(const GenusModel& model);

struct ValidationEntry {
  std::string constraint;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  bool pass = true;
  std::vector<ValidationEntry> entries;
  int failures() const;
};

// Checks two-sidedness of every class, T-equivariance of every family, and
// every curve-image / word-identity claim applicable at this genus (the
// non-generation steps of all builtin proof scripts in range).
ValidationReport validate_catalog(const CurveCatalog& cat, const MappingClassSpec& spec);

// Searches candidate classes for [a2] and [f1] over cyclically-consecutive
// even-weight blocks inside the rotation circle, optionally plus one
// T-fixed basis vector, returning every assignment accepted by
// validate_catalog. Throws std::runtime_error when the search space is empty.
std::vector<SeedClasses> infer_seed_classes(const GenusModel& model);

// D(f) = det of the induced map on H_1(N_g;R) = R^g / span(x_1+...+x_g).
int D_hom(const SignedPermMat& p);

// Catalog file format: "genus = <g>", "model = cyclic|dihedral", then one
// record "name = x<i>+x<j>+..." per curve, '#' comments, names sorted by
// family (a, b, c, d, e, f, gm, u) then index.
std::string catalog_to_text(const CurveCatalog& cat);
CurveCatalog catalog_from_text(const std::string& text);
// Reads just genus/model/a2/f1 from the same format.
SeedClasses seeds_from_text(const std::string& text, const GenusModel& expected_model);
std::string seeds_to_text(const GenusModel& model, const SeedClasses& seeds);

}  // namespace twistgen
