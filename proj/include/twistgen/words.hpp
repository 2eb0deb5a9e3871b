#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistgen/f2linalg.hpp"
#include "twistgen/surface.hpp"

// Free words over the generator alphabet (curve twists, the rotation T, the
// reflections R1/R2, script-defined labels) and their evaluation under the
// mod-2 homology representation and, for twist-free words, the signed
// integer representation.

namespace twistgen {

struct Atom {
  enum class Kind { Twist, TwistClass, Rot, Refl1, Refl2, Named };
  Kind kind = Kind::Rot;
  CurveId curve;                 // Twist
  std::vector<int> cls_indices;  // TwistClass: basis indices of the class
  std::string label;             // Named (without the '$')
  long long exp = 1;

  bool same_generator(const Atom& other) const;
  bool operator==(const Atom& other) const = default;
};

class Word {
 public:
  Word() = default;

  static Word twist(CurveId id, long long exp = 1);
  static Word twist(Family family, int index, long long exp = 1);
  static Word twist_class(std::vector<int> indices, long long exp = 1);
  static Word rot(long long exp = 1);
  static Word refl1(long long exp = 1);
  static Word refl2(long long exp = 1);
  static Word named(std::string label, long long exp = 1);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  size_t size() const { return atoms_.size(); }

  Word operator*(const Word& rhs) const;  // concatenation; rhs applied first
  bool operator==(const Word& rhs) const = default;

  Word reduced() const;
  Word inverse() const;
  Word power(long long n) const;

 private:
  std::vector<Atom> atoms_;
};

Word reduce(const Word& w);
Word inverse(const Word& w);
Word power(const Word& w, long long n);
Word conjugate(const Word& w, const Word& by);    // by w by^-1
Word commutator(const Word& u, const Word& v);    // u v u^-1 v^-1

class Environment;
// Substitutes every named atom by its (recursively expanded) definition.
Word expand_labels(const Word& w, const Environment& env);

// Grammar: atoms separated by '*' or whitespace; atom = NAME ['^' int].
// NAME = T | R1 | R2 | A<i> | B<i> | C<i> | D<i> | E | F<i> | U<i> |
//        G<i> | Gm<i> (both spell the gamma family) | $<label> |
//        Tv(x<i>+x<j>+...) for an ad-hoc twist class. Case-sensitive.
// Throws std::invalid_argument with the offending position.
Word parse_word(const std::string& text);

// Canonical rendering; round-trips through parse_word. gamma_as_gm selects
// the "Gm<i>" spelling used in script files (default "G<i>").
std::string format_word(const Word& w, bool gamma_as_gm = false);

class Environment {
 public:
  explicit Environment(GenusModel model) : model_(model) {}

  const GenusModel& model() const { return model_; }

  // Definitions are ordered; a word may reference only earlier labels.
  void define(const std::string& label, const Word& word);
  bool has(const std::string& label) const;
  const Word& lookup(const std::string& label) const;
  const std::vector<std::pair<std::string, Word>>& definitions() const { return defs_; }

 private:
  GenusModel model_;
  std::vector<std::pair<std::string, Word>> defs_;
  std::map<std::string, size_t> index_;
};

// Memoizing evaluator; label results are cached (pure memo, same key ->
// same value), so sharing across threads only needs external confinement.
class Evaluator {
 public:
  Evaluator(const Environment& env, const CurveCatalog& cat, const MappingClassSpec& spec);

  BitMat mod2(const Word& w);
  // Applies the word to a single vector without forming matrix products.
  BitVec apply_mod2(const Word& w, const BitVec& v);
  SignedPermMat eval_signed(const Word& w);

  const CurveCatalog& catalog() const { return cat_; }
  const MappingClassSpec& spec() const { return spec_; }

 private:
  BitMat atom_mod2(const Atom& a);
  const Environment& env_;
  const CurveCatalog& cat_;
  const MappingClassSpec& spec_;
  std::map<std::string, BitMat> label_cache_;
  std::map<std::string, SignedPermMat> signed_label_cache_;
};

BitMat evaluate_mod2(const Word& w, const Environment& env, const CurveCatalog& cat,
                     const MappingClassSpec& spec);
SignedPermMat evaluate_signed(const Word& w, const Environment& env,
                              const MappingClassSpec& spec);

}  // namespace twistgen
