#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistgen/f2group.hpp"
#include "twistgen/surface.hpp"
#include "twistgen/words.hpp"

// Machine-readable encodings of the generating-set proof chains, a step
// runner, and a constructive conjugator finder for the commutator
// factorizations.

namespace twistgen {

enum class CheckLevel { Mod2, Signed };

struct Step {
  enum class Kind { Define, AssertRepEqual, AssertClassImage, AssertGeneration };
  Kind kind = Kind::Define;

  std::string label;  // Define
  Word word;          // Define body / AssertRepEqual lhs / AssertClassImage map
  Word rhs;           // AssertRepEqual
  CheckLevel level = CheckLevel::Mod2;
  std::vector<std::pair<CurveId, CurveId>> pairs;  // AssertClassImage
  std::vector<Word> gens;                          // AssertGeneration
  std::string reference;                           // AssertGeneration ("omori")

  std::string to_text() const;  // one DSL line
};

struct Script {
  std::string id;
  int genus = 0;
  ModelKind model = ModelKind::Cyclic;
  std::string title;
  std::vector<Step> steps;
  std::vector<std::string> variant_notes;  // genus-conditional selections made
};

struct StepResult {
  std::size_t index = 0;
  Step::Kind kind = Step::Kind::Define;
  CheckLevel level = CheckLevel::Mod2;
  enum class Status { Pass, Fail, Deferred } status = Status::Pass;
  std::string text;
  std::string detail;
  std::uint64_t witness = 0;
};

struct RunReport {
  std::string script_id;
  int genus = 0;
  ModelKind model = ModelKind::Cyclic;
  // Passing certifies the homological shadow of the proof: exact identities
  // in the mod-2 (and where stated, signed) representation plus exact
  // generation of the mod-2 image group. It does not certify
  // mapping-class-level equality.
  std::string semantics_note;
  std::vector<StepResult> steps;
  bool pass = true;
  int deferred = 0;
  double wall_ms = 0.0;
};

struct RunOptions {
  // Generation steps run exactly when genus <= generation_cap and are
  // otherwise reported as deferred (the corollary-scale chain computation
  // is a separate command).
  int generation_cap = 10;
  std::optional<CheckLevel> level_filter;
  BsgsOptions bsgs;
};

std::vector<std::string> builtin_script_ids();
bool is_builtin_script_id(const std::string& id);

// Fully instantiated step list for one theorem at one genus, with the
// genus-conditional variants selected. Throws std::invalid_argument naming
// the bound when g is out of the script's range.
Script builtin_script(const std::string& id, int g);

// The commutator-factorization script applicable at g (two/three commutator
// generators at large genus, three/four near the small bounds).
Script commutator_scripts(int g);

ModelKind script_model_kind(const std::string& id);

RunReport run_script(const Script& s, const CurveCatalog& cat, const MappingClassSpec& spec,
                     const RunOptions& opts = {});

// A word in (ad-hoc) twists whose mod-2 evaluation maps each source class to
// its target, fixing already-placed targets. Sources and targets must be
// nonzero, even weight, with matching pairwise form values.
Word find_conjugator(const std::vector<std::pair<BitVec, BitVec>>& pairs,
                     const CurveCatalog& cat);

// Reference generating words: the (g+1) Dehn twists of the chain-plus-extras
// generating set this artifact compares everything against.
std::vector<Word> omori_generator_words(const GenusModel& model);

// The candidate generating words of a script's closing generation step,
// with script-defined labels expanded away. "omori" gives the reference set.
std::vector<Word> script_generator_words(const std::string& id, int g);
GenSet evaluate_genset(const std::vector<Word>& words, const CurveCatalog& cat,
                       const MappingClassSpec& spec);

// One step per line: "def <label> = <word>", "assert_eq <lhs> == <rhs>",
// "assert_eq_signed ...", "assert_img <word> : a->b, c->d",
// "assert_gen [<w>, ...] == omori". '#' comments. Round-trips exactly.
std::string script_to_text(const Script& s);
Script script_from_text(const std::string& text);

}  // namespace twistgen
