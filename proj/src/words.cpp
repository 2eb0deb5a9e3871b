#include "twistgen/words.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace twistgen {

bool Atom::same_generator(const Atom& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Twist: return curve == other.curve;
    case Kind::TwistClass: return cls_indices == other.cls_indices;
    case Kind::Named: return label == other.label;
    default: return true;
  }
}

Word Word::twist(CurveId id, long long exp) {
  Word w;
  Atom a;
  a.kind = Atom::Kind::Twist;
  a.curve = id;
  a.exp = exp;
  if (exp != 0) w.atoms_.push_back(std::move(a));
  return w;
}

Word Word::twist(Family family, int index, long long exp) {
  return twist(CurveId{family, index}, exp);
}

Word Word::twist_class(std::vector<int> indices, long long exp) {
  Word w;
  Atom a;
  a.kind = Atom::Kind::TwistClass;
  a.cls_indices = std::move(indices);
  a.exp = exp;
  if (exp != 0) w.atoms_.push_back(std::move(a));
  return w;
}

Word Word::rot(long long exp) {
  Word w;
  Atom a;
  a.kind = Atom::Kind::Rot;
  a.exp = exp;
  if (exp != 0) w.atoms_.push_back(std::move(a));
  return w;
}

Word Word::refl1(long long exp) {
  Word w;
  Atom a;
  a.kind = Atom::Kind::Refl1;
  a.exp = exp;
  if (exp != 0) w.atoms_.push_back(std::move(a));
  return w;
}

Word Word::refl2(long long exp) {
  Word w;
  Atom a;
  a.kind = Atom::Kind::Refl2;
  a.exp = exp;
  if (exp != 0) w.atoms_.push_back(std::move(a));
  return w;
}

Word Word::named(std::string label, long long exp) {
  Word w;
  Atom a;
  a.kind = Atom::Kind::Named;
  a.label = std::move(label);
  a.exp = exp;
  if (exp != 0) w.atoms_.push_back(std::move(a));
  return w;
}

Word Word::operator*(const Word& rhs) const {
  Word out = *this;
  out.atoms_.insert(out.atoms_.end(), rhs.atoms_.begin(), rhs.atoms_.end());
  return out;
}

Word Word::reduced() const {
  Word out;
  for (const Atom& a : atoms_) {
    if (a.exp == 0) continue;
    if (!out.atoms_.empty() && out.atoms_.back().same_generator(a)) {
      out.atoms_.back().exp += a.exp;
      if (out.atoms_.back().exp == 0) out.atoms_.pop_back();
    } else {
      out.atoms_.push_back(a);
    }
  }
  return out;
}

Word Word::inverse() const {
  Word out;
  out.atoms_.reserve(atoms_.size());
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
    Atom a = *it;
    a.exp = -a.exp;
    out.atoms_.push_back(std::move(a));
  }
  return out;
}

Word Word::power(long long n) const {
  if (n == 0) return Word();
  Word base = n < 0 ? inverse() : *this;
  long long reps = n < 0 ? -n : n;
  Word out;
  for (long long i = 0; i < reps; ++i) out = out * base;
  return out;
}

Word reduce(const Word& w) { return w.reduced(); }
Word inverse(const Word& w) { return w.inverse(); }
Word power(const Word& w, long long n) { return w.power(n); }

Word conjugate(const Word& w, const Word& by) { return (by * w * by.inverse()).reduced(); }

Word commutator(const Word& u, const Word& v) {
  return (u * v * u.inverse() * v.inverse()).reduced();
}

Word expand_labels(const Word& w, const Environment& env) {
  Word out;
  for (const Atom& a : w.atoms()) {
    if (a.kind == Atom::Kind::Named) {
      Word body = expand_labels(env.lookup(a.label), env);
      out = out * body.power(a.exp);
    } else {
      Word single;
      switch (a.kind) {
        case Atom::Kind::Twist: single = Word::twist(a.curve, a.exp); break;
        case Atom::Kind::TwistClass: single = Word::twist_class(a.cls_indices, a.exp); break;
        case Atom::Kind::Rot: single = Word::rot(a.exp); break;
        case Atom::Kind::Refl1: single = Word::refl1(a.exp); break;
        case Atom::Kind::Refl2: single = Word::refl2(a.exp); break;
        default: break;
      }
      out = out * single;
    }
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(size_t pos, const std::string& what) {
  throw std::invalid_argument("word syntax error at position " + std::to_string(pos) + ": " + what);
}

}  // namespace

Word parse_word(const std::string& text) {
  Word out;
  size_t i = 0;
  const size_t n = text.size();
  auto skip_sep = [&] {
    while (i < n && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip_sep();
  while (i < n) {
    size_t start = i;
    Atom a;
    char c = text[i];
    if (c == '$') {
      ++i;
      std::string label;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        label += text[i++];
      }
      if (label.empty()) parse_fail(start, "empty label after '$'");
      a.kind = Atom::Kind::Named;
      a.label = label;
    } else if (text.compare(i, 3, "Tv(") == 0) {
      i += 3;
      std::vector<int> indices;
      while (i < n && text[i] != ')') {
        if (text[i] == '+') {
          ++i;
          continue;
        }
        if (text[i] != 'x') parse_fail(i, "expected basis term x<i> in Tv(...)");
        ++i;
        size_t digits = 0;
        int idx = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
          idx = idx * 10 + (text[i] - '0');
          ++i;
          ++digits;
        }
        if (digits == 0 || idx == 0) parse_fail(i, "bad basis index in Tv(...)");
        indices.push_back(idx);
      }
      if (i >= n) parse_fail(start, "unterminated Tv(");
      ++i;  // ')'
      if (indices.empty()) parse_fail(start, "empty class in Tv()");
      a.kind = Atom::Kind::TwistClass;
      a.cls_indices = indices;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::string name;
      while (i < n && std::isalnum(static_cast<unsigned char>(text[i]))) name += text[i++];
      if (name == "T") {
        a.kind = Atom::Kind::Rot;
      } else if (name == "R1") {
        a.kind = Atom::Kind::Refl1;
      } else if (name == "R2") {
        a.kind = Atom::Kind::Refl2;
      } else if (name == "E") {
        a.kind = Atom::Kind::Twist;
        a.curve = CurveId{Family::E, 1};
      } else {
        Family fam;
        size_t digit_pos = 1;
        switch (name[0]) {
          case 'A': fam = Family::A; break;
          case 'B': fam = Family::B; break;
          case 'C': fam = Family::C; break;
          case 'D': fam = Family::D; break;
          case 'F': fam = Family::F; break;
          case 'U': fam = Family::U; break;
          case 'G':
            fam = Family::Gamma;
            if (name.size() > 1 && name[1] == 'm') digit_pos = 2;
            break;
          default: parse_fail(start, "unknown generator '" + name + "'");
        }
        if (name.size() <= digit_pos) parse_fail(start, "missing index in '" + name + "'");
        int index = 0;
        for (size_t p = digit_pos; p < name.size(); ++p) {
          if (!std::isdigit(static_cast<unsigned char>(name[p])))
            parse_fail(start, "bad index in '" + name + "'");
          index = index * 10 + (name[p] - '0');
        }
        if (index == 0) parse_fail(start, "curve index 0 in '" + name + "'");
        a.kind = Atom::Kind::Twist;
        a.curve = CurveId{fam, index};
      }
    } else {
      parse_fail(i, std::string("unexpected character '") + c + "'");
    }

    if (i < n && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < n && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      size_t digits = 0;
      long long e = 0;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        e = e * 10 + (text[i] - '0');
        ++i;
        ++digits;
      }
      if (digits == 0) parse_fail(i, "missing exponent after '^'");
      a.exp = neg ? -e : e;
      if (a.exp == 0) parse_fail(start, "exponent must be nonzero");
    }
    Word atom_word;
    switch (a.kind) {
      case Atom::Kind::Twist: atom_word = Word::twist(a.curve, a.exp); break;
      case Atom::Kind::TwistClass: atom_word = Word::twist_class(a.cls_indices, a.exp); break;
      case Atom::Kind::Rot: atom_word = Word::rot(a.exp); break;
      case Atom::Kind::Refl1: atom_word = Word::refl1(a.exp); break;
      case Atom::Kind::Refl2: atom_word = Word::refl2(a.exp); break;
      case Atom::Kind::Named: atom_word = Word::named(a.label, a.exp); break;
    }
    out = out * atom_word;
    skip_sep();
  }
  return out;
}

std::string format_word(const Word& w, bool gamma_as_gm) {
  std::ostringstream os;
  bool first = true;
  for (const Atom& a : w.atoms()) {
    if (!first) os << " * ";
    first = false;
    switch (a.kind) {
      case Atom::Kind::Rot: os << "T"; break;
      case Atom::Kind::Refl1: os << "R1"; break;
      case Atom::Kind::Refl2: os << "R2"; break;
      case Atom::Kind::Named: os << "$" << a.label; break;
      case Atom::Kind::TwistClass: {
        os << "Tv(";
        for (size_t i = 0; i < a.cls_indices.size(); ++i) {
          if (i) os << "+";
          os << "x" << a.cls_indices[i];
        }
        os << ")";
        break;
      }
      case Atom::Kind::Twist: {
        if (a.curve.family == Family::E) {
          os << "E";
        } else if (a.curve.family == Family::Gamma) {
          os << (gamma_as_gm ? "Gm" : "G") << a.curve.index;
        } else {
          char c = static_cast<char>(std::toupper(family_prefix(a.curve.family)[0]));
          os << c << a.curve.index;
        }
        break;
      }
    }
    if (a.exp != 1) os << "^" << a.exp;
  }
  return os.str();
}

void Environment::define(const std::string& label, const Word& word) {
  if (index_.count(label)) throw std::invalid_argument("duplicate definition of $" + label);
  for (const Atom& a : word.atoms()) {
    if (a.kind == Atom::Kind::Named && !index_.count(a.label)) {
      throw std::invalid_argument("definition of $" + label + " references unknown $" + a.label);
    }
  }
  index_[label] = defs_.size();
  defs_.emplace_back(label, word);
}

bool Environment::has(const std::string& label) const { return index_.count(label) > 0; }

const Word& Environment::lookup(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw std::invalid_argument("unresolved label $" + label);
  return defs_[it->second].second;
}

Evaluator::Evaluator(const Environment& env, const CurveCatalog& cat, const MappingClassSpec& spec)
    : env_(env), cat_(cat), spec_(spec) {
  if (env.model().g != cat.genus()) {
    throw std::invalid_argument("environment and catalog genus mismatch");
  }
}

BitMat Evaluator::atom_mod2(const Atom& a) {
  const int g = cat_.genus();
  switch (a.kind) {
    case Atom::Kind::Twist: {
      // Transvections are involutions mod 2; only exponent parity matters.
      if (a.exp % 2 == 0) return BitMat::identity(g);
      return transvection_matrix(cat_.cls(a.curve));
    }
    case Atom::Kind::TwistClass: {
      if (a.exp % 2 == 0) return BitMat::identity(g);
      return transvection_matrix(BitVec::from_indices(g, a.cls_indices));
    }
    case Atom::Kind::Rot: return spec_.T_mod2.pow(a.exp);
    case Atom::Kind::Refl1:
    case Atom::Kind::Refl2: {
      if (a.kind == Atom::Kind::Refl1 ? !spec_.rho1.has_value() : !spec_.rho2.has_value()) {
        throw std::invalid_argument("reflections are unavailable in this surface model");
      }
      if (a.exp % 2 == 0) return BitMat::identity(g);
      return (a.kind == Atom::Kind::Refl1 ? *spec_.rho1 : *spec_.rho2).mod2();
    }
    case Atom::Kind::Named: {
      auto it = label_cache_.find(a.label);
      BitMat base;
      if (it != label_cache_.end()) {
        base = it->second;
      } else {
        base = mod2(env_.lookup(a.label));
        label_cache_.emplace(a.label, base);
      }
      return a.exp == 1 ? base : base.pow(a.exp);
    }
  }
  return BitMat::identity(g);
}

BitMat Evaluator::mod2(const Word& w) {
  BitMat acc = BitMat::identity(cat_.genus());
  for (const Atom& a : w.atoms()) acc = acc * atom_mod2(a);
  return acc;
}

BitVec Evaluator::apply_mod2(const Word& w, const BitVec& v) {
  BitVec cur = v;
  const auto& atoms = w.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    const Atom& a = *it;
    switch (a.kind) {
      case Atom::Kind::Twist:
      case Atom::Kind::TwistClass: {
        if (a.exp % 2 == 0) break;
        BitVec cls = a.kind == Atom::Kind::Twist
                         ? cat_.cls(a.curve)
                         : BitVec::from_indices(cat_.genus(), a.cls_indices);
        if (!cls.even_weight()) throw std::invalid_argument("one-sided class has no Dehn twist");
        if (dot_form(cur, cls)) cur = cur ^ cls;
        break;
      }
      case Atom::Kind::Rot: {
        long long e = a.exp;
        const BitMat& T = spec_.T_mod2;
        if (e > 0) {
          for (long long s = 0; s < e; ++s) cur = T.apply(cur);
        } else if (e < 0) {
          BitMat Ti = T.inverse();
          for (long long s = 0; s < -e; ++s) cur = Ti.apply(cur);
        }
        break;
      }
      case Atom::Kind::Refl1:
      case Atom::Kind::Refl2: {
        if (a.exp % 2 == 0) break;
        const auto& rho = a.kind == Atom::Kind::Refl1 ? spec_.rho1 : spec_.rho2;
        if (!rho) throw std::invalid_argument("reflections are unavailable in this surface model");
        cur = rho->mod2().apply(cur);
        break;
      }
      case Atom::Kind::Named: {
        BitMat m = atom_mod2(a);
        cur = m.apply(cur);
        break;
      }
    }
  }
  return cur;
}

SignedPermMat Evaluator::eval_signed(const Word& w) {
  const int g = cat_.genus();
  SignedPermMat acc = SignedPermMat::identity(g);
  for (const Atom& a : w.atoms()) {
    switch (a.kind) {
      case Atom::Kind::Twist:
      case Atom::Kind::TwistClass:
        throw std::invalid_argument("no integer representation for twists");
      case Atom::Kind::Rot:
        acc = acc * spec_.T_signed.pow(a.exp);
        break;
      case Atom::Kind::Refl1:
      case Atom::Kind::Refl2: {
        const auto& rho = a.kind == Atom::Kind::Refl1 ? spec_.rho1 : spec_.rho2;
        if (!rho) throw std::invalid_argument("reflections are unavailable in this surface model");
        acc = acc * rho->pow(a.exp);
        break;
      }
      case Atom::Kind::Named: {
        auto it = signed_label_cache_.find(a.label);
        SignedPermMat base(g);
        if (it != signed_label_cache_.end()) {
          base = it->second;
        } else {
          base = eval_signed(env_.lookup(a.label));
          signed_label_cache_.emplace(a.label, base);
        }
        acc = acc * base.pow(a.exp);
        break;
      }
    }
  }
  return acc;
}

BitMat evaluate_mod2(const Word& w, const Environment& env, const CurveCatalog& cat,
                     const MappingClassSpec& spec) {
  Evaluator ev(env, cat, spec);
  return ev.mod2(w);
}

SignedPermMat evaluate_signed(const Word& w, const Environment& env,
                              const MappingClassSpec& spec) {
  // Twist-free words never touch the catalog, so this path needs none.
  std::map<std::string, SignedPermMat> cache;
  struct Rec {
    const Environment& env;
    const MappingClassSpec& spec;
    std::map<std::string, SignedPermMat>& cache;
    SignedPermMat eval(const Word& w) {
      SignedPermMat acc = SignedPermMat::identity(spec.model.g);
      for (const Atom& a : w.atoms()) {
        switch (a.kind) {
          case Atom::Kind::Twist:
          case Atom::Kind::TwistClass:
            throw std::invalid_argument("no integer representation for twists");
          case Atom::Kind::Rot:
            acc = acc * spec.T_signed.pow(a.exp);
            break;
          case Atom::Kind::Refl1:
          case Atom::Kind::Refl2: {
            const auto& rho = a.kind == Atom::Kind::Refl1 ? spec.rho1 : spec.rho2;
            if (!rho) throw std::invalid_argument("reflections are unavailable in this surface model");
            acc = acc * rho->pow(a.exp);
            break;
          }
          case Atom::Kind::Named: {
            auto it = cache.find(a.label);
            SignedPermMat base = it != cache.end() ? it->second : eval(env.lookup(a.label));
            if (it == cache.end()) cache.emplace(a.label, base);
            acc = acc * base.pow(a.exp);
            break;
          }
        }
      }
      return acc;
    }
  } rec{env, spec, cache};
  return rec.eval(w);
}

}  // namespace twistgen
