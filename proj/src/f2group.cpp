#include "twistgen/f2group.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace twistgen {

GenSet::GenSet(int dim_in, std::vector<BitMat> gens_in) : dim(dim_in), gens(std::move(gens_in)) {
  for (const auto& m : gens) {
    if (m.dim() != dim) throw std::invalid_argument("generator dimension mismatch");
    if (!preserves_form(m)) {
      throw std::invalid_argument("generator does not preserve the intersection form");
    }
    m.inverse();  // throws if singular
  }
}

namespace {

constexpr std::uint8_t kUnseen = 0;
constexpr std::uint8_t kRoot = 255;
constexpr std::size_t kRepCacheMax = 1u << 16;

std::uint64_t apply_point(const BitMat& m, std::uint64_t point, int dim) {
  return m.apply(BitVec(dim, point)).raw();
}

}  // namespace

struct StabilizerChain::Impl {
  int dim = 0;
  std::uint64_t domain = 0;

  struct Level {
    std::uint64_t base = 0;
    std::vector<BitMat> gens;      // strong generators first dropping here
    std::vector<std::uint8_t> sv;  // Schreier vector: 0 unseen, 255 root, else gen index + 1
    std::vector<std::uint64_t> orbit;
    std::unordered_map<std::uint64_t, BitMat> inv_reps;  // point -> u^-1, small orbits only
    bool cached = false;
    std::uint64_t version = 0;           // generation stamp the orbit was computed at
    std::uint64_t verified_version = 0;  // stamp of the last clean Schreier pass
  };

  std::vector<Level> levels;
  std::uint64_t version = 1;

  // Generators usable at level i: strong generators stored at levels >= i
  // (they fix all earlier base points). The Schreier vector references this
  // flattened, deterministic ordering.
  std::vector<const BitMat*> gens_at(std::size_t i) const {
    std::vector<const BitMat*> out;
    for (std::size_t l = i; l < levels.size(); ++l) {
      for (const auto& g : levels[l].gens) out.push_back(&g);
    }
    return out;
  }

  void recompute_orbit(std::size_t li) {
    Level& lv = levels[li];
    if (lv.version == version && !lv.orbit.empty()) return;
    auto gens = gens_at(li);
    std::vector<BitMat> gen_invs;
    gen_invs.reserve(gens.size());
    for (auto* g : gens) gen_invs.push_back(g->inverse());
    if (gens.size() >= 254) throw std::runtime_error("too many strong generators at one level");

    lv.sv.assign(static_cast<std::size_t>(domain), kUnseen);
    lv.orbit.clear();
    lv.inv_reps.clear();
    lv.sv[static_cast<std::size_t>(lv.base)] = kRoot;
    lv.orbit.push_back(lv.base);
    std::unordered_map<std::uint64_t, BitMat> inv_reps;
    bool caching = true;
    inv_reps.emplace(lv.base, BitMat::identity(dim));

    for (std::size_t qi = 0; qi < lv.orbit.size(); ++qi) {
      std::uint64_t p = lv.orbit[qi];
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        std::uint64_t q = apply_point(*gens[gi], p, dim);
        if (lv.sv[static_cast<std::size_t>(q)] != kUnseen) continue;
        lv.sv[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(gi + 1);
        lv.orbit.push_back(q);
        if (caching) {
          if (lv.orbit.size() > kRepCacheMax) {
            caching = false;
            inv_reps.clear();
          } else {
            // u_q = s u_p, so u_q^-1 = u_p^-1 s^-1.
            inv_reps.emplace(q, inv_reps.at(p) * gen_invs[gi]);
          }
        }
      }
    }
    lv.cached = caching;
    if (caching) {
      lv.inv_reps = std::move(inv_reps);
      // The transversal cache answers both membership and rep queries, so
      // the domain-sized Schreier array can be released (it dominates the
      // footprint at large genus).
      lv.sv.clear();
      lv.sv.shrink_to_fit();
    }
    lv.version = version;
  }

  // u_p^-1 where u_p maps the level's base to p. Requires p in the orbit.
  BitMat inv_rep(std::size_t li, std::uint64_t p) {
    Level& lv = levels[li];
    if (lv.cached) return lv.inv_reps.at(p);
    auto gens = gens_at(li);
    std::vector<int> path;
    std::uint64_t cur = p;
    while (lv.sv[static_cast<std::size_t>(cur)] != kRoot) {
      int gi = lv.sv[static_cast<std::size_t>(cur)] - 1;
      path.push_back(gi);
      cur = apply_point(gens[static_cast<std::size_t>(gi)]->inverse(), cur, dim);
    }
    // Walking q -> root visits s_k .. s_1; u_q^-1 = s_1^-1 ... s_k^-1.
    BitMat acc = BitMat::identity(dim);
    for (int gi : path) acc = gens[static_cast<std::size_t>(gi)]->inverse() * acc;
    return acc;
  }

  // Sifts m through levels starting at `from`; returns the residue and the
  // level index where it stops (== levels.size() when it fell through).
  std::pair<BitMat, std::size_t> sift(BitMat m, std::size_t from) {
    for (std::size_t i = from; i < levels.size(); ++i) {
      if (m.is_identity()) return {m, i};
      recompute_orbit(i);
      std::uint64_t p = apply_point(m, levels[i].base, dim);
      if (p == levels[i].base) continue;
      bool in_orbit = levels[i].cached ? levels[i].inv_reps.count(p) > 0
                                       : levels[i].sv[static_cast<std::size_t>(p)] != kUnseen;
      if (!in_orbit) return {m, i};
      m = inv_rep(i, p) * m;
    }
    return {m, levels.size()};
  }

  std::uint64_t first_moved_point(const BitMat& m) const {
    // Index-lexicographic order on vectors = numeric order with x1 the
    // lowest bit. A non-identity matrix moves some basis vector, bounding
    // the scan.
    for (std::uint64_t v = 1; v < domain; ++v) {
      if (apply_point(m, v, dim) != v) return v;
    }
    throw std::logic_error("identity has no moved point");
  }

  void add_generator(const BitMat& residue, std::size_t level) {
    if (level == levels.size()) {
      Level lv;
      lv.base = first_moved_point(residue);
      levels.push_back(std::move(lv));
    }
    levels[level].gens.push_back(residue);
    ++version;
  }

  mpz_class orbit_product() {
    mpz_class prod = 1;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      recompute_orbit(i);
      prod *= static_cast<unsigned long>(levels[i].orbit.size());
    }
    return prod;
  }

  // Inserts one element, extending the chain if it does not sift through.
  bool insert(const BitMat& m) {
    auto [residue, level] = sift(m, 0);
    if (residue.is_identity()) return false;
    add_generator(residue, level);
    return true;
  }

  // Deterministic pseudo-random products of current strong generators; used
  // only in the known-order mode to feed the chain.
  struct WordStream {
    std::uint64_t state = 0x9E3779B97F4A7C15ULL;
    std::uint64_t next() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state;
    }
  };

  void complete_known_order(const mpz_class& bound) {
    WordStream ws;
    const int max_words = 20000;
    for (int w = 0; w < max_words; ++w) {
      if (orbit_product() == bound) return;
      auto all = gens_at(0);
      if (all.empty()) return;
      int len = 2 + static_cast<int>(ws.next() % 7);
      BitMat prod = *all[ws.next() % all.size()];
      for (int s = 1; s < len; ++s) prod = prod * *all[ws.next() % all.size()];
      insert(prod);
    }
    if (orbit_product() != bound) complete_full();
  }

  // Deterministic Schreier-Sims: verifies that every Schreier generator of
  // every level sifts to the identity, adding residues as new strong
  // generators until the chain is closed.
  void complete_full() {
    int i = static_cast<int>(levels.size()) - 1;
    if (i < 0) return;
    while (i >= 0) {
      Level& lv = levels[static_cast<std::size_t>(i)];
      if (lv.verified_version == version) {
        --i;
        continue;
      }
      recompute_orbit(static_cast<std::size_t>(i));
      auto gens = gens_at(static_cast<std::size_t>(i));
      bool added = false;
      for (std::size_t pi = 0; !added && pi < lv.orbit.size(); ++pi) {
        std::uint64_t p = lv.orbit[pi];
        BitMat u_p_inv = inv_rep(static_cast<std::size_t>(i), p);
        BitMat u_p = u_p_inv.inverse();
        for (std::size_t gi = 0; !added && gi < gens.size(); ++gi) {
          std::uint64_t q = apply_point(*gens[gi], p, dim);
          if (!lv.cached && lv.sv[static_cast<std::size_t>(q)] == static_cast<std::uint8_t>(gi + 1)) {
            // Tree edge: the Schreier generator is the identity by
            // construction.
            std::uint64_t parent = apply_point(gens[gi]->inverse(), q, dim);
            if (parent == p) continue;
          }
          BitMat schreier = inv_rep(static_cast<std::size_t>(i), q) * (*gens[gi] * u_p);
          auto [residue, j] = sift(schreier, static_cast<std::size_t>(i) + 1);
          if (!residue.is_identity()) {
            add_generator(residue, j);
            i = static_cast<int>(j);
            added = true;
          }
        }
      }
      if (!added) {
        lv.verified_version = version;
        --i;
      }
    }
  }
};

StabilizerChain::StabilizerChain() : impl_(new Impl) {}
StabilizerChain::~StabilizerChain() = default;
StabilizerChain::StabilizerChain(StabilizerChain&&) noexcept = default;
StabilizerChain& StabilizerChain::operator=(StabilizerChain&&) noexcept = default;

StabilizerChain StabilizerChain::build(const GenSet& gens, const BsgsOptions& opts) {
  if (gens.dim > opts.genus_cap && !opts.force) {
    double mib = static_cast<double>(1ULL << gens.dim) / (1024.0 * 1024.0);
    throw std::runtime_error(
        "dimension " + std::to_string(gens.dim) + " exceeds the chain cap " +
        std::to_string(opts.genus_cap) + " (orbit arrays need about " +
        std::to_string(static_cast<long long>(mib)) +
        " MiB per level); pass force/override to proceed");
  }
  if (gens.dim < 1 || gens.dim > 40) {
    throw std::runtime_error("chain construction supports 1 <= dim <= 40");
  }
  StabilizerChain chain;
  chain.dim_ = gens.dim;
  chain.impl_->dim = gens.dim;
  chain.impl_->domain = 1ULL << gens.dim;
  for (const auto& g : gens.gens) chain.impl_->insert(g);
  if (opts.known_order.has_value()) {
    chain.impl_->complete_known_order(*opts.known_order);
  } else {
    chain.impl_->complete_full();
  }
  chain.order_ = chain.impl_->orbit_product();
  return chain;
}

bool StabilizerChain::contains(const BitMat& m) const {
  if (m.dim() != dim_) throw std::invalid_argument("dimension mismatch in membership");
  auto [residue, level] = impl_->sift(m, 0);
  (void)level;
  return residue.is_identity();
}

int StabilizerChain::depth() const { return static_cast<int>(impl_->levels.size()); }

std::vector<std::uint64_t> StabilizerChain::base_points() const {
  std::vector<std::uint64_t> out;
  for (const auto& lv : impl_->levels) out.push_back(lv.base);
  return out;
}

mpz_class bsgs_order(const GenSet& gens, const BsgsOptions& opts) {
  return StabilizerChain::build(gens, opts).order();
}

bool membership(const BitMat& m, const StabilizerChain& chain) { return chain.contains(m); }

namespace {

struct MatKey {
  std::vector<std::uint64_t> rows;
  bool operator==(const MatKey&) const = default;
};

struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t r : k.rows) {
      h ^= r;
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

MatKey key_of(const BitMat& m) {
  MatKey k;
  k.rows.reserve(static_cast<std::size_t>(m.dim()));
  for (int i = 1; i <= m.dim(); ++i) k.rows.push_back(m.raw_row(i));
  return k;
}

}  // namespace

mpz_class brute_closure(const GenSet& gens, std::size_t cap) {
  std::unordered_set<MatKey, MatKeyHash> seen;
  std::vector<BitMat> queue;
  BitMat id = BitMat::identity(gens.dim);
  seen.insert(key_of(id));
  queue.push_back(id);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    BitMat cur = queue[qi];
    for (const auto& g : gens.gens) {
      BitMat next = cur * g;
      if (seen.insert(key_of(next)).second) {
        if (seen.size() > cap) {
          throw std::runtime_error("closure exceeds cap of " + std::to_string(cap));
        }
        queue.push_back(next);
      }
    }
  }
  return mpz_class(static_cast<unsigned long>(seen.size()));
}

mpz_class target_order(int g) {
  if (g < 2) throw std::invalid_argument("target_order needs g >= 2");
  int h = (g % 2 == 1) ? (g - 1) / 2 : (g - 2) / 2;
  mpz_class sp = 1;
  mpz_class two = 2;
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(h) * h);
  sp *= p;
  for (int i = 1; i <= h; ++i) {
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), mpz_class(4).get_mpz_t(), static_cast<unsigned long>(i));
    sp *= (q - 1);
  }
  if (g % 2 == 0) {
    mpz_class ext;
    mpz_pow_ui(ext.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(2 * h + 1));
    sp *= ext;
  }
  return sp;
}

bool same_group(const GenSet& a, const GenSet& b, const BsgsOptions& opts) {
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch in same_group");
  StabilizerChain ca = StabilizerChain::build(a, opts);
  StabilizerChain cb = StabilizerChain::build(b, opts);
  for (const auto& g : a.gens) {
    if (!cb.contains(g)) return false;
  }
  for (const auto& g : b.gens) {
    if (!ca.contains(g)) return false;
  }
  return true;
}

}  // namespace twistgen
