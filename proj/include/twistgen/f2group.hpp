#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistgen/f2linalg.hpp"

// Exact finite matrix-group computation over GF(2): order and membership via
// a base and strong generating set for the natural action on nonzero
// vectors of Z_2^g, plus a brute-force closure oracle.

namespace twistgen {

struct GenSet {
  int dim = 0;
  std::vector<BitMat> gens;

  GenSet() = default;
  // Validates that every generator is invertible and form-preserving.
  GenSet(int dim, std::vector<BitMat> gens);
};

struct BsgsOptions {
  int genus_cap = 21;   // dimension cap for chain construction
  bool force = false;   // allow dimensions beyond the cap
  // When set, chain construction may stop as soon as the product of orbit
  // sizes reaches this value. The product of a partial chain's orbit sizes
  // never exceeds the group order, so reaching a proven upper bound
  // certifies completeness without a full Schreier verification.
  std::optional<mpz_class> known_order;
};

class StabilizerChain {
 public:
  static StabilizerChain build(const GenSet& gens, const BsgsOptions& opts = {});

  const mpz_class& order() const { return order_; }
  bool contains(const BitMat& m) const;
  int depth() const;
  int dim() const { return dim_; }
  std::vector<std::uint64_t> base_points() const;

  ~StabilizerChain();
  StabilizerChain(StabilizerChain&&) noexcept;
  StabilizerChain& operator=(StabilizerChain&&) noexcept;

 private:
  StabilizerChain();
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int dim_ = 0;
  mpz_class order_;
};

mpz_class bsgs_order(const GenSet& gens, const BsgsOptions& opts = {});

bool membership(const BitMat& m, const StabilizerChain& chain);

// BFS closure under multiplication; exact element count. Throws
// std::runtime_error when the closure exceeds cap.
mpz_class brute_closure(const GenSet& gens, std::size_t cap);

// Order of the full pairing-preserving group: |Sp(2h,2)| for g = 2h+1 and
// |Sp(2h,2)| * 2^(2h+1) for g = 2h+2. Cross-check only, never the primary
// acceptance route.
mpz_class target_order(int g);

bool same_group(const GenSet& a, const GenSet& b, const BsgsOptions& opts = {});

}  // namespace twistgen
