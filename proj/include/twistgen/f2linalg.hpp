#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

// Exact linear algebra over GF(2) plus signed permutation matrices over Z.
//
// Vectors live in Z_2^g with basis classes x_1..x_g (crosscap classes of a
// nonorientable genus-g surface). The pairing <x_i, x_j> = delta_ij is the
// mod-2 intersection form. Matrices act on column vectors; row i of the
// stored representation is the image of the basis vector x_{i+1}, so that
// M*v is the XOR of the rows selected by v.

namespace twistgen {

inline constexpr int kMaxDim = 64;

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int dim);
  BitVec(int dim, std::uint64_t bits);
  static BitVec from_indices(int dim, const std::vector<int>& indices);

  int dim() const { return dim_; }
  std::uint64_t raw() const { return bits_; }

  bool get(int i) const;        // 1-based basis index
  void set(int i, bool value);  // 1-based basis index

  int weight() const;
  bool even_weight() const { return (weight() & 1) == 0; }
  bool is_zero() const { return bits_ == 0; }

  BitVec operator^(const BitVec& other) const;
  bool operator==(const BitVec& other) const = default;

  // Renders as "x1+x3+..." with ascending indices; "0" for the zero vector.
  std::string to_string() const;
  std::vector<int> indices() const;

 private:
  int dim_ = 0;
  std::uint64_t bits_ = 0;
};

// <u, v> = sum u_i v_i mod 2. Throws std::invalid_argument on dim mismatch.
int dot_form(const BitVec& u, const BitVec& v);

class BitMat {
 public:
  BitMat() = default;
  explicit BitMat(int dim);
  static BitMat identity(int dim);

  int dim() const { return dim_; }
  bool is_identity() const;

  BitVec row(int i) const;            // image of basis vector x_i (1-based)
  void set_row(int i, const BitVec& v);

  BitVec apply(const BitVec& v) const;      // M*v
  BitMat operator*(const BitMat& rhs) const;
  bool operator==(const BitMat& rhs) const = default;

  // Inverse via Gaussian elimination; throws std::domain_error if singular.
  BitMat inverse() const;
  BitMat pow(long long e) const;
  int rank() const;

  std::uint64_t raw_row(int i) const { return rows_[static_cast<size_t>(i - 1)]; }
  // FNV-1a over rows; stable across runs, used for report witnesses.
  std::uint64_t hash() const;

 private:
  int dim_ = 0;
  std::vector<std::uint64_t> rows_;
};

BitMat mat_mul(const BitMat& a, const BitMat& b);
BitMat mat_inv(const BitMat& a);

// Transvection x |-> x + <x,a>a, the mod-2 action of the Dehn twist about a
// two-sided curve with class a. Throws std::invalid_argument when a has odd
// weight (a one-sided class carries no Dehn twist).
BitMat transvection_matrix(const BitVec& a);

// True iff <M x_i, M x_j> = delta_ij for all basis pairs.
bool preserves_form(const BitMat& m);

// Integer signed permutation matrix: x_i |-> sign(i) * x_{perm(i)}.
class SignedPermMat {
 public:
  SignedPermMat() = default;
  explicit SignedPermMat(int dim);  // identity
  SignedPermMat(std::vector<int> perm, std::vector<int> signs);
  static SignedPermMat identity(int dim);

  int dim() const { return dim_; }
  int image_of(int i) const { return perm_[static_cast<size_t>(i - 1)]; }
  int sign_of(int i) const { return signs_[static_cast<size_t>(i - 1)]; }

  SignedPermMat operator*(const SignedPermMat& rhs) const;  // composition, rhs applied first
  SignedPermMat inverse() const;
  SignedPermMat pow(long long e) const;
  bool operator==(const SignedPermMat& rhs) const = default;
  bool is_identity() const;

  BitMat mod2() const;

  std::string to_string() const;

 private:
  int dim_ = 0;
  std::vector<int> perm_;   // 1-based images
  std::vector<int> signs_;  // +1 / -1
};

// sign(perm) * product of signs, in {+1, -1}.
int int_det(const SignedPermMat& p);

// Determinant of the induced map on R^g / span(w), w = x_1 + ... + x_g.
// Requires P*w = lambda*w with lambda in {+1,-1}; for a signed permutation
// this forces all signs equal to lambda. Throws std::domain_error otherwise.
int quotient_det(const SignedPermMat& p);

}  // namespace twistgen
