#include "twistgen/f2linalg.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace twistgen {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("dimension must be in [1, " + std::to_string(kMaxDim) +
                                "], got " + std::to_string(dim));
  }
}

std::uint64_t mask_for(int dim) {
  return dim == 64 ? ~0ULL : ((1ULL << dim) - 1);
}

}  // namespace

BitVec::BitVec(int dim) : dim_(dim) { check_dim(dim); }

BitVec::BitVec(int dim, std::uint64_t bits) : dim_(dim), bits_(bits & mask_for(dim)) {
  check_dim(dim);
  if (bits != (bits & mask_for(dim))) {
    throw std::invalid_argument("bit pattern exceeds dimension");
  }
}

BitVec BitVec::from_indices(int dim, const std::vector<int>& indices) {
  BitVec v(dim);
  for (int i : indices) v.set(i, true);
  return v;
}

bool BitVec::get(int i) const {
  if (i < 1 || i > dim_) throw std::out_of_range("basis index out of range");
  return (bits_ >> (i - 1)) & 1;
}

void BitVec::set(int i, bool value) {
  if (i < 1 || i > dim_) throw std::out_of_range("basis index out of range");
  if (value)
    bits_ |= (1ULL << (i - 1));
  else
    bits_ &= ~(1ULL << (i - 1));
}

int BitVec::weight() const { return std::popcount(bits_); }

BitVec BitVec::operator^(const BitVec& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("dimension mismatch");
  return BitVec(dim_, bits_ ^ other.bits_);
}

std::string BitVec::to_string() const {
  if (bits_ == 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 1; i <= dim_; ++i) {
    if (get(i)) {
      if (!first) os << "+";
      os << "x" << i;
      first = false;
    }
  }
  return os.str();
}

std::vector<int> BitVec::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= dim_; ++i)
    if (get(i)) out.push_back(i);
  return out;
}

int dot_form(const BitVec& u, const BitVec& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("dimension mismatch in dot_form");
  return std::popcount(u.raw() & v.raw()) & 1;
}

BitMat::BitMat(int dim) : dim_(dim), rows_(static_cast<size_t>(dim), 0) { check_dim(dim); }

BitMat BitMat::identity(int dim) {
  BitMat m(dim);
  for (int i = 1; i <= dim; ++i) m.rows_[static_cast<size_t>(i - 1)] = 1ULL << (i - 1);
  return m;
}

bool BitMat::is_identity() const {
  for (int i = 1; i <= dim_; ++i)
    if (rows_[static_cast<size_t>(i - 1)] != (1ULL << (i - 1))) return false;
  return dim_ > 0;
}

BitVec BitMat::row(int i) const {
  if (i < 1 || i > dim_) throw std::out_of_range("row index out of range");
  return BitVec(dim_, rows_[static_cast<size_t>(i - 1)]);
}

void BitMat::set_row(int i, const BitVec& v) {
  if (i < 1 || i > dim_) throw std::out_of_range("row index out of range");
  if (v.dim() != dim_) throw std::invalid_argument("row dimension mismatch");
  rows_[static_cast<size_t>(i - 1)] = v.raw();
}

BitVec BitMat::apply(const BitVec& v) const {
  if (v.dim() != dim_) throw std::invalid_argument("dimension mismatch in apply");
  std::uint64_t acc = 0;
  std::uint64_t bits = v.raw();
  while (bits) {
    int i = std::countr_zero(bits);
    acc ^= rows_[static_cast<size_t>(i)];
    bits &= bits - 1;
  }
  return BitVec(dim_, acc);
}

BitMat BitMat::operator*(const BitMat& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch in product");
  BitMat out(dim_);
  for (int i = 0; i < dim_; ++i) {
    std::uint64_t acc = 0;
    std::uint64_t bits = rhs.rows_[static_cast<size_t>(i)];
    while (bits) {
      int j = std::countr_zero(bits);
      acc ^= rows_[static_cast<size_t>(j)];
      bits &= bits - 1;
    }
    out.rows_[static_cast<size_t>(i)] = acc;
  }
  return out;
}

BitMat BitMat::inverse() const {
  // Gauss-Jordan on [A | I]. Inverting the stored row matrix is exactly the
  // stored representation of the inverse map ((M^T)^-1 = (M^-1)^T).
  std::vector<std::uint64_t> a(rows_);
  std::vector<std::uint64_t> inv(static_cast<size_t>(dim_));
  for (int i = 0; i < dim_; ++i) inv[static_cast<size_t>(i)] = 1ULL << i;

  int row = 0;
  for (int col = 0; col < dim_; ++col) {
    int pivot = -1;
    for (int r = row; r < dim_; ++r) {
      if ((a[static_cast<size_t>(r)] >> col) & 1) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::domain_error("singular matrix has no inverse");
    std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(row)]);
    std::swap(inv[static_cast<size_t>(pivot)], inv[static_cast<size_t>(row)]);
    for (int r = 0; r < dim_; ++r) {
      if (r != row && ((a[static_cast<size_t>(r)] >> col) & 1)) {
        a[static_cast<size_t>(r)] ^= a[static_cast<size_t>(row)];
        inv[static_cast<size_t>(r)] ^= inv[static_cast<size_t>(row)];
      }
    }
    ++row;
  }
  BitMat out(dim_);
  out.rows_ = std::move(inv);
  return out;
}

BitMat BitMat::pow(long long e) const {
  BitMat base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  BitMat acc = BitMat::identity(dim_);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

int BitMat::rank() const {
  std::vector<std::uint64_t> a(rows_);
  int rank = 0;
  for (int col = 0; col < dim_ && rank < dim_; ++col) {
    int pivot = -1;
    for (int r = rank; r < dim_; ++r) {
      if ((a[static_cast<size_t>(r)] >> col) & 1) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(rank)]);
    for (int r = rank + 1; r < dim_; ++r) {
      if ((a[static_cast<size_t>(r)] >> col) & 1) a[static_cast<size_t>(r)] ^= a[static_cast<size_t>(rank)];
    }
    ++rank;
  }
  return rank;
}

std::uint64_t BitMat::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(dim_));
  for (std::uint64_t r : rows_) mix(r);
  return h;
}

BitMat mat_mul(const BitMat& a, const BitMat& b) { return a * b; }

BitMat mat_inv(const BitMat& a) { return a.inverse(); }

BitMat transvection_matrix(const BitVec& a) {
  if (!a.even_weight()) {
    throw std::invalid_argument("one-sided class has no Dehn twist: " + a.to_string());
  }
  BitMat m = BitMat::identity(a.dim());
  // Row i = x_i + <x_i, a> a, and <x_i, a> is just bit i of a.
  for (int i = 1; i <= a.dim(); ++i) {
    if (a.get(i)) m.set_row(i, m.row(i) ^ a);
  }
  return m;
}

bool preserves_form(const BitMat& m) {
  for (int i = 1; i <= m.dim(); ++i) {
    for (int j = i; j <= m.dim(); ++j) {
      int expected = (i == j) ? 1 : 0;
      if ((std::popcount(m.raw_row(i) & m.raw_row(j)) & 1) != expected) return false;
    }
  }
  return true;
}

SignedPermMat::SignedPermMat(int dim) : dim_(dim) {
  check_dim(dim);
  perm_.resize(static_cast<size_t>(dim));
  signs_.assign(static_cast<size_t>(dim), 1);
  for (int i = 0; i < dim; ++i) perm_[static_cast<size_t>(i)] = i + 1;
}

SignedPermMat::SignedPermMat(std::vector<int> perm, std::vector<int> signs)
    : dim_(static_cast<int>(perm.size())), perm_(std::move(perm)), signs_(std::move(signs)) {
  check_dim(dim_);
  if (signs_.size() != perm_.size()) throw std::invalid_argument("perm/sign length mismatch");
  std::vector<bool> seen(static_cast<size_t>(dim_), false);
  for (int img : perm_) {
    if (img < 1 || img > dim_ || seen[static_cast<size_t>(img - 1)]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[static_cast<size_t>(img - 1)] = true;
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  }
}

SignedPermMat SignedPermMat::identity(int dim) { return SignedPermMat(dim); }

SignedPermMat SignedPermMat::operator*(const SignedPermMat& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("dimension mismatch in product");
  // (this * rhs)(x_i) = this(rhs(x_i)).
  std::vector<int> perm(static_cast<size_t>(dim_));
  std::vector<int> signs(static_cast<size_t>(dim_));
  for (int i = 1; i <= dim_; ++i) {
    int j = rhs.image_of(i);
    perm[static_cast<size_t>(i - 1)] = image_of(j);
    signs[static_cast<size_t>(i - 1)] = rhs.sign_of(i) * sign_of(j);
  }
  return SignedPermMat(std::move(perm), std::move(signs));
}

SignedPermMat SignedPermMat::inverse() const {
  std::vector<int> perm(static_cast<size_t>(dim_));
  std::vector<int> signs(static_cast<size_t>(dim_));
  for (int i = 1; i <= dim_; ++i) {
    int j = image_of(i);
    perm[static_cast<size_t>(j - 1)] = i;
    signs[static_cast<size_t>(j - 1)] = sign_of(i);
  }
  return SignedPermMat(std::move(perm), std::move(signs));
}

SignedPermMat SignedPermMat::pow(long long e) const {
  SignedPermMat base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  SignedPermMat acc = SignedPermMat::identity(dim_);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool SignedPermMat::is_identity() const { return *this == SignedPermMat::identity(dim_); }

BitMat SignedPermMat::mod2() const {
  BitMat m(dim_);
  for (int i = 1; i <= dim_; ++i) {
    BitVec v(dim_);
    v.set(image_of(i), true);
    m.set_row(i, v);
  }
  return m;
}

std::string SignedPermMat::to_string() const {
  std::ostringstream os;
  for (int i = 1; i <= dim_; ++i) {
    if (i > 1) os << " ";
    os << "x" << i << "->" << (sign_of(i) < 0 ? "-" : "") << "x" << image_of(i);
  }
  return os.str();
}

int int_det(const SignedPermMat& p) {
  std::vector<bool> seen(static_cast<size_t>(p.dim()), false);
  int sign = 1;
  for (int i = 1; i <= p.dim(); ++i) {
    if (seen[static_cast<size_t>(i - 1)]) continue;
    int len = 0;
    int j = i;
    while (!seen[static_cast<size_t>(j - 1)]) {
      seen[static_cast<size_t>(j - 1)] = true;
      j = p.image_of(j);
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  for (int i = 1; i <= p.dim(); ++i) sign *= p.sign_of(i);
  return sign;
}

int quotient_det(const SignedPermMat& p) {
  // P*w = sum_i sign(i) x_{perm(i)} with w = x_1+...+x_g; eigenvector forces
  // all signs equal.
  int lambda = p.sign_of(1);
  for (int i = 2; i <= p.dim(); ++i) {
    if (p.sign_of(i) != lambda) {
      throw std::domain_error("does not descend to H_1(N;R): w is not an eigenvector");
    }
  }
  return int_det(p) / lambda;
}

}  // namespace twistgen
