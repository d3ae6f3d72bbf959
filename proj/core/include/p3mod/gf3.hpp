#pragma once

// Exact dense linear algebra over GF(3).
//
// Convention used throughout the project: modules are *right* modules,
// vectors are rows and act as v -> v*M. Consequently every fixed space /
// centralizer computation is a left null space {v : v*M = 0}, and
// group representations satisfy mat(g*h) = mat(g)*mat(h) under ordinary
// matrix multiplication.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace p3mod {

inline constexpr unsigned kP = 3;

/// Reduce any integer to its residue in {0,1,2}.
constexpr uint8_t f3(long long x) noexcept {
  long long r = x % 3;
  return static_cast<uint8_t>(r < 0 ? r + 3 : r);
}

constexpr uint8_t f3_add(uint8_t a, uint8_t b) noexcept { return static_cast<uint8_t>((a + b) % 3); }
constexpr uint8_t f3_sub(uint8_t a, uint8_t b) noexcept { return static_cast<uint8_t>((a + 3 - b) % 3); }
constexpr uint8_t f3_mul(uint8_t a, uint8_t b) noexcept { return static_cast<uint8_t>((a * b) % 3); }
constexpr uint8_t f3_neg(uint8_t a) noexcept { return static_cast<uint8_t>((3 - a) % 3); }
/// Multiplicative inverse; a must be 1 or 2.
constexpr uint8_t f3_inv(uint8_t a) noexcept { return a; /* 1*1=1, 2*2=4=1 */ }

using Vec = std::vector<uint8_t>;  // entries in {0,1,2}

/// Dense rows x cols matrix over GF(3), row-major.
class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Mat identity(size_t n);
  static Mat zero(size_t rows, size_t cols) { return Mat(rows, cols); }

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }

  uint8_t operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  uint8_t& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }

  std::span<const uint8_t> row(size_t r) const { return {a_.data() + r * cols_, cols_}; }

  bool operator==(const Mat& o) const = default;
  bool is_identity() const;
  bool is_zero() const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  const std::vector<uint8_t>& data() const noexcept { return a_; }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<uint8_t> a_;
};

/// Exact product; throws std::invalid_argument on dimension mismatch.
Mat mat_mul(const Mat& a, const Mat& b);

/// v*M for a row vector v of length m.rows().
Vec vec_mat(std::span<const uint8_t> v, const Mat& m);

Vec vec_add(std::span<const uint8_t> a, std::span<const uint8_t> b);
Vec vec_scale(std::span<const uint8_t> a, uint8_t s);
bool vec_is_zero(std::span<const uint8_t> v);

/// Kronecker product with basis e_i (x) e_j ordered lexicographically in
/// (i, j); this ordering is fixed project-wide since witness coordinates
/// depend on it. (u (x) v)(A (x) B) = (uA) (x) (vB).
Mat kronecker(const Mat& a, const Mat& b);

/// Matrices side by side: [a | b]; row counts must agree.
Mat hstack(const Mat& a, const Mat& b);
Mat hstack(std::span<const Mat> ms);

/// Row rank over GF(3).
size_t rank(const Mat& m);

/// Basis of the left null space {v : v*m = 0}, v of length m.rows().
/// Deterministic: computed from the reduced row echelon form with
/// leftmost pivots, so bases are byte-for-byte reproducible.
std::vector<Vec> kernel_basis(const Mat& m);

/// Reduced row echelon form of a list of row vectors (rows may be empty).
/// Returns the nonzero echelon rows; deterministic leftmost-pivot order.
std::vector<Vec> rref(std::vector<Vec> rows);

/// True if v lies in the span of echelon rows produced by rref().
bool in_span(const std::vector<Vec>& echelon, std::span<const uint8_t> v);

/// Inverse of a square invertible matrix; throws if singular.
Mat mat_inv(const Mat& m);

Mat transpose(const Mat& m);

/// M^k for k >= 0.
Mat mat_pow(const Mat& m, unsigned k);

// Text fixture format: first line "rows cols", then rows of space-separated
// digits in {0,1,2}. Round-trips bit-exactly.
std::string to_text(const Mat& m);
Mat mat_from_text(std::istream& in);
Mat mat_from_text(const std::string& s);

std::string to_text(std::span<const uint8_t> v);  // one-row matrix form

}  // namespace p3mod
