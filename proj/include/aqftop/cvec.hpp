#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aqftop/error.hpp"

namespace aqftop {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number a + b i with rational parts. cpp_rational keeps
/// both parts in lowest terms, so equality is structural.
class GaussC {
 public:
  GaussC() = default;
  GaussC(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  GaussC(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussC i() { return GaussC(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  GaussC conj() const { return GaussC(re_, -im_); }
  /// Throws ArgumentError on zero.
  GaussC inv() const;

  GaussC operator-() const { return GaussC(-re_, -im_); }
  GaussC& operator+=(const GaussC& o);
  GaussC& operator-=(const GaussC& o);
  GaussC& operator*=(const GaussC& o);

  friend GaussC operator+(GaussC a, const GaussC& b) { return a += b; }
  friend GaussC operator-(GaussC a, const GaussC& b) { return a -= b; }
  friend GaussC operator*(GaussC a, const GaussC& b) { return a *= b; }
  friend GaussC operator/(const GaussC& a, const GaussC& b) { return a * b.inv(); }
  friend bool operator==(const GaussC&, const GaussC&) = default;

  /// "0", "3/2", "-i", "1/2+3 i".
  std::string str() const;

 private:
  Rational re_;
  Rational im_;
};

inline GaussC conj(const GaussC& z) { return z.conj(); }

/**
 * Parses "a/b", "a/b+c/d i", "i", "-2i" and similar. Whitespace is ignored.
 * Throws ArgumentError with the offending text.
 */
GaussC parse_scalar(std::string_view text);

using Vec = std::vector<GaussC>;

Vec basis_vector(std::size_t dim, std::size_t k);
Vec conj(const Vec& v);
bool is_zero(const Vec& v);
Vec& axpy(Vec& y, const GaussC& a, const Vec& x);  // y += a x
std::string vec_str(const Vec& v);

/**
 * A matrix together with a linearity flag. A linear map acts as x -> M x,
 * an antilinear one as x -> M conj(x).
 */
class LinMap {
 public:
  LinMap() = default;
  LinMap(std::size_t rows, std::size_t cols, bool antilinear = false);
  LinMap(std::size_t rows, std::size_t cols, std::vector<GaussC> entries,
         bool antilinear = false);

  static LinMap identity(std::size_t n, bool antilinear = false);
  /// Coordinate conjugation x -> conj(x).
  static LinMap conjugation(std::size_t n) { return identity(n, true); }
  /// The swap V (x) W -> W (x) V on the product basis e_i (x) f_j.
  static LinMap braiding(std::size_t dim_v, std::size_t dim_w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool antilinear() const { return antilinear_; }
  const std::vector<GaussC>& entries() const { return entries_; }

  const GaussC& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  GaussC& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  Vec apply(const Vec& x) const;
  Vec column(std::size_t c) const;

  LinMap conj_entries() const;
  LinMap conj_transpose() const;

  std::string str() const;

  friend bool operator==(const LinMap&, const LinMap&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussC> entries_;
  bool antilinear_ = false;
};

/**
 * The map f after g. When f is antilinear it conjugates whatever g produces,
 * so the matrix is F conj(G); otherwise it is F G. Flags combine by xor.
 * Throws ArgumentError on a dimension mismatch.
 */
LinMap compose_maps(const LinMap& f, const LinMap& g);

/// Kronecker product; both flags must agree.
LinMap tensor(const LinMap& f, const LinMap& g);

/// Ordinary matrix product, ignoring flags.
LinMap matmul(const LinMap& a, const LinMap& b);

}  // namespace aqftop
