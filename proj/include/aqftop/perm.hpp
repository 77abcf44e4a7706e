#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "aqftop/error.hpp"

namespace aqftop {

/**
 * A permutation of {1..n} in one-line notation.
 *
 * Internally images are stored zero-based: `p(i)` for i in [0, n) returns a
 * value in [0, n). Construction from and printing to the usual one-based
 * notation goes through `one_line`. Degree 0 is allowed and represents the
 * unique element of the trivial group.
 *
 * Composition follows (p o q)(i) = p(q(i)); the right action on sequences is
 * (c . s)_i = c_{s(i)}, so that (c . p) . q = c . (p o q).
 */
class Perm {
 public:
  Perm() = default;

  /// From zero-based images; throws ArgumentError unless a bijection.
  explicit Perm(std::vector<std::uint32_t> images);

  /// From one-based images, e.g. one_line({2, 3, 1}).
  static Perm one_line(std::initializer_list<unsigned> images);
  static Perm one_line(std::span<const unsigned> images);

  static Perm identity(std::size_t n);

  /// The adjacent transposition exchanging positions i and i+1 (zero-based).
  static Perm adjacent(std::size_t n, std::size_t i);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  /// One-based images.
  std::vector<unsigned> one_line() const;

  Perm inverse() const;
  bool is_identity() const;

  /// "[2,3,1]"
  std::string str() const;

  friend auto operator<=>(const Perm&, const Perm&) = default;
  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

/// (p o q)(i) = p(q(i)). Throws ArgumentError on degree mismatch.
Perm compose(const Perm& p, const Perm& q);

/// rho_n(i) = n + 1 - i.
Perm order_reversal(std::size_t n);

/// sigma_1 (+) ... (+) sigma_m, each part acting inside its consecutive block.
Perm block_sum(std::span<const Perm> parts);

/**
 * The block permutation s<k_1, ..., k_m>.
 *
 * For a sequence written as blocks Y_1 ... Y_m with |Y_i| = lengths[i], the
 * right action of the result produces Y_{s(1)} Y_{s(2)} ... Y_{s(m)}.
 */
Perm block_permutation(const Perm& s, std::span<const std::size_t> lengths);

/// (seq_{s(1)}, ..., seq_{s(n)}).
template <class T>
std::vector<T> act_right(std::span<const T> seq, const Perm& s) {
  if (seq.size() != s.degree()) {
    throw ArgumentError("act_right: sequence length " +
                        std::to_string(seq.size()) + " != degree " +
                        std::to_string(s.degree()));
  }
  std::vector<T> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out.push_back(seq[s(i)]);
  return out;
}

template <class T>
std::vector<T> act_right(const std::vector<T>& seq, const Perm& s) {
  return act_right(std::span<const T>(seq), s);
}

std::uint64_t factorial(std::size_t n);

/// All permutations of degree n in lexicographic order of their images.
/// Cached; n is limited to 10.
const std::vector<Perm>& all_perms(std::size_t n);

/// Position of p in all_perms(p.degree()).
std::size_t perm_rank(const Perm& p);

/**
 * Dense multiplication table of the symmetric group of a fixed degree,
 * addressed by perm_rank. Used on the hot paths of the checkers.
 */
class PermGroup {
 public:
  explicit PermGroup(std::size_t n);

  std::size_t degree() const { return n_; }
  std::size_t order() const { return elems_.size(); }
  const Perm& elem(std::size_t r) const { return elems_[r]; }
  std::size_t compose(std::size_t p, std::size_t q) const {
    return table_[p * elems_.size() + q];
  }
  std::size_t inverse(std::size_t r) const { return inverse_[r]; }
  std::size_t identity() const { return 0; }

 private:
  std::size_t n_;
  std::vector<Perm> elems_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

/// Cached group for degree n <= 7.
const PermGroup& perm_group(std::size_t n);

}  // namespace aqftop
