#include "aqftop/perm.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>

namespace aqftop {

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw ArgumentError("Perm: images do not form a bijection");
    }
    seen[v] = true;
  }
}

Perm Perm::one_line(std::initializer_list<unsigned> images) {
  return one_line(std::span<const unsigned>(images.begin(), images.size()));
}

Perm Perm::one_line(std::span<const unsigned> images) {
  std::vector<std::uint32_t> zero;
  zero.reserve(images.size());
  for (auto v : images) {
    if (v == 0) throw ArgumentError("Perm::one_line: images are 1-based");
    zero.push_back(v - 1);
  }
  return Perm(std::move(zero));
}

Perm Perm::identity(std::size_t n) {
  Perm p;
  p.images_.resize(n);
  std::iota(p.images_.begin(), p.images_.end(), 0u);
  return p;
}

Perm Perm::adjacent(std::size_t n, std::size_t i) {
  if (i + 1 >= n) throw ArgumentError("Perm::adjacent: position out of range");
  Perm p = identity(n);
  std::swap(p.images_[i], p.images_[i + 1]);
  return p;
}

std::vector<unsigned> Perm::one_line() const {
  std::vector<unsigned> out;
  out.reserve(images_.size());
  for (auto v : images_) out.push_back(v + 1);
  return out;
}

Perm Perm::inverse() const {
  Perm p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  }
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string Perm::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(images_[i] + 1);
  }
  return s + "]";
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) {
    throw ArgumentError("compose: degree mismatch " +
                        std::to_string(p.degree()) + " vs " +
                        std::to_string(q.degree()));
  }
  std::vector<std::uint32_t> out(p.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p(q(i));
  return Perm(std::move(out));
}

Perm order_reversal(std::size_t n) {
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint32_t>(n - 1 - i);
  }
  return Perm(std::move(out));
}

Perm block_sum(std::span<const Perm> parts) {
  std::vector<std::uint32_t> out;
  std::uint32_t offset = 0;
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < part.degree(); ++i) {
      out.push_back(offset + part(i));
    }
    offset += static_cast<std::uint32_t>(part.degree());
  }
  return Perm(std::move(out));
}

Perm block_permutation(const Perm& s, std::span<const std::size_t> lengths) {
  if (lengths.size() != s.degree()) {
    throw ArgumentError("block_permutation: " + std::to_string(lengths.size()) +
                        " block lengths for a permutation of degree " +
                        std::to_string(s.degree()));
  }
  std::vector<std::size_t> start(lengths.size() + 1, 0);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    start[i + 1] = start[i] + lengths[i];
  }
  std::vector<std::uint32_t> out;
  out.reserve(start.back());
  // output block j is input block s(j)
  for (std::size_t j = 0; j < s.degree(); ++j) {
    const std::size_t src = s(j);
    for (std::size_t k = 0; k < lengths[src]; ++k) {
      out.push_back(static_cast<std::uint32_t>(start[src] + k));
    }
  }
  return Perm(std::move(out));
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

constexpr std::size_t kMaxCachedDegree = 10;

std::vector<Perm> enumerate(std::size_t n) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<Perm> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace

const std::vector<Perm>& all_perms(std::size_t n) {
  if (n > kMaxCachedDegree) {
    throw ResourceLimit("all_perms: degree " + std::to_string(n) +
                        " exceeds cache limit");
  }
  static std::array<std::once_flag, kMaxCachedDegree + 1> flags;
  static std::array<std::vector<Perm>, kMaxCachedDegree + 1> cache;
  std::call_once(flags[n], [n] { cache[n] = enumerate(n); });
  return cache[n];
}

std::size_t perm_rank(const Perm& p) {
  // Lehmer code in the factorial number system.
  const std::size_t n = p.degree();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p(j) < p(i)) ++smaller;
    }
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

PermGroup::PermGroup(std::size_t n) : n_(n), elems_(all_perms(n)) {
  const std::size_t order = elems_.size();
  table_.resize(order * order);
  inverse_.resize(order);
  for (std::size_t p = 0; p < order; ++p) {
    inverse_[p] = static_cast<std::uint32_t>(perm_rank(elems_[p].inverse()));
    for (std::size_t q = 0; q < order; ++q) {
      table_[p * order + q] =
          static_cast<std::uint32_t>(perm_rank(aqftop::compose(elems_[p], elems_[q])));
    }
  }
}

const PermGroup& perm_group(std::size_t n) {
  constexpr std::size_t kMax = 7;
  if (n > kMax) {
    throw ResourceLimit("perm_group: degree " + std::to_string(n) +
                        " exceeds table limit");
  }
  static std::array<std::once_flag, kMax + 1> flags;
  static std::array<std::unique_ptr<PermGroup>, kMax + 1> cache;
  std::call_once(flags[n], [n] { cache[n] = std::make_unique<PermGroup>(n); });
  return *cache[n];
}

}  // namespace aqftop
