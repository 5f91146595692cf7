#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbatlas {

/// Root-lattice coordinates and action-matrix entries. All arithmetic on
/// these goes through the checked helpers below, so overflow raises instead
/// of wrapping.
using Int = std::int64_t;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad Cartan matrix, unknown node, bad word, bad config.
class InputError : public Error {
public:
  using Error::Error;
};

/// An enumeration or search hit its configured cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// A parabolic subgroup required to be finite is not.
class NotFiniteError : public Error {
public:
  using Error::Error;
};

class OverflowError : public Error {
public:
  using Error::Error;
};

/// An internal consistency check failed (corrupted element, broken invariant).
class InvariantError : public Error {
public:
  using Error::Error;
};

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in root-lattice arithmetic");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in root-lattice arithmetic");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in root-lattice arithmetic");
  return r;
}

inline constexpr std::size_t kDefaultBallCap = 1'000'000;
inline constexpr std::size_t kDefaultChainCap = 100'000;
inline constexpr int kMaxRank = 64;

/// A subset of the node indices of a Cartan matrix (rank <= 64).
class NodeSet {
public:
  constexpr NodeSet() = default;
  NodeSet(std::initializer_list<int> nodes) {
    for (int i : nodes) insert(i);
  }
  static NodeSet from_indices(const std::vector<int>& nodes) {
    NodeSet s;
    for (int i : nodes) s.insert(i);
    return s;
  }
  static NodeSet all(int rank) {
    NodeSet s;
    s.bits_ = rank >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rank) - 1);
    return s;
  }

  void insert(int i) {
    if (i < 0 || i >= kMaxRank) throw InputError("node index out of range: " + std::to_string(i));
    bits_ |= std::uint64_t{1} << i;
  }
  [[nodiscard]] bool contains(int i) const { return i >= 0 && i < kMaxRank && ((bits_ >> i) & 1U); }
  [[nodiscard]] bool empty() const { return bits_ == 0; }
  [[nodiscard]] int size() const { return std::popcount(bits_); }
  [[nodiscard]] std::uint64_t bits() const { return bits_; }
  [[nodiscard]] bool subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }
  [[nodiscard]] NodeSet operator&(NodeSet o) const { return from_bits(bits_ & o.bits_); }
  [[nodiscard]] NodeSet operator|(NodeSet o) const { return from_bits(bits_ | o.bits_); }

  [[nodiscard]] std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 0; i < kMaxRank; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  friend bool operator==(NodeSet, NodeSet) = default;

private:
  static NodeSet from_bits(std::uint64_t b) {
    NodeSet s;
    s.bits_ = b;
    return s;
  }
  std::uint64_t bits_ = 0;
};

}  // namespace bbatlas
