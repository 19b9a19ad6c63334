// bitconfig.hpp
// Packed bit strings of fixed length N: the computational basis labels of
// the classical reduction. Site i lives in word i/64, bit i%64; padding
// bits above N are kept zero at all times.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wblsense/rng.hpp"

namespace wblsense {

class BitConfiguration {
 public:
  explicit BitConfiguration(int length)
      : length_(length), words_((check_length(length) + 63) / 64, 0) {}

  static BitConfiguration zeros(int length) { return BitConfiguration(length); }

  static BitConfiguration from_string(const std::string& bits) {
    BitConfiguration c(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1')
        c.set_bit(static_cast<int>(i), true);
      else if (bits[i] != '0')
        throw std::invalid_argument("BitConfiguration::from_string: expected only '0'/'1'");
    }
    return c;
  }

  int length() const { return length_; }

  bool bit(int site) const {
    check_site(site);
    return (words_[static_cast<std::size_t>(site) / 64] >> (site % 64)) & 1u;
  }

  void set_bit(int site, bool value) {
    check_site(site);
    const std::uint64_t mask = std::uint64_t{1} << (site % 64);
    if (value)
      words_[static_cast<std::size_t>(site) / 64] |= mask;
    else
      words_[static_cast<std::size_t>(site) / 64] &= ~mask;
  }

  void flip(int site) {
    check_site(site);
    words_[static_cast<std::size_t>(site) / 64] ^= std::uint64_t{1} << (site % 64);
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  // True iff all bits above length() are zero.
  bool padding_clear() const {
    const int rem = length_ % 64;
    if (rem == 0 || words_.empty()) return true;
    return (words_.back() >> rem) == 0;
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i)
      if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  friend bool operator==(const BitConfiguration&, const BitConfiguration&) = default;

 private:
  static int check_length(int length) {
    if (length < 1) throw std::invalid_argument("BitConfiguration: length must be >= 1");
    return length;
  }
  void check_site(int site) const {
    if (site < 0 || site >= length_)
      throw std::invalid_argument("BitConfiguration: site " + std::to_string(site) +
                                  " out of range [0, " + std::to_string(length_) + ")");
  }

  int length_;
  std::vector<std::uint64_t> words_;
};

inline BitConfiguration flip_bit(const BitConfiguration& c, int site) {
  BitConfiguration out = c;
  out.flip(site);
  return out;
}

// Hamming distance via per-word XOR + popcount.
inline int hamming(const BitConfiguration& a, const BitConfiguration& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("hamming: length mismatch (" + std::to_string(a.length()) +
                                " vs " + std::to_string(b.length()) + ")");
  int d = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w)
    d += std::popcount(a.words()[w] ^ b.words()[w]);
  return d;
}

// i.i.d. fair bits, deterministic per seed.
inline BitConfiguration random_configuration(int length, std::uint64_t seed) {
  BitConfiguration c(length);
  Xoshiro256StarStar rng(seed);
  for (auto& w : c.words()) w = rng.next();
  const int rem = length % 64;
  if (rem != 0) c.words().back() &= (std::uint64_t{1} << rem) - 1;
  return c;
}

// Basis index under the big-endian convention: site 0 is the most
// significant bit of the index.
inline std::uint64_t to_basis_index(const BitConfiguration& c) {
  if (c.length() > 63)
    throw std::invalid_argument("to_basis_index: length must be <= 63");
  std::uint64_t idx = 0;
  for (int i = 0; i < c.length(); ++i)
    if (c.bit(i)) idx |= std::uint64_t{1} << (c.length() - 1 - i);
  return idx;
}

inline BitConfiguration config_from_basis_index(int length, std::uint64_t index) {
  if (length < 1 || length > 63)
    throw std::invalid_argument("config_from_basis_index: need 1 <= length <= 63");
  if (length < 63 && (index >> length) != 0)
    throw std::invalid_argument("config_from_basis_index: index out of range");
  BitConfiguration c(length);
  for (int i = 0; i < length; ++i)
    if ((index >> (length - 1 - i)) & 1u) c.set_bit(i, true);
  return c;
}

}  // namespace wblsense
