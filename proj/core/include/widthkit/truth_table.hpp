#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace widthkit {

/// Default arity cap for exhaustive truth tables.
inline constexpr unsigned kDefaultArityLimit = 24;

/// Bit vector of length 2^n. Entry v is the function value at the valuation
/// where variable i (0-based) takes bit i of v.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(unsigned n, bool fill = false);

  unsigned arity() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }

  bool get(std::uint64_t v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void set(std::uint64_t v, bool b) noexcept {
    const std::uint64_t m = std::uint64_t{1} << (v & 63);
    if (b)
      words_[v >> 6] |= m;
    else
      words_[v >> 6] &= ~m;
  }

  std::uint64_t count_ones() const noexcept;
  bool is_constant(bool b) const noexcept;

  /// Raw 64-valuation blocks; bits past size() are always zero.
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }
  void clear_padding() noexcept;

  /// "0110" style, entry 0 first.
  std::string to_string() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  unsigned n_ = 0;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

/// Mask of the valid bits in the last word for arity n.
std::uint64_t valid_mask(unsigned n) noexcept;

/// 64-bit pattern of variable i over the valuations of block `word`.
std::uint64_t variable_word(unsigned var, std::uint64_t word) noexcept;

}  // namespace widthkit
