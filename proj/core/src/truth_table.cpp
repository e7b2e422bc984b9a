#include "widthkit/truth_table.hpp"

#include <bit>

namespace widthkit {

namespace {
constexpr std::uint64_t kVarPatterns[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};
}  // namespace

std::uint64_t valid_mask(unsigned n) noexcept {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

std::uint64_t variable_word(unsigned var, std::uint64_t word) noexcept {
  if (var < 6) return kVarPatterns[var];
  return ((word >> (var - 6)) & 1u) ? ~std::uint64_t{0} : 0;
}

TruthTable::TruthTable(unsigned n, bool fill)
    : n_(n), words_(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, fill ? ~std::uint64_t{0} : 0) {
  clear_padding();
}

void TruthTable::clear_padding() noexcept { words_.back() &= valid_mask(n_); }

std::uint64_t TruthTable::count_ones() const noexcept {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool TruthTable::is_constant(bool b) const noexcept { return count_ones() == (b ? size() : 0); }

std::string TruthTable::to_string() const {
  std::string s;
  s.reserve(size());
  for (std::uint64_t v = 0; v < size(); ++v) s.push_back(get(v) ? '1' : '0');
  return s;
}

}  // namespace widthkit
