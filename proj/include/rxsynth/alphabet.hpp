#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rxsynth {

/// Finite ordered set of single-byte symbols.
///
/// The wildcard `.` is never a member; it denotes "any symbol of the
/// alphabet". Characters that carry meaning in the regex syntax
/// (`.()*?+|@#`) and whitespace cannot be symbols.
class Alphabet {
 public:
  Alphabet() = default;

  /// Builds an alphabet from the distinct characters of `symbols`, sorted.
  /// Throws AlphabetError if empty or if a reserved character is present.
  explicit Alphabet(std::string_view symbols);

  /// Alphabet of the first `n` digits, `0`..`n-1` (n <= 10).
  static Alphabet digits(std::size_t n);

  static bool is_valid_symbol(char c);

  bool contains(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }

  /// Position of `c` in symbol order, or -1.
  int index_of(char c) const { return index_[static_cast<unsigned char>(c)]; }

  char at(std::size_t i) const { return symbols_[i]; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }

  const std::string& symbols() const { return symbols_; }

  /// True iff every character of `s` is a member.
  bool covers(std::string_view s) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::string symbols_;
  std::array<int, 256> index_ = make_empty_index();

  static std::array<int, 256> make_empty_index() {
    std::array<int, 256> idx{};
    idx.fill(-1);
    return idx;
  }
};

}  // namespace rxsynth
