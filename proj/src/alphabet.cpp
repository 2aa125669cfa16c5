#include "rxsynth/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "rxsynth/error.hpp"

namespace rxsynth {

bool Alphabet::is_valid_symbol(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u < 0x21 || u > 0x7e) return false;
  static constexpr std::string_view kReserved = ".()*?+|@#";
  return kReserved.find(c) == std::string_view::npos;
}

Alphabet::Alphabet(std::string_view symbols) {
  std::string sorted(symbols);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) throw AlphabetError("alphabet must not be empty");
  for (char c : sorted) {
    if (!is_valid_symbol(c)) {
      throw AlphabetError(std::string("character '") + c + "' cannot be an alphabet symbol");
    }
  }
  symbols_ = std::move(sorted);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    index_[static_cast<unsigned char>(symbols_[i])] = static_cast<int>(i);
  }
}

Alphabet Alphabet::digits(std::size_t n) {
  if (n == 0 || n > 10) throw AlphabetError("digit alphabet size must be in 1..10");
  return Alphabet(std::string_view("0123456789").substr(0, n));
}

bool Alphabet::covers(std::string_view s) const {
  return std::all_of(s.begin(), s.end(), [this](char c) { return contains(c); });
}

}  // namespace rxsynth
