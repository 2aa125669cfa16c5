#include "rxsynth/language.hpp"

#include "rxsynth/error.hpp"
#include "rxsynth/matcher.hpp"

namespace rxsynth {

Language enumerate_language(const Regex& r, const Alphabet& alphabet, int max_len) {
  if (max_len < 0 || max_len > kMaxEnumerationLength) {
    throw BoundExceededError("enumeration length " + std::to_string(max_len) + " outside 0.." +
                             std::to_string(kMaxEnumerationLength));
  }
  PositionAutomaton automaton(r);
  Language out;
  out.max_len = max_len;

  // odometer over alphabet indices, one length at a time
  std::string s;
  std::vector<std::size_t> digits;
  for (int len = 0; len <= max_len; ++len) {
    digits.assign(static_cast<std::size_t>(len), 0);
    s.assign(static_cast<std::size_t>(len), alphabet.at(0));
    for (;;) {
      if (automaton.matches(s)) out.strings.insert(s);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == alphabet.size()) {
        digits[i] = 0;
        s[i] = alphabet.at(0);
        ++i;
      }
      if (i == digits.size()) break;
      s[i] = alphabet.at(digits[i]);
    }
  }
  return out;
}

}  // namespace rxsynth
