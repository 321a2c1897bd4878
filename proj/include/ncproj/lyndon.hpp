#pragma once

#include <vector>

#include "ncproj/util.hpp"

namespace ncproj {

using Word = std::vector<int>;

inline bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  if (w.size() == 1) return true;
  // w must be strictly smaller than every proper suffix.
  for (size_t i = 1; i < w.size(); ++i)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end()))
      return false;
  return true;
}

// All Lyndon words over {0..alphabet-1} of length in [1, maxlen], in lex order.
inline std::vector<Word> lyndon_words(int alphabet, int maxlen) {
  std::vector<Word> out;
  Word w{0};
  while (!w.empty()) {
    if ((int)w.size() <= maxlen) out.push_back(w);
    // Duval/FKM successor.
    Word t = w;
    while ((int)t.size() < maxlen) t.push_back(t[t.size() % w.size()]);
    // Truncate to maxlen happened above; now increment.
    while (!t.empty() && t.back() == alphabet - 1) t.pop_back();
    if (t.empty()) break;
    t.back() += 1;
    w = std::move(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Standard factorization w = uv with v the longest proper Lyndon suffix.
inline std::pair<Word, Word> std_factor(const Word& w) {
  require_internal(w.size() >= 2 && is_lyndon(w), "std_factor wants a Lyndon word of length >= 2");
  for (size_t i = 1; i < w.size(); ++i) {
    Word v(w.begin() + i, w.end());
    if (is_lyndon(v)) return {Word(w.begin(), w.begin() + i), v};
  }
  throw InternalError("no standard factorization found");
}

}  // namespace ncproj
