// Positive (inverse-free) words over a finite alphabet of group elements:
// evaluation and pruned exhaustive enumeration.

#ifndef HEISEC_WORDS_HPP
#define HEISEC_WORDS_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "heisec/certify.hpp"
#include "heisec/group.hpp"

namespace heisec {

/// Ordered letter set; the order defines word indices and lexicographic order.
struct Alphabet {
  GroupDescriptor descriptor;
  std::vector<AmbientElement> letters;
};

/// Sequence of 0-based letter indices. Inverse letters do not exist.
struct Word {
  std::vector<int> indices;

  int length() const { return static_cast<int>(indices.size()); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// (length, lex) order used everywhere results are reported.
bool word_less(const Word& a, const Word& b);
std::string word_display(const Word& w);

struct EnumerationBudget {
  int max_len = 9;
  std::uint64_t max_candidates = 10'000'000;
  // Abelianization pruning: a prefix is cut when no completion within the
  // remaining length can match the target's exponent-sum vector. Sound since
  // abelianization is a homomorphism; complete since only provably
  // mismatching subtrees are discarded.
  bool projection_pruning = true;
  // Block-power bound for the repeated-block identity checks.
  int max_l = 5;
};

AmbientElement evaluate_word(const Alphabet& alphabet, const Word& w);

struct WordSearchResult {
  std::vector<Word> words;  // in (length, lex) order
  bool truncated = false;   // candidate cap hit; `words` is a partial list
  std::uint64_t examined = 0;
};

/// All words w with length <= budget.max_len and evaluate_word(w) == target.
WordSearchResult find_words_with_value(const Alphabet& alphabet, const AmbientElement& target,
                                       const EnumerationBudget& budget);

namespace detail {

/// Minimal number of letters whose abelianization images sum to a given
/// vector, for every sum reachable within max_len letters. Backs the
/// projection pruning of the enumerators; build() caps the table size and
/// leaves the table unusable (pruning off) when the space is too large.
struct ReachTable {
  std::unordered_map<std::string, int> min_len;
  bool usable = false;

  static std::string key(const IntVec& v);
  void build(const std::vector<IntVec>& letter_images, int max_len);
  /// Can some word of length <= remaining have image `diff`?
  bool reachable(const IntVec& diff, int remaining) const;
};

}  // namespace detail

/// The {t, y, x} alphabet in H3 with t = x^-1 z.
Alphabet tyx_alphabet();

/// Exhaustively confirms over all words of length <= max_len that value y is
/// attained exactly by the words t^n y x^n. Requires max_len >= 2*max_n + 1.
GadgetCertificate check_prop21(int max_n, int max_len);

}  // namespace heisec

#endif
