#include "heisec/words.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace heisec {

bool word_less(const Word& a, const Word& b) {
  if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
  return a.indices < b.indices;
}

std::string word_display(const Word& w) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < w.indices.size(); ++i) {
    if (i) os << ' ';
    os << w.indices[i];
  }
  os << ']';
  return os.str();
}

AmbientElement evaluate_word(const Alphabet& alphabet, const Word& w) {
  AmbientElement acc = ambient_identity(alphabet.descriptor);
  for (int idx : w.indices) {
    if (idx < 0 || idx >= static_cast<int>(alphabet.letters.size())) {
      throw UsageError("evaluate_word: letter index " + std::to_string(idx) +
                       " out of range for alphabet of size " +
                       std::to_string(alphabet.letters.size()));
    }
    acc = ambient_multiply(acc, alphabet.letters[idx]);
  }
  return acc;
}

namespace detail {

std::string ReachTable::key(const IntVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

namespace {
constexpr std::size_t kReachKeyCap = 4'000'000;
}

void ReachTable::build(const std::vector<IntVec>& letter_images, int max_len) {
  std::vector<IntVec> distinct;
  for (const auto& v : letter_images) {
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
  }
  std::vector<IntVec> frontier;
  frontier.push_back(IntVec(letter_images.empty() ? 0 : letter_images[0].size(), Int(0)));
  min_len.emplace(key(frontier[0]), 0);
  for (int m = 1; m <= max_len && !frontier.empty(); ++m) {
    std::vector<IntVec> next;
    for (const auto& s : frontier) {
      for (const auto& l : distinct) {
        IntVec t = vec_add(s, l);
        auto [it, inserted] = min_len.emplace(key(t), m);
        if (inserted) next.push_back(std::move(t));
        if (min_len.size() > kReachKeyCap) return;  // leaves usable == false
      }
    }
    frontier = std::move(next);
  }
  usable = true;
}

bool ReachTable::reachable(const IntVec& diff, int remaining) const {
  auto it = min_len.find(key(diff));
  return it != min_len.end() && it->second <= remaining;
}

}  // namespace detail

namespace {

struct Enumerator {
  const Alphabet& alphabet;
  const AmbientElement& target;
  const EnumerationBudget& budget;

  IntVec target_ab;
  std::vector<IntVec> letter_ab;
  detail::ReachTable reach;
  bool pruning = false;

  WordSearchResult result;
  std::vector<int> prefix;

  Enumerator(const Alphabet& a, const AmbientElement& t, const EnumerationBudget& b)
      : alphabet(a), target(t), budget(b) {
    if (!conforms(alphabet.descriptor, target)) {
      throw UsageError("find_words_with_value: target does not conform to the alphabet's group");
    }
    for (const auto& l : alphabet.letters) {
      if (!conforms(alphabet.descriptor, l)) {
        throw UsageError("find_words_with_value: letter does not conform to the alphabet's group");
      }
    }
    if (budget.projection_pruning) {
      target_ab = abelianization(target);
      letter_ab.reserve(alphabet.letters.size());
      for (const auto& l : alphabet.letters) letter_ab.push_back(abelianization(l));
      reach.build(letter_ab, budget.max_len);
      pruning = reach.usable;
    }
  }

  // Returns false once the candidate cap is hit.
  bool walk(const AmbientElement& value, const IntVec& ab, int depth) {
    if (result.examined >= budget.max_candidates) {
      result.truncated = true;
      return false;
    }
    ++result.examined;
    if (value == target) result.words.push_back(Word{prefix});
    if (depth == budget.max_len) return true;
    for (int i = 0; i < static_cast<int>(alphabet.letters.size()); ++i) {
      IntVec child_ab;
      if (pruning) {
        child_ab = vec_add(ab, letter_ab[i]);
        IntVec diff(child_ab.size());
        for (std::size_t k = 0; k < child_ab.size(); ++k) diff[k] = target_ab[k] - child_ab[k];
        if (!reach.reachable(diff, budget.max_len - depth - 1)) continue;
      }
      prefix.push_back(i);
      bool keep = walk(ambient_multiply(value, alphabet.letters[i]), child_ab, depth + 1);
      prefix.pop_back();
      if (!keep) return false;
    }
    return true;
  }

  WordSearchResult run() {
    if (budget.max_len < 0) throw UsageError("find_words_with_value: negative max_len");
    IntVec root_ab;
    if (pruning) {
      root_ab.assign(target_ab.size(), Int(0));
      IntVec diff = target_ab;
      if (!reach.reachable(diff, budget.max_len)) return std::move(result);
    }
    walk(ambient_identity(alphabet.descriptor), root_ab, 0);
    std::sort(result.words.begin(), result.words.end(), word_less);
    return std::move(result);
  }
};

}  // namespace

WordSearchResult find_words_with_value(const Alphabet& alphabet, const AmbientElement& target,
                                       const EnumerationBudget& budget) {
  Enumerator e(alphabet, target, budget);
  return e.run();
}

Alphabet tyx_alphabet() {
  Alphabet a;
  a.descriptor = GroupDescriptor::heisenberg(1);
  HeisenbergElement t = h_multiply(h_inverse(h_from_x({Int(1)})), h_from_z(1, 1));  // x^-1 z
  a.letters = {AmbientElement(t), AmbientElement(h_from_y({Int(1)})),
               AmbientElement(h_from_x({Int(1)}))};
  return a;
}

GadgetCertificate check_prop21(int max_n, int max_len) {
  if (max_n < 0) throw UsageError("check_prop21: max_n must be >= 0");
  if (max_len < 2 * max_n + 1) {
    throw UsageError("check_prop21: need max_len >= 2*max_n + 1");
  }
  Alphabet alphabet = tyx_alphabet();
  AmbientElement y(h_from_y({Int(1)}));

  // Unpruned on purpose: the certificate reports the full word count.
  EnumerationBudget budget;
  budget.max_len = max_len;
  budget.max_candidates = UINT64_MAX;
  budget.projection_pruning = false;
  WordSearchResult found = find_words_with_value(alphabet, y, budget);

  GadgetCertificate cert;
  cert.gadget = "prop21 alphabet {t,y,x}, t = x^-1 z";
  cert.mode = "prop21";
  cert.bounds["max-len"] = std::to_string(max_len);
  cert.bounds["max-n"] = std::to_string(max_n);
  cert.candidates_examined = found.examined;

  // Forward direction: every t^n y x^n in range evaluates to y.
  int family_max_n = (max_len - 1) / 2;
  std::vector<Word> expected;
  for (int n = 0; n <= family_max_n; ++n) {
    Word w;
    w.indices.assign(n, 0);
    w.indices.push_back(1);
    w.indices.insert(w.indices.end(), n, 2);
    if (!(evaluate_word(alphabet, w) == y)) {
      cert.verdict = Verdict::Counterexample;
      cert.counterexample = "t^" + std::to_string(n) + " y x^" + std::to_string(n) +
                            " does not evaluate to y";
      return cert;
    }
    expected.push_back(std::move(w));
  }
  std::sort(expected.begin(), expected.end(), word_less);

  // Reverse direction: nothing else evaluates to y.
  if (found.words != expected) {
    cert.verdict = Verdict::Counterexample;
    for (const auto& w : found.words) {
      if (std::find(expected.begin(), expected.end(), w) == expected.end()) {
        cert.counterexample = "unexpected word with value y: " + word_display(w);
        break;
      }
    }
    if (cert.counterexample.empty()) cert.counterexample = "family word missing from enumeration";
    return cert;
  }

  cert.verdict = Verdict::Verified;
  cert.facts["family-size"] = std::to_string(expected.size());
  cert.facts["family-max-n"] = std::to_string(family_max_n);
  cert.facts["words-with-value-y"] = std::to_string(found.words.size());
  return cert;
}

}  // namespace heisec
