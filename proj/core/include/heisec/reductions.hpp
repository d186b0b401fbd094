// Section reductions: encode products of finitely generated submonoids of G
// as sections of a single finitely generated submonoid of G x H, decide
// bounded membership by deduplicated breadth-first search, and verify the
// encodings against independent brute-force oracles.

#ifndef HEISEC_REDUCTIONS_HPP
#define HEISEC_REDUCTIONS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisec/gadgets.hpp"
#include "heisec/group.hpp"
#include "heisec/words.hpp"

namespace heisec {

/// A finite generating set S; the object of interest is the monoid <S>.
struct SubmonoidPresentation {
  GroupDescriptor descriptor;
  std::vector<AmbientElement> generators;
};

/// An ordered product M_1 ... M_n of submonoids of one group, optionally with
/// interleaved constants for conjugate-product instances.
struct ProductInstance {
  GroupDescriptor descriptor;
  std::vector<SubmonoidPresentation> factors;
  std::vector<AmbientElement> conjugators;  // empty unless a conjugate instance

  int n() const { return static_cast<int>(factors.size()); }
};

enum class ReductionKind { Pair, Conjugate, ProductH5, ConjugateH5 };

const char* reduction_kind_name(ReductionKind k);
std::optional<ReductionKind> reduction_kind_from_name(const std::string& name);

/// Gadget data carried alongside a reduction; regenerates T deterministically.
struct ReductionMeta {
  std::optional<UniqueProductGadget> unique_product;
  std::optional<H5VectorGadget> h5;
  std::optional<PolygonGadget> polygon;
};

/// A generating set T in G x H and a target h in H such that the h-section
/// {g : (g,h) in <T>} is the encoded product.
struct SectionReduction {
  ReductionKind kind = ReductionKind::Pair;
  GroupDescriptor ambient;  // always a two-factor product [G, H]
  std::vector<std::array<AmbientElement, 2>> generators;  // T, construction order
  AmbientElement target;    // element of H
  int factor_count = 0;     // encoded blocks (pair: 2, conjugate: #interleaves)
  std::vector<int> factor_sizes;  // per-block letter counts, in T order
  ReductionMeta meta;

  const GroupDescriptor& base_group() const;     // G
  const GroupDescriptor& section_group() const;  // H
  /// The pair (g, h) as an element of the ambient product.
  AmbientElement make_pair(const AmbientElement& g, const AmbientElement& h) const;
  /// Generator i as an ambient element.
  AmbientElement generator(int i) const;
};

SectionReduction build_pair_product_section(const SubmonoidPresentation& a,
                                            const SubmonoidPresentation& b);

/// Encodes <S> c_1 <S> c_2 ... c_k <S> as a section over G x H3/<z^e>.
SectionReduction build_conjugate_product_section(const SubmonoidPresentation& s,
                                                 const std::vector<AmbientElement>& interleaves);

/// Transforms "g in M^{g_1} ... M^{g_n}" into a section membership query:
/// returns the reduction and the ambient query element.
std::pair<SectionReduction, AmbientElement> reduce_conjugate_membership(
    const AmbientElement& g, const SubmonoidPresentation& s,
    const std::vector<AmbientElement>& conjugators);

SectionReduction build_product_section_h5(const ProductInstance& instance);
SectionReduction build_conjugate_section_h5(const ProductInstance& instance);

struct SearchStats {
  std::uint64_t states_expanded = 0;
  std::uint64_t frontier_peak = 0;
};

struct MembershipVerdict {
  bool member = false;
  Word witness;            // over T; meaningful iff member
  bool truncated = false;  // candidate cap hit before the length bound was exhausted
  SearchStats stats;
  int max_len = 0;  // budget echo
  std::uint64_t max_candidates = 0;
};

/// Breadth-first search of <T> by right multiplication, deduplicating states
/// by normal form. Returns the shortest witness, ties broken by generator
/// index; NotFound is exhaustive unless flagged truncated.
MembershipVerdict bounded_submonoid_membership(const SectionReduction& red,
                                               const AmbientElement& query,
                                               const EnumerationBudget& budget);

/// Independent brute-force oracle: g factors as m_1 ... m_n with each m_i a
/// product of at most per_factor_len generators (interleaving the instance's
/// conjugators when present). Monotone in per_factor_len.
bool product_membership_oracle(const ProductInstance& instance, const AmbientElement& g,
                               int per_factor_len);

struct EquivalenceViolation {
  std::string direction;  // "completeness" | "soundness"
  std::string detail;
};

struct EquivalenceReport {
  bool conclusive = true;  // false when a budget truncation blocked a direction
  std::string note;        // set when inconclusive
  std::vector<std::string> checked_elements;  // completeness side, display form
  std::uint64_t section_words_checked = 0;    // soundness: words hitting the target
  std::uint64_t words_enumerated = 0;
  std::vector<EquivalenceViolation> violations;
  int ball_radius = 0;
  int word_bound = 0;
  int completeness_max_len = 0;

  bool ok() const { return conclusive && violations.empty(); }
};

/// Two-sided check of the section law, bounded and explicit about it:
/// completeness covers the oracle ball, soundness covers all T-words up to
/// word_bound (membership beyond these bounds is not claimed either way).
EquivalenceReport section_equivalence_check(const ProductInstance& instance,
                                            const SectionReduction& red, int ball_radius,
                                            int word_bound, int workers = 1);

/// Splits a section witness at its block boundaries into the ordered
/// factorization (m_1, ..., m_n); each part is re-certified by the oracle.
/// Structural violations throw InternalError (a construction bug).
std::vector<AmbientElement> witness_translate(const SectionReduction& red, const Word& witness);

/// Longest witness needed to realize per-factor words of length <= radius.
int completeness_witness_bound(const SectionReduction& red, int radius);

}  // namespace heisec

#endif
