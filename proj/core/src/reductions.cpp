#include "heisec/reductions.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace heisec {

const char* reduction_kind_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::Pair:
      return "pair";
    case ReductionKind::Conjugate:
      return "conjugate";
    case ReductionKind::ProductH5:
      return "product-h5";
    case ReductionKind::ConjugateH5:
      return "conjugate-h5";
  }
  return "unknown";
}

std::optional<ReductionKind> reduction_kind_from_name(const std::string& name) {
  if (name == "pair") return ReductionKind::Pair;
  if (name == "conjugate") return ReductionKind::Conjugate;
  if (name == "product-h5") return ReductionKind::ProductH5;
  if (name == "conjugate-h5") return ReductionKind::ConjugateH5;
  return std::nullopt;
}

const GroupDescriptor& SectionReduction::base_group() const { return ambient.factors.at(0); }

const GroupDescriptor& SectionReduction::section_group() const { return ambient.factors.at(1); }

AmbientElement SectionReduction::make_pair(const AmbientElement& g, const AmbientElement& h) const {
  return AmbientElement(AmbientElement::Product{g, h});
}

AmbientElement SectionReduction::generator(int i) const {
  const auto& t = generators.at(i);
  return AmbientElement(AmbientElement::Product{t[0], t[1]});
}

namespace {

void check_presentation(const SubmonoidPresentation& s, const char* who) {
  s.descriptor.validate();
  for (const auto& g : s.generators) {
    if (!conforms(s.descriptor, g)) {
      throw UsageError(std::string(who) + ": generator " + to_display(g) +
                       " does not conform to " + descriptor_display(s.descriptor));
    }
  }
}

void check_instance(const ProductInstance& inst, const char* who) {
  inst.descriptor.validate();
  if (inst.factors.empty()) throw UsageError(std::string(who) + ": instance needs n >= 1 factors");
  for (const auto& f : inst.factors) {
    if (!(f.descriptor == inst.descriptor)) {
      throw UsageError(std::string(who) + ": factor group differs from the instance group");
    }
    check_presentation(f, who);
  }
  for (const auto& c : inst.conjugators) {
    if (!conforms(inst.descriptor, c)) {
      throw UsageError(std::string(who) + ": conjugator does not conform to the instance group");
    }
  }
}

/// Generators deduplicated in order, with the identity appended if missing.
std::vector<AmbientElement> augmented_generators(const SubmonoidPresentation& s) {
  std::vector<AmbientElement> out;
  std::unordered_set<std::string> seen;
  auto add = [&](const AmbientElement& g) {
    if (seen.insert(canonical_key(g)).second) out.push_back(g);
  };
  for (const auto& g : s.generators) add(g);
  add(ambient_identity(s.descriptor));
  return out;
}

std::vector<AmbientElement> deduplicated_generators(const SubmonoidPresentation& s) {
  std::vector<AmbientElement> out;
  std::unordered_set<std::string> seen;
  for (const auto& g : s.generators) {
    if (seen.insert(canonical_key(g)).second) out.push_back(g);
  }
  return out;
}

}  // namespace

SectionReduction build_pair_product_section(const SubmonoidPresentation& a,
                                            const SubmonoidPresentation& b) {
  check_presentation(a, "build_pair_product_section");
  check_presentation(b, "build_pair_product_section");
  if (!(a.descriptor == b.descriptor)) {
    throw UsageError("build_pair_product_section: factors live in different groups");
  }

  SectionReduction red;
  red.kind = ReductionKind::Pair;
  red.ambient = GroupDescriptor::product({a.descriptor, GroupDescriptor::heisenberg(1)});
  AmbientElement t(h_multiply(h_inverse(h_from_x({Int(1)})), h_from_z(1, 1)));  // x^-1 z
  AmbientElement y(h_from_y({Int(1)}));
  AmbientElement x(h_from_x({Int(1)}));

  // Words over T with second coordinate t^n y x^n realize exactly the
  // products (a_1...a_n)(b_1...b_n); padding by 1_G equalizes the counts.
  auto left = augmented_generators(a);
  auto right = augmented_generators(b);
  for (const auto& g : left) red.generators.push_back({g, t});
  red.generators.push_back({ambient_identity(a.descriptor), y});
  for (const auto& g : right) red.generators.push_back({g, x});
  red.target = y;
  red.factor_count = 2;
  red.factor_sizes = {static_cast<int>(left.size()), static_cast<int>(right.size())};
  return red;
}

SectionReduction build_conjugate_product_section(const SubmonoidPresentation& s,
                                                 const std::vector<AmbientElement>& interleaves) {
  check_presentation(s, "build_conjugate_product_section");
  if (interleaves.empty()) {
    throw UsageError("build_conjugate_product_section: needs at least one interleaved element");
  }
  for (const auto& c : interleaves) {
    if (!conforms(s.descriptor, c)) {
      throw UsageError("build_conjugate_product_section: interleaved element does not conform");
    }
  }
  const int k = static_cast<int>(interleaves.size());
  UniqueProductGadget gadget = make_unique_product_gadget(k);

  SectionReduction red;
  red.kind = ReductionKind::Conjugate;
  red.ambient = GroupDescriptor::product(
      {s.descriptor, GroupDescriptor::heisenberg_mod(1, gadget.e)});
  auto gens = deduplicated_generators(s);
  for (const auto& g : gens) {
    red.generators.push_back({g, ambient_identity(red.section_group())});
  }
  for (int j = 0; j < k; ++j) {
    red.generators.push_back({interleaves[j], AmbientElement(quotient_project(gadget.h[j], gadget.e))});
  }
  red.target = AmbientElement(gadget.v);
  red.factor_count = k;
  red.factor_sizes = {static_cast<int>(gens.size())};
  red.meta.unique_product = std::move(gadget);
  return red;
}

std::pair<SectionReduction, AmbientElement> reduce_conjugate_membership(
    const AmbientElement& g, const SubmonoidPresentation& s,
    const std::vector<AmbientElement>& conjugators) {
  check_presentation(s, "reduce_conjugate_membership");
  if (conjugators.empty()) throw UsageError("reduce_conjugate_membership: needs n >= 1 conjugators");
  if (!conforms(s.descriptor, g)) {
    throw UsageError("reduce_conjugate_membership: query does not conform to the group");
  }
  const int n = static_cast<int>(conjugators.size());

  // g in M^{g_1}...M^{g_n}  iff  g_1 g g_n^{-1} in M g_1 g_2^{-1} M ... g_{n-1} g_n^{-1} M.
  std::vector<AmbientElement> interleaves;
  if (n == 1) {
    interleaves.push_back(ambient_identity(s.descriptor));
  } else {
    for (int i = 0; i + 1 < n; ++i) {
      interleaves.push_back(
          ambient_multiply(conjugators[i], ambient_inverse(conjugators[i + 1])));
    }
  }
  SectionReduction red = build_conjugate_product_section(s, interleaves);
  AmbientElement transformed = ambient_multiply(
      ambient_multiply(conjugators.front(), g), ambient_inverse(conjugators.back()));
  AmbientElement query = red.make_pair(transformed, red.target);
  return {std::move(red), std::move(query)};
}

SectionReduction build_product_section_h5(const ProductInstance& instance) {
  check_instance(instance, "build_product_section_h5");
  if (!instance.conjugators.empty()) {
    throw UsageError("build_product_section_h5: instance carries conjugators; "
                     "use the conjugate construction for those");
  }
  const int n = instance.n();
  SectionReduction red;
  red.kind = ReductionKind::ProductH5;
  red.ambient = GroupDescriptor::product({instance.descriptor, GroupDescriptor::heisenberg(2)});
  red.factor_count = n;

  if (n == 1) {
    auto gens = augmented_generators(instance.factors[0]);
    for (const auto& g : gens) red.generators.push_back({g, AmbientElement(h_identity(2))});
    red.target = AmbientElement(h_identity(2));
    red.factor_sizes = {static_cast<int>(gens.size())};
    return red;
  }

  H5VectorGadget gadget = make_h5_vectors(n);
  MainGadgetElements elems = make_main_gadget_elements(gadget);
  for (int i = 0; i < n; ++i) {
    auto gens = augmented_generators(instance.factors[i]);
    for (const auto& g : gens) red.generators.push_back({g, AmbientElement(elems.uu[i])});
    red.factor_sizes.push_back(static_cast<int>(gens.size()));
  }
  for (int j = 0; j + 1 < n; ++j) {
    red.generators.push_back(
        {ambient_identity(instance.descriptor), AmbientElement(elems.vv[j])});
  }
  red.target = AmbientElement(elems.h);
  red.meta.h5 = std::move(gadget);
  return red;
}

SectionReduction build_conjugate_section_h5(const ProductInstance& instance) {
  check_instance(instance, "build_conjugate_section_h5");
  if (!instance.conjugators.empty()) {
    throw UsageError("build_conjugate_section_h5: instance carries conjugators; "
                     "the interleaving elements of this construction are internal");
  }
  const int n = instance.n();
  SectionReduction red;
  red.kind = ReductionKind::ConjugateH5;
  red.factor_count = n;

  if (n == 1) {
    GroupDescriptor h = GroupDescriptor::product(
        {GroupDescriptor::heisenberg(2), GroupDescriptor::heisenberg_mod(1, 1)});
    red.ambient = GroupDescriptor::product({instance.descriptor, h});
    auto gens = augmented_generators(instance.factors[0]);
    AmbientElement unit = ambient_identity(h);
    for (const auto& g : gens) red.generators.push_back({g, unit});
    red.target = unit;
    red.factor_sizes = {static_cast<int>(gens.size())};
    return red;
  }

  // Polygon vertices give uu_i = x^{u_i} z^{<u_i,v_i>}; conjugating by
  // y^{-v_j} leaves a nonnegative z-exponent that vanishes only at j = i, so
  // a product landing back in G uses each vertex block in order. The
  // interleaved conjugator quotients h_j h_{j+1}^{-1} are then pinned by a
  // unique-product family in H3/<z^e>.
  PolygonGadget poly = detail::make_polygon_vectors(n);
  UniqueProductGadget upg = make_unique_product_gadget(n - 1);
  GroupDescriptor hdesc = GroupDescriptor::product(
      {GroupDescriptor::heisenberg(2), GroupDescriptor::heisenberg_mod(1, upg.e)});
  red.ambient = GroupDescriptor::product({instance.descriptor, hdesc});

  auto h3q_identity = ambient_identity(hdesc.factors[1]);
  for (int i = 0; i < n; ++i) {
    HeisenbergElement uu =
        h_multiply(h_from_x(poly.u[i]), h_from_z(2, inner_product(poly.u[i], poly.v[i])));
    AmbientElement hpart(AmbientElement::Product{AmbientElement(uu), h3q_identity});
    auto gens = augmented_generators(instance.factors[i]);
    for (const auto& g : gens) red.generators.push_back({g, hpart});
    red.factor_sizes.push_back(static_cast<int>(gens.size()));
  }
  for (int j = 0; j + 1 < n; ++j) {
    // h_j h_{j+1}^{-1} with h_j = y^{-v_j}.
    HeisenbergElement cj = h_from_y(vec_add(poly.v[j + 1], vec_neg(poly.v[j])));
    AmbientElement hpart(AmbientElement::Product{
        AmbientElement(cj), AmbientElement(quotient_project(upg.h[j], upg.e))});
    red.generators.push_back({ambient_identity(instance.descriptor), hpart});
  }
  HeisenbergElement offset = h_from_y(vec_add(poly.v[n - 1], vec_neg(poly.v[0])));
  red.target = AmbientElement(
      AmbientElement::Product{AmbientElement(offset), AmbientElement(upg.v)});
  red.meta.polygon = std::move(poly);
  red.meta.unique_product = std::move(upg);
  return red;
}

// ---------------------------------------------------------------------------
// Bounded membership search.

namespace {

/// Deduplicated breadth-first exploration of <T> by right multiplication.
/// Expansion order (discovery order, then generator index) makes the first
/// path to any state its shortest witness with lexicographically least
/// letter sequence, independent of pruning.
class SectionSearcher {
 public:
  struct Options {
    int max_len = 9;
    std::uint64_t max_candidates = 10'000'000;
    bool pruning = true;
    bool prune_section_only = false;  // prune toward the H-part alone
    const AmbientElement* stop_at = nullptr;
  };

  SectionSearcher(const SectionReduction& red, const AmbientElement& prune_target, Options opt)
      : red_(red), opt_(opt) {
    for (int i = 0; i < static_cast<int>(red.generators.size()); ++i) {
      letters_.push_back(red.generator(i));
    }
    if (opt_.pruning) {
      target_pab_ = project(prune_target);
      std::vector<IntVec> images;
      images.reserve(letters_.size());
      for (const auto& l : letters_) images.push_back(project(l));
      reach_.build(images, opt_.max_len);
      if (reach_.usable) {
        letter_pab_ = std::move(images);
      } else {
        opt_.pruning = false;
      }
    }
    explore();
  }

  bool truncated() const { return truncated_; }
  const SearchStats& stats() const { return stats_; }

  std::optional<Word> find(const AmbientElement& query) const {
    auto it = index_.find(canonical_key(query));
    if (it == index_.end()) return std::nullopt;
    Word w;
    for (int at = it->second; at != 0; at = states_[at].parent) {
      w.indices.push_back(states_[at].letter);
    }
    std::reverse(w.indices.begin(), w.indices.end());
    return w;
  }

 private:
  struct State {
    AmbientElement value;
    IntVec pab;
    int parent = -1;
    int letter = -1;
    int depth = 0;
  };

  IntVec project(const AmbientElement& e) const {
    if (!opt_.prune_section_only) return abelianization(e);
    const auto& parts = std::get<AmbientElement::Product>(e.value);
    return abelianization(parts.at(1));
  }

  void explore() {
    AmbientElement identity = ambient_identity(red_.ambient);
    std::string stop_key = opt_.stop_at ? canonical_key(*opt_.stop_at) : std::string();
    std::string root_key = canonical_key(identity);
    IntVec root_pab;
    if (opt_.pruning) root_pab.assign(target_pab_.size(), Int(0));
    states_.push_back(State{identity, std::move(root_pab), -1, -1, 0});
    index_.emplace(root_key, 0);
    if (opt_.stop_at && root_key == stop_key) return;

    std::size_t next = 0;
    while (next < states_.size()) {
      stats_.frontier_peak = std::max(stats_.frontier_peak,
                                      static_cast<std::uint64_t>(states_.size() - next));
      const State cur = states_[next];  // copy: states_ grows below
      ++next;
      ++stats_.states_expanded;
      if (cur.depth == opt_.max_len) continue;
      for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
        IntVec child_pab;
        if (opt_.pruning) {
          child_pab = vec_add(cur.pab, letter_pab_[i]);
          IntVec diff(child_pab.size());
          for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = target_pab_[k] - child_pab[k];
          if (!reach_.reachable(diff, opt_.max_len - cur.depth - 1)) continue;
        }
        AmbientElement child = ambient_multiply(cur.value, letters_[i]);
        std::string key = canonical_key(child);
        if (index_.count(key)) continue;
        if (states_.size() >= opt_.max_candidates) {
          truncated_ = true;
          return;
        }
        int idx = static_cast<int>(states_.size());
        bool is_stop = opt_.stop_at && key == stop_key;
        states_.push_back(State{std::move(child), std::move(child_pab),
                                static_cast<int>(next - 1), i, cur.depth + 1});
        index_.emplace(std::move(key), idx);
        if (is_stop) return;
      }
    }
  }

  const SectionReduction& red_;
  Options opt_;
  std::vector<AmbientElement> letters_;
  std::vector<IntVec> letter_pab_;
  IntVec target_pab_;
  detail::ReachTable reach_;
  std::vector<State> states_;
  std::unordered_map<std::string, int> index_;
  SearchStats stats_;
  bool truncated_ = false;
};

}  // namespace

MembershipVerdict bounded_submonoid_membership(const SectionReduction& red,
                                               const AmbientElement& query,
                                               const EnumerationBudget& budget) {
  if (!conforms(red.ambient, query)) {
    throw UsageError("bounded_submonoid_membership: query does not conform to the ambient group");
  }
  SectionSearcher::Options opt;
  opt.max_len = budget.max_len;
  opt.max_candidates = budget.max_candidates;
  opt.pruning = budget.projection_pruning;
  opt.stop_at = &query;
  SectionSearcher searcher(red, query, opt);

  MembershipVerdict verdict;
  verdict.max_len = budget.max_len;
  verdict.max_candidates = budget.max_candidates;
  verdict.stats = searcher.stats();
  if (auto witness = searcher.find(query)) {
    verdict.member = true;
    verdict.witness = std::move(*witness);
    // Contract: a Member witness re-evaluates to the queried element.
    AmbientElement value = ambient_identity(red.ambient);
    for (int idx : verdict.witness.indices) value = ambient_multiply(value, red.generator(idx));
    if (!(value == query)) {
      throw InternalError("bounded_submonoid_membership: witness failed re-evaluation");
    }
  } else {
    verdict.member = false;
    verdict.truncated = searcher.truncated();
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Brute-force oracle and the two-sided equivalence check.

namespace {

/// All products of at most `len` generators, deduplicated, discovery order.
std::vector<AmbientElement> monoid_ball(const GroupDescriptor& desc,
                                        const std::vector<AmbientElement>& gens, int len) {
  std::vector<AmbientElement> states{ambient_identity(desc)};
  std::vector<int> depth{0};
  std::unordered_set<std::string> seen{canonical_key(states[0])};
  for (std::size_t next = 0; next < states.size(); ++next) {
    if (depth[next] == len) continue;
    AmbientElement cur = states[next];
    int d = depth[next];
    for (const auto& g : gens) {
      AmbientElement child = ambient_multiply(cur, g);
      if (seen.insert(canonical_key(child)).second) {
        states.push_back(std::move(child));
        depth.push_back(d + 1);
      }
    }
  }
  return states;
}

std::vector<AmbientElement> set_times_set(const std::vector<AmbientElement>& lhs,
                                          const std::vector<AmbientElement>& rhs) {
  std::vector<AmbientElement> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : lhs) {
    for (const auto& q : rhs) {
      AmbientElement r = ambient_multiply(p, q);
      if (seen.insert(canonical_key(r)).second) out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<AmbientElement> set_times_element(const std::vector<AmbientElement>& lhs,
                                              const AmbientElement& c) {
  std::vector<AmbientElement> out;
  out.reserve(lhs.size());
  for (const auto& p : lhs) out.push_back(ambient_multiply(p, c));
  return out;
}

/// The encoded product set at per-factor radius `len`:
/// B_1 ... B_n, or B c_1 B ... c_k B for conjugate instances.
std::vector<AmbientElement> product_set(const ProductInstance& inst, int len) {
  if (!inst.conjugators.empty() && inst.factors.size() != 1) {
    throw UsageError("product instance: conjugators require exactly one submonoid");
  }
  if (inst.conjugators.empty()) {
    std::vector<AmbientElement> acc{ambient_identity(inst.descriptor)};
    for (const auto& f : inst.factors) {
      acc = set_times_set(acc, monoid_ball(inst.descriptor, f.generators, len));
    }
    return acc;
  }
  std::vector<AmbientElement> ball = monoid_ball(inst.descriptor, inst.factors[0].generators, len);
  std::vector<AmbientElement> acc = ball;
  for (const auto& c : inst.conjugators) {
    acc = set_times_set(set_times_element(acc, c), ball);
  }
  return acc;
}

}  // namespace

bool product_membership_oracle(const ProductInstance& instance, const AmbientElement& g,
                               int per_factor_len) {
  check_instance(instance, "product_membership_oracle");
  if (!conforms(instance.descriptor, g)) {
    throw UsageError("product_membership_oracle: element does not conform to the group");
  }
  if (per_factor_len < 0) throw UsageError("product_membership_oracle: negative radius");
  std::string key = canonical_key(g);
  for (const auto& e : product_set(instance, per_factor_len)) {
    if (canonical_key(e) == key) return true;
  }
  return false;
}

int completeness_witness_bound(const SectionReduction& red, int radius) {
  switch (red.kind) {
    case ReductionKind::Pair:
      return 2 * radius + 1;
    case ReductionKind::Conjugate:
      return (red.factor_count + 1) * radius + red.factor_count;
    case ReductionKind::ProductH5:
    case ReductionKind::ConjugateH5:
      return red.factor_count * radius + (red.factor_count - 1);
  }
  throw UsageError("completeness_witness_bound: unknown reduction kind");
}

EquivalenceReport section_equivalence_check(const ProductInstance& instance,
                                            const SectionReduction& red, int ball_radius,
                                            int word_bound, int workers) {
  check_instance(instance, "section_equivalence_check");
  if (!(red.base_group() == instance.descriptor)) {
    throw UsageError("section_equivalence_check: reduction was not built from this instance");
  }
  if (ball_radius < 0 || word_bound < 0 || workers < 1) {
    throw UsageError("section_equivalence_check: bounds must be nonnegative, workers >= 1");
  }

  EquivalenceReport report;
  report.ball_radius = ball_radius;
  report.word_bound = word_bound;
  report.completeness_max_len = completeness_witness_bound(red, ball_radius);

  // Direction 1 (completeness): every oracle-enumerated product element must
  // be found in the section within the padded witness bound. One exploration
  // serves all queries; it prunes only toward the shared H-part, so each
  // lookup returns exactly the per-query search verdict.
  std::vector<AmbientElement> ball = product_set(instance, ball_radius);
  {
    SectionSearcher::Options opt;
    opt.max_len = report.completeness_max_len;
    opt.max_candidates = 200'000'000;
    opt.pruning = true;
    opt.prune_section_only = true;
    AmbientElement prune_target = red.make_pair(ambient_identity(red.base_group()), red.target);
    SectionSearcher searcher(red, prune_target, opt);
    if (searcher.truncated()) {
      report.conclusive = false;
      report.note = "completeness search truncated by its candidate cap";
    }
    std::vector<char> missing(ball.size(), 0);
    auto run_range = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < ball.size(); i += step) {
        if (!searcher.find(red.make_pair(ball[i], red.target))) missing[i] = 1;
      }
    };
    if (workers <= 1) {
      run_range(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < workers; ++t) pool.emplace_back(run_range, t, workers);
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < ball.size(); ++i) {
      report.checked_elements.push_back(to_display(ball[i]));
      if (missing[i] && !report.conclusive) continue;  // absence is unproven when truncated
      if (missing[i]) {
        report.violations.push_back(
            {"completeness", to_display(ball[i]) + " not found at the target within max-len " +
                                 std::to_string(report.completeness_max_len)});
      }
    }
  }

  // Direction 2 (soundness): every word over T of length <= word_bound whose
  // H-component hits the target must project into the oracle set. Bounded on
  // purpose; nothing is claimed about longer words.
  {
    std::unordered_set<std::string> oracle_keys;
    for (const auto& e : product_set(instance, word_bound)) {
      oracle_keys.insert(canonical_key(e));
    }
    std::vector<AmbientElement> letters;
    for (int i = 0; i < static_cast<int>(red.generators.size()); ++i) {
      letters.push_back(red.generator(i));
    }
    std::vector<IntVec> images;
    for (const auto& t : red.generators) images.push_back(abelianization(t[1]));
    IntVec target_pab = abelianization(red.target);
    detail::ReachTable reach;
    reach.build(images, word_bound);

    const std::uint64_t node_cap = 200'000'000;
    std::uint64_t nodes = 0;
    bool truncated = false;
    std::vector<int> prefix;
    std::string target_key = canonical_key(red.target);

    auto walk = [&](auto&& self, const AmbientElement& value, const IntVec& pab,
                    int depth) -> bool {
      if (nodes >= node_cap) {
        truncated = true;
        return false;
      }
      ++nodes;
      const auto& parts = std::get<AmbientElement::Product>(value.value);
      if (canonical_key(parts[1]) == target_key) {
        ++report.section_words_checked;
        if (!oracle_keys.count(canonical_key(parts[0]))) {
          Word w{prefix};
          report.violations.push_back(
              {"soundness", "word " + word_display(w) + " lands at the target with first "
                            "coordinate " + to_display(parts[0]) + " outside the product"});
        }
      }
      if (depth == word_bound) return true;
      for (int i = 0; i < static_cast<int>(letters.size()); ++i) {
        IntVec child_pab = vec_add(pab, images[i]);
        if (reach.usable) {
          IntVec diff(child_pab.size());
          for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = target_pab[k] - child_pab[k];
          if (!reach.reachable(diff, word_bound - depth - 1)) continue;
        }
        prefix.push_back(i);
        bool keep = self(self, ambient_multiply(value, letters[i]), child_pab, depth + 1);
        prefix.pop_back();
        if (!keep) return false;
      }
      return true;
    };
    walk(walk, ambient_identity(red.ambient), IntVec(target_pab.size(), Int(0)), 0);
    report.words_enumerated = nodes;
    if (truncated) {
      report.conclusive = false;
      report.note = "soundness enumeration truncated by its node cap";
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Witness translation.

namespace {

struct LetterRole {
  enum Kind { Block, Pivot, Interleave } kind = Block;
  int index = 0;  // block: factor index; interleave: position
};

std::vector<LetterRole> letter_roles(const SectionReduction& red) {
  std::vector<LetterRole> roles;
  switch (red.kind) {
    case ReductionKind::Pair:
      for (int i = 0; i < red.factor_sizes.at(0); ++i) roles.push_back({LetterRole::Block, 0});
      roles.push_back({LetterRole::Pivot, 0});
      for (int i = 0; i < red.factor_sizes.at(1); ++i) roles.push_back({LetterRole::Block, 1});
      break;
    case ReductionKind::Conjugate:
      for (int i = 0; i < red.factor_sizes.at(0); ++i) roles.push_back({LetterRole::Block, 0});
      for (int j = 0; j < red.factor_count; ++j) roles.push_back({LetterRole::Interleave, j});
      break;
    case ReductionKind::ProductH5:
    case ReductionKind::ConjugateH5:
      for (int f = 0; f < red.factor_count; ++f) {
        for (int i = 0; i < red.factor_sizes.at(f); ++i) roles.push_back({LetterRole::Block, f});
      }
      for (int j = 0; j + 1 < red.factor_count; ++j) {
        roles.push_back({LetterRole::Interleave, j});
      }
      break;
  }
  if (roles.size() != red.generators.size()) {
    throw InternalError("letter_roles: layout does not cover the generator list");
  }
  return roles;
}

}  // namespace

std::vector<AmbientElement> witness_translate(const SectionReduction& red, const Word& witness) {
  std::vector<LetterRole> roles = letter_roles(red);

  // Precondition: the witness evaluates to (g, target) for some g.
  AmbientElement value = ambient_identity(red.ambient);
  for (int idx : witness.indices) {
    if (idx < 0 || idx >= static_cast<int>(roles.size())) {
      throw UsageError("witness_translate: letter index out of range");
    }
    value = ambient_multiply(value, red.generator(idx));
  }
  const auto& value_parts = std::get<AmbientElement::Product>(value.value);
  if (!(value_parts[1] == red.target)) {
    throw InternalError("witness_translate: witness does not land on the section target");
  }
  // Number of ordered blocks in the factorization.
  int blocks = 0;
  switch (red.kind) {
    case ReductionKind::Pair:
      blocks = 2;
      break;
    case ReductionKind::Conjugate:
      blocks = red.factor_count + 1;
      break;
    case ReductionKind::ProductH5:
    case ReductionKind::ConjugateH5:
      blocks = red.factor_count;
      break;
  }

  std::vector<AmbientElement> parts(blocks, ambient_identity(red.base_group()));
  int current = 0;        // current block
  int seen_pivots = 0;    // pair: the single y letter
  int next_interleave = 0;
  for (int idx : witness.indices) {
    if (idx < 0 || idx >= static_cast<int>(roles.size())) {
      throw UsageError("witness_translate: letter index out of range");
    }
    const LetterRole& role = roles[idx];
    switch (role.kind) {
      case LetterRole::Pivot:
        if (++seen_pivots > 1) {
          throw InternalError("witness_translate: multiple pivot letters in a section witness");
        }
        current = 1;
        break;
      case LetterRole::Interleave:
        if (role.index != next_interleave) {
          throw InternalError("witness_translate: interleaved letters out of order");
        }
        ++next_interleave;
        current = role.index + 1;
        break;
      case LetterRole::Block: {
        bool in_place = false;
        switch (red.kind) {
          case ReductionKind::Pair:
            in_place = role.index == (seen_pivots == 0 ? 0 : 1) && role.index == current;
            break;
          case ReductionKind::Conjugate:
            in_place = role.index == 0;  // a single submonoid feeds every block
            break;
          case ReductionKind::ProductH5:
          case ReductionKind::ConjugateH5:
            in_place = role.index == current;
            break;
        }
        if (!in_place) {
          throw InternalError("witness_translate: block letter outside its ordered block "
                              "(ordering guarantee violated)");
        }
        parts[current] = ambient_multiply(parts[current], red.generators[idx][0]);
        break;
      }
    }
  }
  if (red.kind == ReductionKind::Pair && seen_pivots != 1 && !witness.indices.empty()) {
    throw InternalError("witness_translate: pair witness lacks its pivot letter");
  }
  if ((red.kind == ReductionKind::ProductH5 || red.kind == ReductionKind::ConjugateH5 ||
       red.kind == ReductionKind::Conjugate) &&
      next_interleave + 1 != blocks && !(blocks == 1 && next_interleave == 0)) {
    throw InternalError("witness_translate: witness does not use every interleaved letter");
  }

  // The split must re-multiply (with the interleaved constants, for the
  // conjugate encoding) to the witness's first coordinate.
  {
    AmbientElement recombined = parts[0];
    for (int f = 1; f < blocks; ++f) {
      if (red.kind == ReductionKind::Conjugate) {
        const AmbientElement& c = red.generators[red.factor_sizes.at(0) + (f - 1)][0];
        recombined = ambient_multiply(recombined, c);
      }
      recombined = ambient_multiply(recombined, parts[f]);
    }
    if (!(recombined == value_parts[0])) {
      throw InternalError("witness_translate: factorization does not re-multiply to the query");
    }
  }

  // Re-certify each part against its own factor's generators.
  for (int f = 0; f < blocks; ++f) {
    std::vector<AmbientElement> gens;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      int feeds = -1;
      if (roles[i].kind == LetterRole::Block) {
        feeds = (red.kind == ReductionKind::Conjugate) ? f : roles[i].index;
      }
      if (feeds == f) gens.push_back(red.generators[i][0]);
    }
    ProductInstance single;
    single.descriptor = red.base_group();
    single.factors.push_back({red.base_group(), gens});
    if (!product_membership_oracle(single, parts[f], witness.length())) {
      throw InternalError("witness_translate: factor value failed re-certification");
    }
  }
  return parts;
}

}  // namespace heisec
