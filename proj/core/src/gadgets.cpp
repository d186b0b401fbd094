#include "heisec/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace heisec {

namespace {

std::string int_list(const std::vector<Int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

Int compositions_count(int parts, int total) {
  // C(total + parts - 1, parts - 1)
  Int num = 1, den = 1;
  for (int i = 1; i < parts; ++i) {
    num *= total + i;
    den *= i;
  }
  return num / den;
}

// Visits every alpha in N_0^m with sum(alpha) = total, in lexicographic
// order; the visitor returns false to abort.
template <class F>
bool visit_compositions(std::vector<int>& alpha, std::size_t pos, int remaining, F&& f) {
  if (pos + 1 == alpha.size()) {
    alpha[pos] = remaining;
    return f(alpha);
  }
  for (int v = 0; v <= remaining; ++v) {
    alpha[pos] = v;
    if (!visit_compositions(alpha, pos + 1, remaining - v, f)) return false;
  }
  return true;
}

std::string tuple_display(const char* label, const std::vector<int>& values, int base = 0) {
  std::ostringstream os;
  os << label << "=(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i] + base;
  }
  os << ')';
  return os.str();
}

}  // namespace

SuperIncreasingSequence make_superincreasing(int m) {
  if (m < 1) throw UsageError("make_superincreasing: m must be >= 1");
  SuperIncreasingSequence s;
  s.b.reserve(m);
  s.b.push_back(1);
  for (int i = 2; i <= m; ++i) s.b.push_back(Int(i) * s.b.back() + 1);
  return s;
}

Int unique_product_defect_bound(const SuperIncreasingSequence& b) {
  Int total = 0;
  for (std::size_t i = 0; i < b.b.size(); ++i)
    for (std::size_t j = i + 1; j < b.b.size(); ++j) total += b.b[j] - b.b[i];
  return total;
}

UniqueProductGadget make_unique_product_gadget(int n) {
  if (n < 1) throw UsageError("make_unique_product_gadget: n must be >= 1");
  UniqueProductGadget g;
  g.n = n;
  g.b = make_superincreasing(n);
  g.e = unique_product_defect_bound(g.b) + 1;  // smallest modulus above every defect
  HeisenbergElement prod = h_identity(1);
  for (int i = 0; i < n; ++i) {
    HeisenbergElement hi = h_multiply(h_from_x({g.b.b[i]}), h_from_y({Int(1)}));
    prod = h_multiply(prod, hi);
    g.h.push_back(std::move(hi));
  }
  g.v = quotient_project(prod, g.e);
  return g;
}

Int unique_product_defect(const UniqueProductGadget& g, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != g.n) {
    throw UsageError("unique_product_defect: order must have length n");
  }
  HeisenbergElement permuted = h_identity(1);
  HeisenbergElement reference = h_identity(1);
  for (int i = 0; i < g.n; ++i) {
    permuted = h_multiply(permuted, g.h.at(order[i]));
    reference = h_multiply(reference, g.h[i]);
  }
  if (permuted.a != reference.a || permuted.b != reference.b) {
    throw InternalError("unique_product_defect: permuted product left the coset of v");
  }
  return permuted.c - reference.c;
}

H5VectorGadget make_h5_vectors(int n) {
  if (n < 2) throw UsageError("make_h5_vectors: n must be >= 2 (a 1-factor product needs no gadget)");
  H5VectorGadget g;
  g.n = n;
  if (n == 2) {
    // The generic chain degenerates at n = 2 (u_n would be the zero vector);
    // these bespoke vectors satisfy all three conditions directly.
    g.u = {{Int(-1), Int(0)}, {Int(1), Int(0)}};
    g.v = {{Int(1), Int(1)}};
  } else {
    // Interleaved chain a_1 < b_1 < a_2 < ... < b_{n-1} < a_n with b_i > i*b_{i-1}.
    g.chain_a.push_back(1);
    for (int i = 1; i <= n - 1; ++i) {
      Int prev_b = (i >= 2) ? g.chain_b[i - 2] : Int(0);
      g.chain_b.push_back(std::max(g.chain_a.back(), Int(i) * prev_b) + 1);
      g.chain_a.push_back(g.chain_b.back() + 1);
    }
    g.v.reserve(n - 1);
    for (int j = 0; j < n - 1; ++j) g.v.push_back({Int(1), g.chain_b[j]});
    // u_1 closes the first coordinate over the interior a's; u_n the second.
    Int interior_sum = 0;
    for (int i = 1; i < n - 1; ++i) interior_sum += g.chain_a[i];
    g.u.push_back({-interior_sum, Int(0)});
    for (int i = 1; i < n - 1; ++i) g.u.push_back({g.chain_a[i], Int(-1)});
    g.u.push_back({Int(0), Int(n - 2)});
  }
  g.e_matrix.assign(n, std::vector<Int>(n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - 1; ++j) g.e_matrix[i][j] = inner_product(g.u[i], g.v[j]);

  // Construction-time sanity: the sign split and zero sum must hold, and the
  // chain inequalities guarantee the unique-sum property without enumeration.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n - 1; ++j) {
      bool want_negative = i <= j;
      if (want_negative ? !(g.e_matrix[i][j] < 0) : !(g.e_matrix[i][j] > 0)) {
        throw InternalError("make_h5_vectors: sign condition failed at (" + std::to_string(i + 1) +
                            "," + std::to_string(j + 1) + ")");
      }
    }
  }
  IntVec total = {Int(0), Int(0)};
  for (const auto& u : g.u) total = vec_add(total, u);
  if (!vec_is_zero(total)) throw InternalError("make_h5_vectors: vertex sum is not zero");
  for (std::size_t j = 0; j < g.v.size(); ++j) {
    if (g.v[j][0] != 1) throw InternalError("make_h5_vectors: v_j must have first coordinate 1");
    Int prev = (j >= 1) ? g.v[j - 1][1] : Int(0);
    if (!(g.v[j][1] > Int(j + 1) * prev)) {
      throw InternalError("make_h5_vectors: super-increasing condition failed");
    }
  }
  return g;
}

namespace detail {

PolygonGadget make_polygon_vectors(int n) {
  if (n < 2) throw UsageError("make_polygon_vectors: n must be >= 2");
  const double tau = 6.28318530717958647692;
  for (long long radius = 2; radius <= (1LL << 40); radius *= 2) {
    std::vector<IntVec> w(n);
    for (int k = 0; k < n; ++k) {
      double angle = tau * k / n;
      w[k] = {Int(std::llround(radius * std::cos(angle))),
              Int(std::llround(radius * std::sin(angle)))};
    }
    // Fold the rounding remainder into the last vertex so the sum is zero;
    // the support directions keep the unperturbed points.
    std::vector<IntVec> u = w;
    IntVec rem = {Int(0), Int(0)};
    for (const auto& p : u) rem = vec_add(rem, p);
    u[n - 1] = vec_add(u[n - 1], vec_neg(rem));

    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        if (i == j) continue;
        // unique argmax of <., v_i> at u_i, and the conjugation-law margin
        // <u_i, v_i> > <u_i, v_j>.
        if (!(inner_product(u[i], w[i]) > inner_product(u[j], w[i]))) ok = false;
        if (!(inner_product(u[i], w[i]) > inner_product(u[i], w[j]))) ok = false;
      }
    }
    if (ok) {
      PolygonGadget g;
      g.n = n;
      g.radius = radius;
      g.u = std::move(u);
      g.v = std::move(w);
      return g;
    }
  }
  throw InternalError("make_polygon_vectors: no radius verified (should be unreachable)");
}

}  // namespace detail

PolygonGadget make_polygon_gadget(int n) {
  if (n < 3) throw UsageError("make_polygon_gadget: n must be >= 3");
  return detail::make_polygon_vectors(n);
}

MainGadgetElements make_main_gadget_elements(const H5VectorGadget& g) {
  MainGadgetElements out;
  out.gadget = g;
  out.uu.reserve(g.n);
  for (int i = 0; i < g.n; ++i) {
    Int z = 0;
    for (int j = 0; j < i; ++j) z += g.e_matrix[i][j];
    out.uu.push_back(h_multiply(h_from_x(g.u[i]), h_from_z(2, z)));
  }
  out.vv.reserve(g.n - 1);
  HeisenbergElement h = h_identity(2);
  for (int j = 0; j + 1 < g.n; ++j) {
    out.vv.push_back(h_from_y(g.v[j]));
    h = h_multiply(h, out.vv.back());
  }
  out.h = h;
  if (!vec_is_zero(out.h.a) || out.h.c != 0) {
    throw InternalError("make_main_gadget_elements: target is not a pure y-block");
  }
  return out;
}

GadgetCertificate verify_gadget(const SuperIncreasingSequence& g, const EnumerationBudget& budget,
                                int workers) {
  const int m = g.size();
  GadgetCertificate cert;
  cert.gadget = "superincreasing (" + int_list(g.b) + ")";
  cert.mode = "unique-sum";
  cert.bounds["max-candidates"] = std::to_string(budget.max_candidates);
  if (m == 0) throw UsageError("verify_gadget: empty sequence");
  if (workers < 1) throw UsageError("verify_gadget: workers must be >= 1");

  // Vectors v_i = (1, b_i): sum(alpha_i v_i) = sum(v_i) forces sum(alpha) = m
  // in the first coordinate, so the space is the compositions of m.
  Int space = compositions_count(m, m);
  if (space > Int(budget.max_candidates)) {
    cert.verdict = Verdict::Inconclusive;
    cert.facts["note"] = "composition space " + space.str() + " exceeds the candidate cap";
    return cert;
  }
  Int target = std::accumulate(g.b.begin(), g.b.end(), Int(0));

  // Statically partitioned by alpha_1 so the certificate is identical for
  // every worker count: each slice is fully enumerated, then the
  // lexicographically first counterexample across slices is reported.
  struct SliceResult {
    std::uint64_t examined = 0;
    std::vector<int> counterexample;
  };
  std::vector<SliceResult> slices(m + 1);
  auto run_slice = [&](int first) {
    SliceResult& r = slices[first];
    std::vector<int> alpha(m);
    alpha[0] = first;
    auto body = [&](const std::vector<int>& a) {
      ++r.examined;
      Int sum = 0;
      for (int i = 0; i < m; ++i) sum += Int(a[i]) * g.b[i];
      bool all_ones = std::all_of(a.begin(), a.end(), [](int x) { return x == 1; });
      if (sum == target && !all_ones && r.counterexample.empty()) r.counterexample = a;
      return true;
    };
    if (m == 1) {
      if (first == m) body(alpha);
      return;
    }
    visit_compositions(alpha, 1, m - first, body);
  };
  if (workers <= 1) {
    for (int first = 0; first <= m; ++first) run_slice(first);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (int first = t; first <= m; first += workers) run_slice(first);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& r : slices) cert.candidates_examined += r.examined;
  for (const auto& r : slices) {
    if (!r.counterexample.empty()) {
      cert.verdict = Verdict::Counterexample;
      cert.counterexample = tuple_display("alpha", r.counterexample) + " also sums to the target";
      return cert;
    }
  }
  cert.verdict = Verdict::Verified;
  cert.facts["target-sum"] = target.str();
  return cert;
}

GadgetCertificate verify_gadget(const UniqueProductGadget& g, UniqueProductMode mode,
                                const EnumerationBudget& budget) {
  GadgetCertificate cert;
  cert.gadget = "unique-product n=" + std::to_string(g.n) + " e=" + g.e.str();
  if (mode == UniqueProductMode::Permutations) {
    cert.mode = "unique-product/permutations";
    cert.bounds["max-candidates"] = std::to_string(budget.max_candidates);
    Int factorial = 1;
    for (int i = 2; i <= g.n; ++i) factorial *= i;
    if (factorial > Int(budget.max_candidates)) {
      cert.verdict = Verdict::Inconclusive;
      cert.facts["note"] = "permutation space " + factorial.str() + " exceeds the candidate cap";
      return cert;
    }
    const Int bound = unique_product_defect_bound(g.b);
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> reversal(order.rbegin(), order.rend());
    std::vector<Int> defects;
    Int max_defect = 0;
    std::vector<int> max_order = order;
    do {
      ++cert.candidates_examined;
      Int f = unique_product_defect(g, order);
      bool is_identity = std::is_sorted(order.begin(), order.end());
      if (is_identity ? f != 0 : !(f > 0 && f <= bound)) {
        cert.verdict = Verdict::Counterexample;
        cert.counterexample = "defect " + f.str() + " out of range for order " +
                              tuple_display("order", order, 1);
        return cert;
      }
      if (!is_identity && floor_mod(f, g.e) == 0) {
        cert.verdict = Verdict::Counterexample;
        cert.counterexample = "order " + tuple_display("order", order, 1) + " reaches v in the quotient";
        return cert;
      }
      if (f > max_defect) {
        max_defect = f;
        max_order = order;
      }
      defects.push_back(f);
    } while (std::next_permutation(order.begin(), order.end()));
    std::sort(defects.begin(), defects.end());
    cert.verdict = Verdict::Verified;
    cert.facts["defects"] = int_list(defects);
    cert.facts["max-defect"] = max_defect.str();
    cert.facts["defect-bound"] = bound.str();
    cert.facts["max-attained-by-reversal"] = (max_order == reversal) ? "yes" : "no";
    return cert;
  }

  cert.mode = "unique-product/all-words";
  cert.bounds["max-len"] = std::to_string(budget.max_len);
  cert.bounds["max-candidates"] = std::to_string(budget.max_candidates);
  if (budget.max_len < g.n) {
    cert.verdict = Verdict::Inconclusive;
    cert.facts["note"] = "words shorter than n cannot reach the target value";
    return cert;
  }
  Alphabet alphabet;
  alphabet.descriptor = GroupDescriptor::heisenberg_mod(1, g.e);
  for (const auto& hi : g.h) alphabet.letters.emplace_back(quotient_project(hi, g.e));
  WordSearchResult found = find_words_with_value(alphabet, AmbientElement(g.v), budget);
  cert.candidates_examined = found.examined;
  if (found.truncated) {
    cert.verdict = Verdict::Inconclusive;
    cert.facts["note"] = "enumeration truncated by the candidate cap";
    return cert;
  }
  Word expected;
  for (int i = 0; i < g.n; ++i) expected.indices.push_back(i);
  if (found.words.size() == 1 && found.words[0] == expected) {
    cert.verdict = Verdict::Verified;
    cert.facts["words-with-target-value"] = "1";
    return cert;
  }
  cert.verdict = Verdict::Counterexample;
  for (const auto& w : found.words) {
    if (!(w == expected)) {
      cert.counterexample = "word " + word_display(w) + " also evaluates to v";
      break;
    }
  }
  if (cert.counterexample.empty()) cert.counterexample = "h_1...h_n does not evaluate to v";
  return cert;
}

GadgetCertificate verify_gadget(const H5VectorGadget& g, const EnumerationBudget& budget) {
  GadgetCertificate cert;
  cert.gadget = "h5-vectors n=" + std::to_string(g.n);
  cert.mode = "h5-vectors";
  cert.bounds["max-candidates"] = std::to_string(budget.max_candidates);
  if (static_cast<int>(g.u.size()) != g.n || static_cast<int>(g.v.size()) != g.n - 1) {
    throw UsageError("verify_gadget: malformed H5VectorGadget");
  }

  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n - 1; ++j) {
      Int e = inner_product(g.u[i], g.v[j]);
      ++cert.candidates_examined;
      if (e != g.e_matrix[i][j]) {
        cert.verdict = Verdict::Counterexample;
        cert.counterexample = "stored e-matrix entry (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ") disagrees with <u_i,v_j>";
        return cert;
      }
      bool want_negative = i <= j;
      if (want_negative ? !(e < 0) : !(e > 0)) {
        cert.verdict = Verdict::Counterexample;
        cert.counterexample = "<u_" + std::to_string(i + 1) + ",v_" + std::to_string(j + 1) +
                              "> = " + e.str() + " has the wrong sign";
        return cert;
      }
    }
  }

  IntVec total(2, Int(0));
  for (const auto& u : g.u) total = vec_add(total, u);
  if (!vec_is_zero(total)) {
    cert.verdict = Verdict::Counterexample;
    cert.counterexample = "sum of u_i is " + vec_to_string(total);
    return cert;
  }

  // Unique-sum by exhaustion. The first coordinates pin sum(alpha) = n-1;
  // if they are not all 1 the space is unbounded and we refuse to guess.
  for (const auto& v : g.v) {
    if (v[0] != 1) {
      cert.verdict = Verdict::Inconclusive;
      cert.facts["note"] = "v_j first coordinates differ from 1; unique-sum space unbounded";
      return cert;
    }
  }
  const int m = g.n - 1;
  Int space = compositions_count(m, m);
  if (space + cert.candidates_examined > Int(budget.max_candidates)) {
    cert.verdict = Verdict::Inconclusive;
    cert.facts["note"] = "composition space exceeds the candidate cap";
    return cert;
  }
  IntVec target(2, Int(0));
  for (const auto& v : g.v) target = vec_add(target, v);
  std::vector<int> alpha(m);
  std::vector<int> bad;
  auto body = [&](const std::vector<int>& a) {
    ++cert.candidates_examined;
    IntVec sum(2, Int(0));
    for (int j = 0; j < m; ++j) sum = vec_add(sum, vec_scale(Int(a[j]), g.v[j]));
    bool all_ones = std::all_of(a.begin(), a.end(), [](int x) { return x == 1; });
    if (sum == target && !all_ones && bad.empty()) bad = a;
    return true;
  };
  visit_compositions(alpha, 0, m, body);
  if (!bad.empty()) {
    cert.verdict = Verdict::Counterexample;
    cert.counterexample = tuple_display("alpha", bad) + " also sums to sum(v_j)";
    return cert;
  }
  cert.verdict = Verdict::Verified;
  return cert;
}

GadgetCertificate verify_gadget(const PolygonGadget& g) {
  GadgetCertificate cert;
  cert.gadget = "polygon n=" + std::to_string(g.n) + " radius=" + g.radius.str();
  cert.mode = "polygon";
  if (static_cast<int>(g.u.size()) != g.n || static_cast<int>(g.v.size()) != g.n) {
    throw UsageError("verify_gadget: malformed PolygonGadget");
  }
  IntVec total(2, Int(0));
  for (const auto& u : g.u) total = vec_add(total, u);
  if (!vec_is_zero(total)) {
    cert.verdict = Verdict::Counterexample;
    cert.counterexample = "sum of u_k is " + vec_to_string(total);
    return cert;
  }
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (i == j) continue;
      cert.candidates_examined += 2;
      if (!(inner_product(g.u[i], g.v[i]) > inner_product(g.u[j], g.v[i]))) {
        cert.verdict = Verdict::Counterexample;
        cert.counterexample = "<.,v_" + std::to_string(i + 1) + "> does not peak uniquely at u_" +
                              std::to_string(i + 1);
        return cert;
      }
      if (!(inner_product(g.u[i], g.v[i]) > inner_product(g.u[i], g.v[j]))) {
        cert.verdict = Verdict::Counterexample;
        cert.counterexample = "<u_" + std::to_string(i + 1) + ",v_" + std::to_string(i + 1) +
                              "> does not exceed <u_" + std::to_string(i + 1) + ",v_" +
                              std::to_string(j + 1) + ">";
        return cert;
      }
    }
  }
  cert.verdict = Verdict::Verified;
  cert.facts["radius"] = g.radius.str();
  return cert;
}

GadgetCertificate verify_gadget(const MainGadgetElements& g, const EnumerationBudget& budget) {
  const int n = g.gadget.n;
  GadgetCertificate cert;
  cert.gadget = "main-gadget n=" + std::to_string(n);
  cert.mode = "main-identity";
  cert.bounds["max-l"] = std::to_string(budget.max_l);
  cert.bounds["max-len"] = std::to_string(budget.max_len);
  cert.bounds["max-candidates"] = std::to_string(budget.max_candidates);

  // Item 1: uu_1^l vv_1 uu_2^l ... vv_{n-1} uu_n^l = vv_1 ... vv_{n-1}.
  for (int l = 1; l <= budget.max_l; ++l) {
    HeisenbergElement acc = h_identity(2);
    for (int i = 0; i < n; ++i) {
      acc = h_multiply(acc, h_power(g.uu[i], l));
      if (i + 1 < n) acc = h_multiply(acc, g.vv[i]);
    }
    ++cert.candidates_examined;
    if (!(acc == g.h)) {
      cert.verdict = Verdict::Counterexample;
      cert.counterexample = "block identity fails at l=" + std::to_string(l) + ": " +
                            to_display(AmbientElement(acc));
      return cert;
    }
  }

  // Item 2: in every word with value h, the uu_i blocks appear in order.
  if (budget.max_len < n - 1) {
    cert.verdict = Verdict::Inconclusive;
    cert.facts["note"] = "max-len below n-1 cannot reach the target value";
    return cert;
  }
  Alphabet alphabet;
  alphabet.descriptor = GroupDescriptor::heisenberg(2);
  for (const auto& e : g.uu) alphabet.letters.emplace_back(e);
  for (const auto& e : g.vv) alphabet.letters.emplace_back(e);
  WordSearchResult found = find_words_with_value(alphabet, AmbientElement(g.h), budget);
  cert.candidates_examined += found.examined;
  if (found.truncated) {
    cert.verdict = Verdict::Inconclusive;
    cert.facts["note"] = "enumeration truncated by the candidate cap";
    return cert;
  }
  for (const auto& w : found.words) {
    std::vector<int> first(n, -1), last(n, -1);
    for (int pos = 0; pos < w.length(); ++pos) {
      int idx = w.indices[pos];
      if (idx < n) {
        if (first[idx] < 0) first[idx] = pos;
        last[idx] = pos;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (first[i] < 0 || first[j] < 0) continue;
        if (!(last[i] < first[j])) {
          cert.verdict = Verdict::Counterexample;
          cert.counterexample = "word " + word_display(w) + " has uu_" + std::to_string(j + 1) +
                                " before the last uu_" + std::to_string(i + 1);
          return cert;
        }
      }
    }
  }
  cert.verdict = Verdict::Verified;
  cert.facts["words-with-target-value"] = std::to_string(found.words.size());
  return cert;
}

}  // namespace heisec
