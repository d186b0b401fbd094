#include "heisec/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace heisec {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path.empty() ? what : path + ": " + what);
}

Int int_field(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a decimal-string integer");
  return parse_decimal(j.get<std::string>());
}

json int_value(const Int& v) { return json(v.str()); }

json vec_value(const IntVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_value(x));
  return out;
}

IntVec vec_field(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of decimal-string integers");
  IntVec out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(int_field(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

int small_int_field(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

json desc_to_json(const GroupDescriptor& g) {
  json out;
  switch (g.kind) {
    case GroupDescriptor::Kind::Lattice:
      out["kind"] = "lattice";
      out["rank"] = g.rank;
      return out;
    case GroupDescriptor::Kind::Heisenberg:
      out["kind"] = "heisenberg";
      out["d"] = g.d;
      return out;
    case GroupDescriptor::Kind::HeisenbergMod:
      out["kind"] = "heisenberg-mod";
      out["d"] = g.d;
      out["e"] = int_value(g.e);
      return out;
    case GroupDescriptor::Kind::Product: {
      out["kind"] = "product";
      json factors = json::array();
      for (const auto& f : g.factors) factors.push_back(desc_to_json(f));
      out["factors"] = std::move(factors);
      return out;
    }
  }
  throw InternalError("desc_to_json: unknown kind");
}

GroupDescriptor desc_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    fail(path, "expected a group descriptor object with a \"kind\"");
  }
  std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "lattice") {
      if (!j.contains("rank")) fail(path, "lattice descriptor needs \"rank\"");
      return GroupDescriptor::lattice(small_int_field(j["rank"], path + ".rank"));
    }
    if (kind == "heisenberg") {
      if (!j.contains("d")) fail(path, "heisenberg descriptor needs \"d\"");
      return GroupDescriptor::heisenberg(small_int_field(j["d"], path + ".d"));
    }
    if (kind == "heisenberg-mod") {
      if (!j.contains("d") || !j.contains("e")) fail(path, "heisenberg-mod needs \"d\" and \"e\"");
      return GroupDescriptor::heisenberg_mod(small_int_field(j["d"], path + ".d"),
                                             int_field(j["e"], path + ".e"));
    }
    if (kind == "product") {
      if (!j.contains("factors") || !j["factors"].is_array()) {
        fail(path, "product descriptor needs a \"factors\" array");
      }
      std::vector<GroupDescriptor> factors;
      for (std::size_t i = 0; i < j["factors"].size(); ++i) {
        factors.push_back(
            desc_from_json(j["factors"][i], path + ".factors[" + std::to_string(i) + "]"));
      }
      return GroupDescriptor::product(std::move(factors));
    }
  } catch (const UsageError& e) {
    fail(path, e.what());
  }
  fail(path, "unknown group kind \"" + kind + "\"");
}

json elem_to_json(const AmbientElement& e) {
  return std::visit(
      [&](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LatticeElement>) {
          return vec_value(v.v);
        } else if constexpr (std::is_same_v<V, HeisenbergElement>) {
          json out;
          out["x"] = vec_value(v.a);
          out["y"] = vec_value(v.b);
          out["z"] = int_value(v.c);
          return out;
        } else if constexpr (std::is_same_v<V, QuotientHeisenbergElement>) {
          json out;
          out["x"] = vec_value(v.base.a);
          out["y"] = vec_value(v.base.b);
          out["z"] = int_value(v.base.c);
          out["mod"] = int_value(v.e);
          return out;
        } else {
          json out = json::array();
          for (const auto& p : v) out.push_back(elem_to_json(p));
          return out;
        }
      },
      e.value);
}

AmbientElement elem_from_json(const GroupDescriptor& g, const json& j, const std::string& path) {
  switch (g.kind) {
    case GroupDescriptor::Kind::Lattice: {
      IntVec v = vec_field(j, path);
      if (static_cast<int>(v.size()) != g.rank) {
        fail(path, "lattice element has length " + std::to_string(v.size()) + ", expected rank " +
                       std::to_string(g.rank));
      }
      return AmbientElement(LatticeElement{std::move(v)});
    }
    case GroupDescriptor::Kind::Heisenberg:
    case GroupDescriptor::Kind::HeisenbergMod: {
      if (!j.is_object() || !j.contains("x") || !j.contains("y") || !j.contains("z")) {
        fail(path, "expected an object with \"x\", \"y\", \"z\"");
      }
      HeisenbergElement h;
      h.a = vec_field(j["x"], path + ".x");
      h.b = vec_field(j["y"], path + ".y");
      h.c = int_field(j["z"], path + ".z");
      if (h.d() != g.d || h.a.size() != h.b.size()) {
        fail(path, "exponent blocks do not match d=" + std::to_string(g.d));
      }
      if (g.kind == GroupDescriptor::Kind::Heisenberg) {
        if (j.contains("mod")) fail(path, "unexpected \"mod\" on a plain Heisenberg element");
        return AmbientElement(std::move(h));
      }
      if (!j.contains("mod")) fail(path, "quotient element needs \"mod\"");
      Int e = int_field(j["mod"], path + ".mod");
      if (e != g.e) fail(path, "modulus " + e.str() + " differs from the group's " + g.e.str());
      if (h.c < 0 || h.c >= e) fail(path, "z-exponent is not the canonical representative");
      QuotientHeisenbergElement q;
      q.base = std::move(h);
      q.e = std::move(e);
      return AmbientElement(std::move(q));
    }
    case GroupDescriptor::Kind::Product: {
      if (!j.is_array() || j.size() != g.factors.size()) {
        fail(path, "expected an array of " + std::to_string(g.factors.size()) + " components");
      }
      AmbientElement::Product parts;
      for (std::size_t i = 0; i < g.factors.size(); ++i) {
        parts.push_back(
            elem_from_json(g.factors[i], j[i], path + "[" + std::to_string(i) + "]"));
      }
      return AmbientElement(std::move(parts));
    }
  }
  fail(path, "unknown group kind");
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

void check_version(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("version")) fail(what, "missing \"version\"");
  if (!j["version"].is_number_integer() || j["version"].get<int>() != kFormatVersion) {
    fail(what, "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  }
}

json vecs_value(const std::vector<IntVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vec_value(v));
  return out;
}

std::vector<IntVec> vecs_field(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integer vectors");
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(vec_field(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string encode_descriptor(const GroupDescriptor& g) { return dump(desc_to_json(g)); }

GroupDescriptor decode_descriptor(const std::string& text) {
  return desc_from_json(parse_text(text), "group");
}

std::string encode_element(const AmbientElement& e) { return dump(elem_to_json(e)); }

AmbientElement decode_element(const GroupDescriptor& g, const std::string& text) {
  return elem_from_json(g, parse_text(text), "element");
}

std::string encode_instance(const ProductInstance& instance) {
  json out;
  out["version"] = kFormatVersion;
  out["group"] = desc_to_json(instance.descriptor);
  json subs = json::array();
  for (const auto& f : instance.factors) {
    json gens = json::array();
    for (const auto& g : f.generators) gens.push_back(elem_to_json(g));
    subs.push_back(std::move(gens));
  }
  out["submonoids"] = std::move(subs);
  if (!instance.conjugators.empty()) {
    json cs = json::array();
    for (const auto& c : instance.conjugators) cs.push_back(elem_to_json(c));
    out["conjugators"] = std::move(cs);
  }
  return dump(out);
}

ProductInstance decode_instance(const std::string& text) {
  json j = parse_text(text);
  check_version(j, "instance");
  if (!j.contains("group")) fail("instance", "missing \"group\"");
  ProductInstance out;
  out.descriptor = desc_from_json(j["group"], "group");
  if (!j.contains("submonoids") || !j["submonoids"].is_array() || j["submonoids"].empty()) {
    fail("instance", "needs a nonempty \"submonoids\" array");
  }
  for (std::size_t i = 0; i < j["submonoids"].size(); ++i) {
    const json& gens = j["submonoids"][i];
    std::string path = "submonoids[" + std::to_string(i) + "]";
    if (!gens.is_array()) fail(path, "expected an array of generators");
    SubmonoidPresentation s;
    s.descriptor = out.descriptor;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      s.generators.push_back(
          elem_from_json(out.descriptor, gens[k], path + "[" + std::to_string(k) + "]"));
    }
    out.factors.push_back(std::move(s));
  }
  if (j.contains("conjugators")) {
    if (!j["conjugators"].is_array()) fail("conjugators", "expected an array");
    for (std::size_t k = 0; k < j["conjugators"].size(); ++k) {
      out.conjugators.push_back(elem_from_json(out.descriptor, j["conjugators"][k],
                                               "conjugators[" + std::to_string(k) + "]"));
    }
  }
  return out;
}

ProductInstance load_instance_file(const std::string& path) {
  return decode_instance(read_text_file(path));
}

namespace {

json meta_to_json(const SectionReduction& red) {
  json meta;
  meta["construction"] = reduction_kind_name(red.kind);
  meta["factor-count"] = red.factor_count;
  meta["factor-sizes"] = red.factor_sizes;
  if (red.meta.h5) {
    const auto& g = *red.meta.h5;
    meta["chain-a"] = vec_value(g.chain_a);
    meta["chain-b"] = vec_value(g.chain_b);
    meta["u"] = vecs_value(g.u);
    meta["v"] = vecs_value(g.v);
    json em = json::array();
    for (const auto& row : g.e_matrix) em.push_back(vec_value(row));
    meta["e-matrix"] = std::move(em);
  }
  if (red.meta.polygon) {
    const auto& g = *red.meta.polygon;
    meta["polygon-radius"] = int_value(g.radius);
    meta["polygon-u"] = vecs_value(g.u);
    meta["polygon-v"] = vecs_value(g.v);
  }
  if (red.meta.unique_product) {
    const auto& g = *red.meta.unique_product;
    meta["b"] = vec_value(g.b.b);
    meta["e"] = int_value(g.e);
  }
  return meta;
}

void meta_from_json(const json& meta, SectionReduction& red) {
  red.factor_count = small_int_field(meta.at("factor-count"), "meta.factor-count");
  red.factor_sizes.clear();
  for (const auto& s : meta.at("factor-sizes")) {
    red.factor_sizes.push_back(small_int_field(s, "meta.factor-sizes"));
  }
  if (meta.contains("u")) {
    H5VectorGadget g;
    g.u = vecs_field(meta["u"], "meta.u");
    g.v = vecs_field(meta["v"], "meta.v");
    g.chain_a = vec_field(meta["chain-a"], "meta.chain-a");
    g.chain_b = vec_field(meta["chain-b"], "meta.chain-b");
    g.n = static_cast<int>(g.u.size());
    for (const auto& row : vecs_field(meta["e-matrix"], "meta.e-matrix")) g.e_matrix.push_back(row);
    red.meta.h5 = std::move(g);
  }
  if (meta.contains("polygon-u")) {
    PolygonGadget g;
    g.u = vecs_field(meta["polygon-u"], "meta.polygon-u");
    g.v = vecs_field(meta["polygon-v"], "meta.polygon-v");
    g.radius = int_field(meta["polygon-radius"], "meta.polygon-radius");
    g.n = static_cast<int>(g.u.size());
    red.meta.polygon = std::move(g);
  }
  if (meta.contains("b")) {
    // Rebuild the full unique-product family from its chain and modulus.
    UniqueProductGadget g;
    g.b.b = vec_field(meta["b"], "meta.b");
    g.e = int_field(meta["e"], "meta.e");
    g.n = static_cast<int>(g.b.b.size());
    HeisenbergElement prod = h_identity(1);
    for (int i = 0; i < g.n; ++i) {
      HeisenbergElement hi = h_multiply(h_from_x({g.b.b[i]}), h_from_y({Int(1)}));
      prod = h_multiply(prod, hi);
      g.h.push_back(std::move(hi));
    }
    g.v = quotient_project(prod, g.e);
    red.meta.unique_product = std::move(g);
  }
}

}  // namespace

std::string encode_reduction(const SectionReduction& red) {
  json out;
  out["version"] = kFormatVersion;
  out["kind"] = reduction_kind_name(red.kind);
  out["ambient"] = desc_to_json(red.ambient);
  json gens = json::array();
  for (const auto& t : red.generators) {
    gens.push_back(json::array({elem_to_json(t[0]), elem_to_json(t[1])}));
  }
  out["generators"] = std::move(gens);
  out["target"] = elem_to_json(red.target);
  out["meta"] = meta_to_json(red);
  return dump(out);
}

SectionReduction decode_reduction(const std::string& text) {
  json j = parse_text(text);
  check_version(j, "reduction");
  for (const char* field : {"kind", "ambient", "generators", "target", "meta"}) {
    if (!j.contains(field)) fail("reduction", std::string("missing \"") + field + "\"");
  }
  SectionReduction red;
  auto kind = reduction_kind_from_name(j["kind"].get<std::string>());
  if (!kind) fail("reduction.kind", "unknown kind \"" + j["kind"].get<std::string>() + "\"");
  red.kind = *kind;
  red.ambient = desc_from_json(j["ambient"], "ambient");
  if (red.ambient.kind != GroupDescriptor::Kind::Product || red.ambient.factors.size() != 2) {
    fail("reduction.ambient", "must be a two-factor product G x H");
  }
  if (!j["generators"].is_array()) fail("reduction.generators", "expected an array of pairs");
  for (std::size_t i = 0; i < j["generators"].size(); ++i) {
    const json& pair = j["generators"][i];
    std::string path = "generators[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2) fail(path, "expected a pair [g, h]");
    red.generators.push_back({elem_from_json(red.ambient.factors[0], pair[0], path + "[0]"),
                              elem_from_json(red.ambient.factors[1], pair[1], path + "[1]")});
  }
  red.target = elem_from_json(red.ambient.factors[1], j["target"], "target");
  meta_from_json(j["meta"], red);

  int expected = 0;
  for (int s : red.factor_sizes) expected += s;
  switch (red.kind) {
    case ReductionKind::Pair:
      expected += 1;
      break;
    case ReductionKind::Conjugate:
      expected += red.factor_count;
      break;
    case ReductionKind::ProductH5:
    case ReductionKind::ConjugateH5:
      expected += red.factor_count - 1;
      break;
  }
  if (expected != static_cast<int>(red.generators.size())) {
    fail("reduction", "meta layout does not cover the generator list");
  }
  return red;
}

SectionReduction load_reduction_file(const std::string& path) {
  return decode_reduction(read_text_file(path));
}

AmbientElement load_element_file(const std::string& path, const GroupDescriptor& g) {
  json j = parse_text(read_text_file(path));
  check_version(j, "element file");
  if (!j.contains("element")) fail("element file", "missing \"element\"");
  return elem_from_json(g, j["element"], "element");
}

std::string encode_element_file(const AmbientElement& e) {
  json out;
  out["version"] = kFormatVersion;
  out["element"] = elem_to_json(e);
  return dump(out);
}

std::string encode_certificate(const GadgetCertificate& cert) {
  json out;
  out["version"] = kFormatVersion;
  json c;
  c["gadget"] = cert.gadget;
  c["mode"] = cert.mode;
  c["bounds"] = cert.bounds;
  c["verdict"] = verdict_name(cert.verdict);
  if (!cert.counterexample.empty()) c["counterexample"] = cert.counterexample;
  c["candidates-examined"] = std::to_string(cert.candidates_examined);
  c["facts"] = cert.facts;
  out["certificate"] = std::move(c);
  return dump(out);
}

std::string encode_equivalence_report(const EquivalenceReport& report) {
  json out;
  out["version"] = kFormatVersion;
  json r;
  r["conclusive"] = report.conclusive;
  if (!report.note.empty()) r["note"] = report.note;
  r["ball-radius"] = report.ball_radius;
  r["word-bound"] = report.word_bound;
  r["completeness-max-len"] = report.completeness_max_len;
  r["checked-elements"] = report.checked_elements;
  r["section-words-checked"] = std::to_string(report.section_words_checked);
  r["words-enumerated"] = std::to_string(report.words_enumerated);
  json vs = json::array();
  for (const auto& v : report.violations) {
    vs.push_back(json{{"direction", v.direction}, {"detail", v.detail}});
  }
  r["violations"] = std::move(vs);
  out["report"] = std::move(r);
  return dump(out);
}

std::string encode_witness_record(const std::string& reduction_ref, const AmbientElement& query,
                                  const Word& word,
                                  const std::vector<AmbientElement>& factorization) {
  json out;
  out["version"] = kFormatVersion;
  out["reduction"] = reduction_ref;
  out["query"] = elem_to_json(query);
  out["word"] = word.indices;
  json f = json::array();
  for (const auto& m : factorization) f.push_back(elem_to_json(m));
  out["factorization"] = std::move(f);
  return dump(out);
}

std::string encode_superincreasing(const SuperIncreasingSequence& g) {
  json out;
  out["version"] = kFormatVersion;
  out["gadget"] = "superincreasing";
  out["n"] = g.size();
  out["b"] = vec_value(g.b);
  return dump(out);
}

std::string encode_unique_product(const UniqueProductGadget& g) {
  json out;
  out["version"] = kFormatVersion;
  out["gadget"] = "unique-product";
  out["n"] = g.n;
  out["b"] = vec_value(g.b.b);
  out["e"] = int_value(g.e);
  json hs = json::array();
  for (const auto& h : g.h) hs.push_back(elem_to_json(AmbientElement(h)));
  out["h"] = std::move(hs);
  out["v"] = elem_to_json(AmbientElement(g.v));
  return dump(out);
}

std::string encode_h5_vectors(const H5VectorGadget& g) {
  json out;
  out["version"] = kFormatVersion;
  out["gadget"] = "h5-vectors";
  out["n"] = g.n;
  out["chain-a"] = vec_value(g.chain_a);
  out["chain-b"] = vec_value(g.chain_b);
  out["u"] = vecs_value(g.u);
  out["v"] = vecs_value(g.v);
  json em = json::array();
  for (const auto& row : g.e_matrix) em.push_back(vec_value(row));
  out["e-matrix"] = std::move(em);
  return dump(out);
}

std::string encode_polygon(const PolygonGadget& g) {
  json out;
  out["version"] = kFormatVersion;
  out["gadget"] = "polygon";
  out["n"] = g.n;
  out["radius"] = int_value(g.radius);
  out["u"] = vecs_value(g.u);
  out["v"] = vecs_value(g.v);
  return dump(out);
}

std::string reduction_summary_text(const SectionReduction& red) {
  std::ostringstream os;
  os << "kind:          " << reduction_kind_name(red.kind) << '\n';
  os << "ambient:       " << descriptor_display(red.ambient) << '\n';
  os << "factors:       " << red.factor_count << '\n';
  os << "generators:    " << red.generators.size() << '\n';
  for (std::size_t i = 0; i < red.generators.size(); ++i) {
    os << "  T[" << i << "] = (" << to_display(red.generators[i][0]) << ", "
       << to_display(red.generators[i][1]) << ")\n";
  }
  os << "target:        " << to_display(red.target) << '\n';
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw InputError("failed writing file: " + path);
}

}  // namespace heisec
