// heisec CLI: construct gadgets, verify them exhaustively, build section
// reductions from instance files, run bounded membership queries, and check
// section equivalence against brute-force oracles.
//
// Exit codes: 0 verified/member; 1 refuted or not found within an exhausted
// budget; 2 inconclusive (budget truncated); 3 input or usage error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "heisec/gadgets.hpp"
#include "heisec/group.hpp"
#include "heisec/reductions.hpp"
#include "heisec/serialize.hpp"
#include "heisec/words.hpp"

namespace {

using heisec::AmbientElement;
using heisec::EnumerationBudget;
using heisec::GadgetCertificate;
using heisec::ProductInstance;
using heisec::ReductionKind;
using heisec::SectionReduction;
using heisec::Verdict;
using json = nlohmann::ordered_json;

constexpr int kExitVerified = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

void emit(const std::string& summary, const json& record) {
  std::cout << summary << "\n" << record.dump(2) << "\n";
}

void write_artifact(const std::string& path, const std::string& content) {
  heisec::write_text_file(path, content);
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Verified:
      return kExitVerified;
    case Verdict::Counterexample:
      return kExitRefuted;
    case Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitUsage;
}

struct GadgetArgs {
  std::string kind;
  int n = 3;
  std::string out;
};

int run_gadget(const GadgetArgs& args) {
  std::string artifact;
  if (args.kind == "superincreasing") {
    artifact = heisec::encode_superincreasing(heisec::make_superincreasing(args.n));
  } else if (args.kind == "unique-product") {
    artifact = heisec::encode_unique_product(heisec::make_unique_product_gadget(args.n));
  } else if (args.kind == "h5-vectors") {
    artifact = heisec::encode_h5_vectors(heisec::make_h5_vectors(args.n));
  } else if (args.kind == "polygon") {
    artifact = heisec::encode_polygon(heisec::make_polygon_gadget(args.n));
  } else {
    throw heisec::UsageError("unknown gadget kind: " + args.kind);
  }
  json record;
  record["command"] = "gadget";
  record["kind"] = args.kind;
  record["n"] = args.n;
  if (!args.out.empty()) {
    write_artifact(args.out, artifact);
    record["out"] = args.out;
  } else {
    record["gadget"] = json::parse(artifact);
  }
  emit("built " + args.kind + " gadget (n=" + std::to_string(args.n) + ")", record);
  return kExitVerified;
}

struct VerifyArgs {
  std::string check;
  int n = 3;
  std::string mode = "permutations";
  int max_n = 4;
  int max_len = 9;
  bool max_len_set = false;
  int l = 3;
  std::uint64_t max_candidates = 10'000'000;
  int workers = 1;
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  EnumerationBudget budget;
  budget.max_len = args.max_len;
  budget.max_candidates = args.max_candidates;
  budget.max_l = args.l;

  GadgetCertificate cert;
  if (args.check == "prop21") {
    cert = heisec::check_prop21(args.max_n, args.max_len);
  } else if (args.check == "unique-sum") {
    cert = heisec::verify_gadget(heisec::make_superincreasing(args.n), budget, args.workers);
  } else if (args.check == "unique-product") {
    heisec::UniqueProductMode mode;
    if (args.mode == "permutations") {
      mode = heisec::UniqueProductMode::Permutations;
    } else if (args.mode == "all-words") {
      mode = heisec::UniqueProductMode::AllWords;
      if (!args.max_len_set) budget.max_len = args.n;  // length n suffices for the target
    } else {
      throw heisec::UsageError("unknown --mode: " + args.mode);
    }
    cert = heisec::verify_gadget(heisec::make_unique_product_gadget(args.n), mode, budget);
  } else if (args.check == "h5-vectors") {
    cert = heisec::verify_gadget(heisec::make_h5_vectors(args.n), budget);
  } else if (args.check == "polygon") {
    cert = heisec::verify_gadget(heisec::make_polygon_gadget(args.n));
  } else if (args.check == "main-identity") {
    cert = heisec::verify_gadget(
        heisec::make_main_gadget_elements(heisec::make_h5_vectors(args.n)), budget);
  } else {
    throw heisec::UsageError("unknown verification: " + args.check);
  }

  std::string artifact = heisec::encode_certificate(cert);
  json record;
  record["command"] = "verify";
  record["check"] = args.check;
  record["certificate"] = json::parse(artifact)["certificate"];
  if (!args.out.empty()) {
    write_artifact(args.out, artifact);
    record["out"] = args.out;
  }
  std::string summary = std::string(heisec::verdict_name(cert.verdict)) + " " + cert.gadget +
                        " [" + cert.mode + "] after " +
                        std::to_string(cert.candidates_examined) + " candidates";
  if (cert.verdict == Verdict::Counterexample) summary += ": " + cert.counterexample;
  emit(summary, record);
  return verdict_exit(cert.verdict);
}

struct BuildArgs {
  std::string kind;
  std::string instance;
  std::string out;
};

SectionReduction build_from_instance(const std::string& kind, const ProductInstance& inst) {
  if (kind == "pair") {
    if (!inst.conjugators.empty()) {
      throw heisec::UsageError("pair construction does not take conjugators");
    }
    if (inst.n() != 2) {
      throw heisec::UsageError("pair construction needs exactly 2 submonoids, got " +
                               std::to_string(inst.n()));
    }
    return heisec::build_pair_product_section(inst.factors[0], inst.factors[1]);
  }
  if (kind == "conjugate") {
    if (inst.n() != 1) {
      throw heisec::UsageError("conjugate construction needs exactly 1 submonoid, got " +
                               std::to_string(inst.n()));
    }
    if (inst.conjugators.empty()) {
      throw heisec::UsageError("conjugate construction needs a \"conjugators\" list");
    }
    return heisec::build_conjugate_product_section(inst.factors[0], inst.conjugators);
  }
  if (kind == "product-h5") {
    if (!inst.conjugators.empty()) {
      throw heisec::UsageError(
          "product-h5 expects a plain product instance; this one carries conjugators");
    }
    return heisec::build_product_section_h5(inst);
  }
  if (kind == "conjugate-h5") {
    if (!inst.conjugators.empty()) {
      throw heisec::UsageError(
          "conjugate-h5 expects a plain product instance; its interleaves are internal");
    }
    return heisec::build_conjugate_section_h5(inst);
  }
  throw heisec::UsageError("unknown build kind: " + kind);
}

int run_build(const BuildArgs& args) {
  ProductInstance inst = heisec::load_instance_file(args.instance);
  SectionReduction red = build_from_instance(args.kind, inst);
  std::string artifact = heisec::encode_reduction(red);
  write_artifact(args.out, artifact);
  json record;
  record["command"] = "build";
  record["kind"] = args.kind;
  record["instance"] = args.instance;
  record["out"] = args.out;
  record["ambient"] = heisec::descriptor_display(red.ambient);
  record["generators"] = red.generators.size();
  record["target"] = heisec::to_display(red.target);
  emit("built " + args.kind + " reduction with " + std::to_string(red.generators.size()) +
           " generators over " + heisec::descriptor_display(red.ambient),
       record);
  return kExitVerified;
}

struct MemberArgs {
  std::string reduction;
  std::string element;
  int max_len = 9;
  std::uint64_t max_candidates = 10'000'000;
  std::string out;
};

int run_member(const MemberArgs& args) {
  SectionReduction red = heisec::load_reduction_file(args.reduction);
  AmbientElement g = heisec::load_element_file(args.element, red.base_group());
  AmbientElement query = red.make_pair(g, red.target);
  EnumerationBudget budget;
  budget.max_len = args.max_len;
  budget.max_candidates = args.max_candidates;
  heisec::MembershipVerdict verdict = heisec::bounded_submonoid_membership(red, query, budget);

  json record;
  record["command"] = "member";
  record["reduction"] = args.reduction;
  record["query"] = heisec::to_display(g);
  record["max-len"] = args.max_len;
  record["states-expanded"] = verdict.stats.states_expanded;
  record["frontier-peak"] = verdict.stats.frontier_peak;
  if (verdict.member) {
    auto parts = heisec::witness_translate(red, verdict.witness);
    record["outcome"] = "member";
    record["witness"] = verdict.witness.indices;
    json f = json::array();
    for (const auto& m : parts) f.push_back(heisec::to_display(m));
    record["factorization"] = std::move(f);
    if (!args.out.empty()) {
      write_artifact(args.out, heisec::encode_witness_record(args.reduction, g, verdict.witness,
                                                             parts));
      record["out"] = args.out;
    }
    emit("member: witness of length " + std::to_string(verdict.witness.length()) + " " +
             heisec::word_display(verdict.witness),
         record);
    return kExitVerified;
  }
  record["outcome"] = verdict.truncated ? "not-found-truncated" : "not-found-exhausted";
  emit(verdict.truncated
           ? "not found: search truncated by --max-candidates (inconclusive)"
           : "not a member within max-len " + std::to_string(args.max_len) + " (exhausted)",
       record);
  return verdict.truncated ? kExitInconclusive : kExitRefuted;
}

struct EquivalenceArgs {
  std::string instance;
  int ball = 3;
  int word_bound = 9;
  std::string kind;  // empty = auto
  int workers = 1;
  std::string out;
};

int run_check_equivalence(const EquivalenceArgs& args) {
  ProductInstance inst = heisec::load_instance_file(args.instance);
  std::string kind = args.kind;
  if (kind.empty()) kind = inst.conjugators.empty() ? "product-h5" : "conjugate";
  SectionReduction red = build_from_instance(kind, inst);
  heisec::EquivalenceReport report =
      heisec::section_equivalence_check(inst, red, args.ball, args.word_bound, args.workers);

  std::string artifact = heisec::encode_equivalence_report(report);
  json record;
  record["command"] = "check-equivalence";
  record["instance"] = args.instance;
  record["kind"] = kind;
  record["report"] = json::parse(artifact)["report"];
  if (!args.out.empty()) {
    write_artifact(args.out, artifact);
    record["out"] = args.out;
  }
  std::string summary;
  int code;
  if (!report.conclusive) {
    summary = "inconclusive: " + report.note;
    code = kExitInconclusive;
  } else if (!report.violations.empty()) {
    summary = "section law violated: " + std::to_string(report.violations.size()) +
              " violation(s), first: " + report.violations[0].detail;
    code = kExitRefuted;
  } else {
    summary = "section equivalence verified: " + std::to_string(report.checked_elements.size()) +
              " product elements found, " + std::to_string(report.section_words_checked) +
              " section words sound";
    code = kExitVerified;
  }
  emit(summary, record);
  return code;
}

struct ExportArgs {
  std::string reduction;
  std::string format = "native";
  std::string out;
};

int run_export(const ExportArgs& args) {
  SectionReduction red = heisec::load_reduction_file(args.reduction);
  std::string artifact;
  if (args.format == "native") {
    artifact = heisec::encode_reduction(red);
  } else if (args.format == "plain-text-summary") {
    artifact = heisec::reduction_summary_text(red);
  } else {
    throw heisec::UsageError("unknown --format: " + args.format);
  }
  if (args.out.empty()) {
    std::cout << artifact;
  } else {
    write_artifact(args.out, artifact);
    json record;
    record["command"] = "export";
    record["reduction"] = args.reduction;
    record["format"] = args.format;
    record["out"] = args.out;
    emit("exported " + args.format + " to " + args.out, record);
  }
  return kExitVerified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for Heisenberg-group section reductions"};
  app.require_subcommand(1);
  int workers = 1;
  app.add_option("--workers", workers, "cap on internal parallelism")->check(CLI::PositiveNumber);

  app.fallthrough();  // let --workers appear after the subcommand

  GadgetArgs gadget;
  auto* gadget_cmd = app.add_subcommand("gadget", "construct a gadget and emit it");
  gadget_cmd->fallthrough();
  gadget_cmd->add_option("kind", gadget.kind, "superincreasing|unique-product|h5-vectors|polygon")
      ->required();
  gadget_cmd->add_option("--n", gadget.n, "gadget size")->capture_default_str();
  gadget_cmd->add_option("--out", gadget.out, "write the gadget to this file");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "exhaustively verify a construction");
  verify_cmd->fallthrough();
  verify_cmd
      ->add_option("check", verify.check,
                   "prop21|unique-sum|unique-product|h5-vectors|polygon|main-identity")
      ->required();
  verify_cmd->add_option("--n", verify.n, "gadget size")->capture_default_str();
  verify_cmd->add_option("--mode", verify.mode, "permutations|all-words")->capture_default_str();
  verify_cmd->add_option("--max-n", verify.max_n, "prop21: largest n of the expected family")
      ->capture_default_str();
  auto* max_len_opt =
      verify_cmd->add_option("--max-len", verify.max_len, "word length bound")->capture_default_str();
  verify_cmd->add_option("--l", verify.l, "main-identity: block power bound")->capture_default_str();
  verify_cmd->add_option("--max-candidates", verify.max_candidates, "enumeration cap")
      ->capture_default_str();
  verify_cmd->add_option("--out", verify.out, "write the certificate to this file");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "build a section reduction from an instance file");
  build_cmd->fallthrough();
  build_cmd->add_option("kind", build.kind, "pair|conjugate|product-h5|conjugate-h5")->required();
  build_cmd->add_option("--instance", build.instance, "instance file")->required();
  build_cmd->add_option("--out", build.out, "output reduction file")->required();

  MemberArgs member;
  auto* member_cmd = app.add_subcommand("member", "bounded membership in a section reduction");
  member_cmd->fallthrough();
  member_cmd->add_option("--reduction", member.reduction, "reduction file")->required();
  member_cmd->add_option("--element", member.element, "query element file (first coordinate)")
      ->required();
  member_cmd->add_option("--max-len", member.max_len, "witness length bound")->capture_default_str();
  member_cmd->add_option("--max-candidates", member.max_candidates, "search state cap")
      ->capture_default_str();
  member_cmd->add_option("--out", member.out, "write the witness record to this file");

  EquivalenceArgs equiv;
  auto* equiv_cmd =
      app.add_subcommand("check-equivalence", "two-sided section law check against the oracle");
  equiv_cmd->fallthrough();
  equiv_cmd->add_option("--instance", equiv.instance, "instance file")->required();
  equiv_cmd->add_option("--ball", equiv.ball, "oracle per-factor radius")->required();
  equiv_cmd->add_option("--word-bound", equiv.word_bound, "soundness word length bound")
      ->required();
  equiv_cmd->add_option("--kind", equiv.kind,
                        "construction (default: conjugate if the instance has conjugators, "
                        "else product-h5)");
  equiv_cmd->add_option("--out", equiv.out, "write the report to this file");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "re-emit a reduction file");
  export_cmd->fallthrough();
  export_cmd->add_option("--reduction", exp.reduction, "reduction file")->required();
  export_cmd->add_option("--format", exp.format, "native|plain-text-summary")
      ->capture_default_str();
  export_cmd->add_option("--out", exp.out, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  verify.max_len_set = max_len_opt->count() > 0;
  verify.workers = workers;
  equiv.workers = workers;

  try {
    if (gadget_cmd->parsed()) return run_gadget(gadget);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (build_cmd->parsed()) return run_build(build);
    if (member_cmd->parsed()) return run_member(member);
    if (equiv_cmd->parsed()) return run_check_equivalence(equiv);
    if (export_cmd->parsed()) return run_export(exp);
  } catch (const heisec::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
