// Certificates emitted by the exhaustive checkers.

#ifndef HEISEC_CERTIFY_HPP
#define HEISEC_CERTIFY_HPP

#include <cstdint>
#include <map>
#include <string>

namespace heisec {

/// "verified" asserts the stated bound was exhausted; "inconclusive" means the
/// budget was too small to decide and is reported distinctly from both others.
enum class Verdict { Verified, Counterexample, Inconclusive };

const char* verdict_name(Verdict v);

struct GadgetCertificate {
  std::string gadget;  // which object was checked, e.g. "unique-product n=3"
  std::string mode;    // check mode name
  std::map<std::string, std::string> bounds;  // search bounds actually used
  Verdict verdict = Verdict::Inconclusive;
  std::string counterexample;  // display form of the witness, empty otherwise
  std::uint64_t candidates_examined = 0;
  // Mode-specific observations (defect multisets, family sizes, ...); an
  // ordered map so serialized certificates are deterministic.
  std::map<std::string, std::string> facts;

  bool verified() const { return verdict == Verdict::Verified; }
};

}  // namespace heisec

#endif
