#include "heisec/certify.hpp"

namespace heisec {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified:
      return "verified";
    case Verdict::Counterexample:
      return "counterexample";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

}  // namespace heisec
