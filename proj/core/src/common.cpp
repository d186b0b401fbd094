#include "heisec/common.hpp"

#include <sstream>

namespace heisec {

Int inner_product(const IntVec& u, const IntVec& v) {
  if (u.size() != v.size()) {
    throw UsageError("inner_product: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                     std::to_string(v.size()) + ")");
  }
  Int acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

IntVec vec_add(const IntVec& u, const IntVec& v) {
  if (u.size() != v.size()) throw UsageError("vec_add: dimension mismatch");
  IntVec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

IntVec vec_neg(const IntVec& u) {
  IntVec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = -u[i];
  return out;
}

IntVec vec_scale(const Int& k, const IntVec& u) {
  IntVec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = k * u[i];
  return out;
}

bool vec_is_zero(const IntVec& u) {
  for (const Int& x : u)
    if (x != 0) return false;
  return true;
}

Int floor_mod(const Int& value, const Int& m) {
  if (m < 1) throw UsageError("floor_mod: modulus must be positive");
  Int r = value % m;
  if (r < 0) r += m;
  return r;
}

Int parse_decimal(const std::string& text) {
  std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
  if (text.size() == start) throw InputError("expected a decimal integer, got \"" + text + "\"");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw InputError("expected a decimal integer, got \"" + text + "\"");
    }
  }
  return Int(text);
}

std::string to_decimal(const Int& value) { return value.str(); }

std::string vec_to_string(const IntVec& u) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) os << ", ";
    os << u[i];
  }
  os << ')';
  return os.str();
}

}  // namespace heisec
