// Shared scalar/vector primitives for the heisec library.

#ifndef HEISEC_COMMON_HPP
#define HEISEC_COMMON_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace heisec {

// All exponents, moduli and lattice coordinates are arbitrary precision:
// the gadget chains grow super-exponentially and leave 64 bits around n=20.
using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Invalid arguments at an API boundary (dimension mismatch, bad parameters).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent input data (files, encodings).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A violated internal guarantee; indicates a construction bug, never bad user input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

Int inner_product(const IntVec& u, const IntVec& v);

IntVec vec_add(const IntVec& u, const IntVec& v);
IntVec vec_neg(const IntVec& u);
IntVec vec_scale(const Int& k, const IntVec& u);
bool vec_is_zero(const IntVec& u);

/// Canonical representative of `value` modulo `m`, in [0, m). Requires m >= 1.
Int floor_mod(const Int& value, const Int& m);

/// Strict decimal parser ("-?[0-9]+"); throws InputError otherwise.
Int parse_decimal(const std::string& text);

std::string to_decimal(const Int& value);
std::string vec_to_string(const IntVec& u);

}  // namespace heisec

#endif
