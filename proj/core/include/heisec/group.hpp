// Exact normal-form arithmetic for discrete Heisenberg groups H_{2d+1},
// their central quotients H_{2d+1}/<z^e>, free abelian lattices Z^k, and
// finite direct products of these.
//
// Conventions, fixed project-wide and pinned by unit tests:
//   * normal form        x^a y^b z^c, with product law
//                        (a1,b1,c1)*(a2,b2,c2) = (a1+a2, b1+b2, c1+c2 - <a2,b1>)
//   * commutator         [g,h] = g^-1 h^-1 g h, so [x^u, y^v] = z^<u,v>
//   * conjugation        a^g = g^-1 a g

#ifndef HEISEC_GROUP_HPP
#define HEISEC_GROUP_HPP

#include <variant>
#include <vector>

#include "heisec/common.hpp"

namespace heisec {

/// Normal form x^a y^b z^c of an element of H_{2d+1}; a and b have length d.
struct HeisenbergElement {
  IntVec a;
  IntVec b;
  Int c = 0;

  int d() const { return static_cast<int>(a.size()); }
  bool is_identity() const { return vec_is_zero(a) && vec_is_zero(b) && c == 0; }
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

HeisenbergElement h_identity(int d);
HeisenbergElement h_from_x(IntVec u);
HeisenbergElement h_from_y(IntVec v);
HeisenbergElement h_from_z(int d, Int c);

HeisenbergElement h_multiply(const HeisenbergElement& lhs, const HeisenbergElement& rhs);
HeisenbergElement h_inverse(const HeisenbergElement& g);
/// g^k for k >= 0, by iterated multiplication.
HeisenbergElement h_power(const HeisenbergElement& g, const Int& k);
/// [g,h] = g^-1 h^-1 g h; always central (a = b = 0).
HeisenbergElement h_commutator(const HeisenbergElement& g, const HeisenbergElement& h);

/// Element of H_{2d+1}/<z^e>; the z-exponent is kept canonical in [0, e).
struct QuotientHeisenbergElement {
  HeisenbergElement base;
  Int e = 1;

  friend bool operator==(const QuotientHeisenbergElement&, const QuotientHeisenbergElement&) =
      default;
};

/// Projection H_{2d+1} -> H_{2d+1}/<z^e>; a group homomorphism.
QuotientHeisenbergElement quotient_project(const HeisenbergElement& g, const Int& e);
QuotientHeisenbergElement q_multiply(const QuotientHeisenbergElement& lhs,
                                     const QuotientHeisenbergElement& rhs);
QuotientHeisenbergElement q_inverse(const QuotientHeisenbergElement& g);

/// Element of a free abelian group Z^k.
struct LatticeElement {
  IntVec v;

  friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
};

/// Recursive description of a supported ambient group.
struct GroupDescriptor {
  enum class Kind { Lattice, Heisenberg, HeisenbergMod, Product };

  Kind kind = Kind::Lattice;
  int rank = 0;                         // Lattice
  int d = 0;                            // Heisenberg, HeisenbergMod
  Int e = 1;                            // HeisenbergMod
  std::vector<GroupDescriptor> factors; // Product

  static GroupDescriptor lattice(int rank);
  static GroupDescriptor heisenberg(int d);
  static GroupDescriptor heisenberg_mod(int d, Int e);
  static GroupDescriptor product(std::vector<GroupDescriptor> factors);

  /// Throws UsageError unless e >= 1, d >= 1, rank >= 0, product arity >= 1.
  void validate() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Tagged element of any supported ambient group. Immutable by convention:
/// every operation returns a fresh value, so elements can be shared freely.
struct AmbientElement {
  using Product = std::vector<AmbientElement>;
  using Value =
      std::variant<LatticeElement, HeisenbergElement, QuotientHeisenbergElement, Product>;

  Value value;

  AmbientElement() : value(LatticeElement{}) {}
  AmbientElement(LatticeElement v) : value(std::move(v)) {}
  AmbientElement(HeisenbergElement v) : value(std::move(v)) {}
  AmbientElement(QuotientHeisenbergElement v) : value(std::move(v)) {}
  AmbientElement(Product v) : value(std::move(v)) {}

  friend bool operator==(const AmbientElement&, const AmbientElement&) = default;
};

AmbientElement ambient_identity(const GroupDescriptor& g);
AmbientElement ambient_multiply(const AmbientElement& lhs, const AmbientElement& rhs);
AmbientElement ambient_inverse(const AmbientElement& a);
bool ambient_equals(const AmbientElement& a, const AmbientElement& b);
/// a^g = g^-1 a g.
AmbientElement ambient_conjugate(const AmbientElement& a, const AmbientElement& g);
bool ambient_is_identity(const AmbientElement& a);

bool conforms(const GroupDescriptor& g, const AmbientElement& a);

/// Injective textual key of the normal form; used for hashing/deduplication.
std::string canonical_key(const AmbientElement& a);

/// Free-abelianization homomorphism into Z^m (z-exponents die, x/y survive).
IntVec abelianization(const AmbientElement& a);
int abelianization_rank(const GroupDescriptor& g);

std::string to_display(const AmbientElement& a);
std::string descriptor_display(const GroupDescriptor& g);

}  // namespace heisec

#endif
