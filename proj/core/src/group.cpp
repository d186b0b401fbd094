#include "heisec/group.hpp"

#include <sstream>
#include <utility>

namespace heisec {

HeisenbergElement h_identity(int d) {
  if (d < 1) throw UsageError("h_identity: d must be >= 1");
  HeisenbergElement g;
  g.a.assign(d, Int(0));
  g.b.assign(d, Int(0));
  return g;
}

HeisenbergElement h_from_x(IntVec u) {
  HeisenbergElement g = h_identity(static_cast<int>(u.size()));
  g.a = std::move(u);
  return g;
}

HeisenbergElement h_from_y(IntVec v) {
  HeisenbergElement g = h_identity(static_cast<int>(v.size()));
  g.b = std::move(v);
  return g;
}

HeisenbergElement h_from_z(int d, Int c) {
  HeisenbergElement g = h_identity(d);
  g.c = std::move(c);
  return g;
}

HeisenbergElement h_multiply(const HeisenbergElement& lhs, const HeisenbergElement& rhs) {
  if (lhs.d() != rhs.d()) {
    throw UsageError("h_multiply: elements of H_{2d+1} with different d");
  }
  HeisenbergElement out;
  out.a = vec_add(lhs.a, rhs.a);
  out.b = vec_add(lhs.b, rhs.b);
  // Moving x^{a2} left across y^{b1} emits z^{-<a2,b1>}.
  out.c = lhs.c + rhs.c - inner_product(rhs.a, lhs.b);
  return out;
}

HeisenbergElement h_inverse(const HeisenbergElement& g) {
  HeisenbergElement out;
  out.a = vec_neg(g.a);
  out.b = vec_neg(g.b);
  out.c = -g.c - inner_product(g.a, g.b);
  return out;
}

HeisenbergElement h_power(const HeisenbergElement& g, const Int& k) {
  if (k < 0) throw UsageError("h_power: negative exponent");
  HeisenbergElement acc = h_identity(g.d());
  for (Int i = 0; i < k; ++i) acc = h_multiply(acc, g);
  return acc;
}

HeisenbergElement h_commutator(const HeisenbergElement& g, const HeisenbergElement& h) {
  HeisenbergElement out =
      h_multiply(h_multiply(h_multiply(h_inverse(g), h_inverse(h)), g), h);
  return out;
}

QuotientHeisenbergElement quotient_project(const HeisenbergElement& g, const Int& e) {
  if (e < 1) throw UsageError("quotient_project: modulus must be >= 1");
  QuotientHeisenbergElement out;
  out.base = g;
  out.base.c = floor_mod(g.c, e);
  out.e = e;
  return out;
}

QuotientHeisenbergElement q_multiply(const QuotientHeisenbergElement& lhs,
                                     const QuotientHeisenbergElement& rhs) {
  if (lhs.e != rhs.e) throw UsageError("q_multiply: differing moduli");
  return quotient_project(h_multiply(lhs.base, rhs.base), lhs.e);
}

QuotientHeisenbergElement q_inverse(const QuotientHeisenbergElement& g) {
  return quotient_project(h_inverse(g.base), g.e);
}

GroupDescriptor GroupDescriptor::lattice(int rank) {
  GroupDescriptor g;
  g.kind = Kind::Lattice;
  g.rank = rank;
  g.validate();
  return g;
}

GroupDescriptor GroupDescriptor::heisenberg(int d) {
  GroupDescriptor g;
  g.kind = Kind::Heisenberg;
  g.d = d;
  g.validate();
  return g;
}

GroupDescriptor GroupDescriptor::heisenberg_mod(int d, Int e) {
  GroupDescriptor g;
  g.kind = Kind::HeisenbergMod;
  g.d = d;
  g.e = std::move(e);
  g.validate();
  return g;
}

GroupDescriptor GroupDescriptor::product(std::vector<GroupDescriptor> factors) {
  GroupDescriptor g;
  g.kind = Kind::Product;
  g.factors = std::move(factors);
  g.validate();
  return g;
}

void GroupDescriptor::validate() const {
  switch (kind) {
    case Kind::Lattice:
      if (rank < 0) throw UsageError("group descriptor: lattice rank must be >= 0");
      return;
    case Kind::Heisenberg:
      if (d < 1) throw UsageError("group descriptor: heisenberg d must be >= 1");
      return;
    case Kind::HeisenbergMod:
      if (d < 1) throw UsageError("group descriptor: heisenberg-mod d must be >= 1");
      if (e < 1) throw UsageError("group descriptor: heisenberg-mod e must be >= 1");
      return;
    case Kind::Product:
      if (factors.empty()) throw UsageError("group descriptor: product arity must be >= 1");
      for (const auto& f : factors) f.validate();
      return;
  }
  throw UsageError("group descriptor: unknown kind");
}

AmbientElement ambient_identity(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupDescriptor::Kind::Lattice: {
      LatticeElement v;
      v.v.assign(g.rank, Int(0));
      return AmbientElement(std::move(v));
    }
    case GroupDescriptor::Kind::Heisenberg:
      return AmbientElement(h_identity(g.d));
    case GroupDescriptor::Kind::HeisenbergMod:
      return AmbientElement(quotient_project(h_identity(g.d), g.e));
    case GroupDescriptor::Kind::Product: {
      AmbientElement::Product parts;
      parts.reserve(g.factors.size());
      for (const auto& f : g.factors) parts.push_back(ambient_identity(f));
      return AmbientElement(std::move(parts));
    }
  }
  throw UsageError("ambient_identity: unknown descriptor kind");
}

namespace {

[[noreturn]] void shape_mismatch(const char* op) {
  throw UsageError(std::string(op) + ": elements of different group shapes");
}

}  // namespace

AmbientElement ambient_multiply(const AmbientElement& lhs, const AmbientElement& rhs) {
  return std::visit(
      [&](const auto& a, const auto& b) -> AmbientElement {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (!std::is_same_v<A, B>) {
          shape_mismatch("ambient_multiply");
        } else if constexpr (std::is_same_v<A, LatticeElement>) {
          if (a.v.size() != b.v.size()) shape_mismatch("ambient_multiply");
          return AmbientElement(LatticeElement{vec_add(a.v, b.v)});
        } else if constexpr (std::is_same_v<A, HeisenbergElement>) {
          return AmbientElement(h_multiply(a, b));
        } else if constexpr (std::is_same_v<A, QuotientHeisenbergElement>) {
          return AmbientElement(q_multiply(a, b));
        } else {
          if (a.size() != b.size()) shape_mismatch("ambient_multiply");
          AmbientElement::Product parts;
          parts.reserve(a.size());
          for (std::size_t i = 0; i < a.size(); ++i) {
            parts.push_back(ambient_multiply(a[i], b[i]));
          }
          return AmbientElement(std::move(parts));
        }
      },
      lhs.value, rhs.value);
}

AmbientElement ambient_inverse(const AmbientElement& a) {
  return std::visit(
      [&](const auto& v) -> AmbientElement {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LatticeElement>) {
          return AmbientElement(LatticeElement{vec_neg(v.v)});
        } else if constexpr (std::is_same_v<V, HeisenbergElement>) {
          return AmbientElement(h_inverse(v));
        } else if constexpr (std::is_same_v<V, QuotientHeisenbergElement>) {
          return AmbientElement(q_inverse(v));
        } else {
          AmbientElement::Product parts;
          parts.reserve(v.size());
          for (const auto& p : v) parts.push_back(ambient_inverse(p));
          return AmbientElement(std::move(parts));
        }
      },
      a.value);
}

bool ambient_equals(const AmbientElement& a, const AmbientElement& b) { return a == b; }

AmbientElement ambient_conjugate(const AmbientElement& a, const AmbientElement& g) {
  return ambient_multiply(ambient_multiply(ambient_inverse(g), a), g);
}

bool ambient_is_identity(const AmbientElement& a) {
  return std::visit(
      [&](const auto& v) -> bool {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LatticeElement>) {
          return vec_is_zero(v.v);
        } else if constexpr (std::is_same_v<V, HeisenbergElement>) {
          return v.is_identity();
        } else if constexpr (std::is_same_v<V, QuotientHeisenbergElement>) {
          return v.base.is_identity();
        } else {
          for (const auto& p : v)
            if (!ambient_is_identity(p)) return false;
          return true;
        }
      },
      a.value);
}

bool conforms(const GroupDescriptor& g, const AmbientElement& a) {
  switch (g.kind) {
    case GroupDescriptor::Kind::Lattice: {
      const auto* v = std::get_if<LatticeElement>(&a.value);
      return v && static_cast<int>(v->v.size()) == g.rank;
    }
    case GroupDescriptor::Kind::Heisenberg: {
      const auto* v = std::get_if<HeisenbergElement>(&a.value);
      return v && v->d() == g.d && v->a.size() == v->b.size();
    }
    case GroupDescriptor::Kind::HeisenbergMod: {
      const auto* v = std::get_if<QuotientHeisenbergElement>(&a.value);
      return v && v->base.d() == g.d && v->e == g.e && v->base.c >= 0 && v->base.c < g.e;
    }
    case GroupDescriptor::Kind::Product: {
      const auto* v = std::get_if<AmbientElement::Product>(&a.value);
      if (!v || v->size() != g.factors.size()) return false;
      for (std::size_t i = 0; i < v->size(); ++i) {
        if (!conforms(g.factors[i], (*v)[i])) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

void vec_key(std::ostringstream& os, const IntVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
}

void key_into(std::ostringstream& os, const AmbientElement& a) {
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LatticeElement>) {
          os << 'L';
          vec_key(os, v.v);
        } else if constexpr (std::is_same_v<V, HeisenbergElement>) {
          os << 'H';
          vec_key(os, v.a);
          os << ';';
          vec_key(os, v.b);
          os << ';' << v.c;
        } else if constexpr (std::is_same_v<V, QuotientHeisenbergElement>) {
          os << 'Q';
          vec_key(os, v.base.a);
          os << ';';
          vec_key(os, v.base.b);
          os << ';' << v.base.c << '%' << v.e;
        } else {
          os << '(';
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << '|';
            key_into(os, v[i]);
          }
          os << ')';
        }
      },
      a.value);
}

void ab_into(IntVec& out, const AmbientElement& a) {
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LatticeElement>) {
          out.insert(out.end(), v.v.begin(), v.v.end());
        } else if constexpr (std::is_same_v<V, HeisenbergElement>) {
          out.insert(out.end(), v.a.begin(), v.a.end());
          out.insert(out.end(), v.b.begin(), v.b.end());
        } else if constexpr (std::is_same_v<V, QuotientHeisenbergElement>) {
          out.insert(out.end(), v.base.a.begin(), v.base.a.end());
          out.insert(out.end(), v.base.b.begin(), v.base.b.end());
        } else {
          for (const auto& p : v) ab_into(out, p);
        }
      },
      a.value);
}

std::string heis_display(const IntVec& a, const IntVec& b, const Int& c) {
  std::ostringstream os;
  if (a.size() == 1) {
    os << "x^" << a[0] << " y^" << b[0] << " z^" << c;
  } else {
    os << "x^(";
    vec_key(os, a);
    os << ") y^(";
    vec_key(os, b);
    os << ") z^" << c;
  }
  return os.str();
}

}  // namespace

std::string canonical_key(const AmbientElement& a) {
  std::ostringstream os;
  key_into(os, a);
  return os.str();
}

IntVec abelianization(const AmbientElement& a) {
  IntVec out;
  ab_into(out, a);
  return out;
}

int abelianization_rank(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupDescriptor::Kind::Lattice:
      return g.rank;
    case GroupDescriptor::Kind::Heisenberg:
    case GroupDescriptor::Kind::HeisenbergMod:
      return 2 * g.d;
    case GroupDescriptor::Kind::Product: {
      int total = 0;
      for (const auto& f : g.factors) total += abelianization_rank(f);
      return total;
    }
  }
  return 0;
}

std::string to_display(const AmbientElement& a) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LatticeElement>) {
          return vec_to_string(v.v);
        } else if constexpr (std::is_same_v<V, HeisenbergElement>) {
          return heis_display(v.a, v.b, v.c);
        } else if constexpr (std::is_same_v<V, QuotientHeisenbergElement>) {
          return heis_display(v.base.a, v.base.b, v.base.c) + " mod z^" + v.e.str();
        } else {
          std::string out = "(";
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += " | ";
            out += to_display(v[i]);
          }
          return out + ")";
        }
      },
      a.value);
}

std::string descriptor_display(const GroupDescriptor& g) {
  switch (g.kind) {
    case GroupDescriptor::Kind::Lattice:
      return "Z^" + std::to_string(g.rank);
    case GroupDescriptor::Kind::Heisenberg:
      return "H" + std::to_string(2 * g.d + 1);
    case GroupDescriptor::Kind::HeisenbergMod:
      return "H" + std::to_string(2 * g.d + 1) + "/<z^" + g.e.str() + ">";
    case GroupDescriptor::Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < g.factors.size(); ++i) {
        if (i) out += " x ";
        bool nested = g.factors[i].kind == GroupDescriptor::Kind::Product;
        out += nested ? "(" + descriptor_display(g.factors[i]) + ")"
                      : descriptor_display(g.factors[i]);
      }
      return out;
    }
  }
  return "?";
}

}  // namespace heisec
