#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "heisec/group.hpp"

using namespace heisec;

namespace {

HeisenbergElement xyz(std::initializer_list<Int> a, std::initializer_list<Int> b, Int c) {
  HeisenbergElement g;
  g.a = a;
  g.b = b;
  g.c = std::move(c);
  return g;
}

// Deterministic random elements for the property checks.
struct Rng {
  std::mt19937_64 gen{20240611};

  Int scalar(int lo = -50, int hi = 50) {
    return Int(std::uniform_int_distribution<int>(lo, hi)(gen));
  }

  IntVec vec(int len, int lo = -50, int hi = 50) {
    IntVec v(len);
    for (auto& x : v) x = scalar(lo, hi);
    return v;
  }

  AmbientElement element(const GroupDescriptor& g) {
    switch (g.kind) {
      case GroupDescriptor::Kind::Lattice:
        return AmbientElement(LatticeElement{vec(g.rank)});
      case GroupDescriptor::Kind::Heisenberg:
        return AmbientElement(xyzd(g.d));
      case GroupDescriptor::Kind::HeisenbergMod:
        return AmbientElement(quotient_project(xyzd(g.d), g.e));
      case GroupDescriptor::Kind::Product: {
        AmbientElement::Product parts;
        for (const auto& f : g.factors) parts.push_back(element(f));
        return AmbientElement(std::move(parts));
      }
    }
    throw std::logic_error("unreachable");
  }

  HeisenbergElement xyzd(int d) {
    HeisenbergElement g;
    g.a = vec(d);
    g.b = vec(d);
    g.c = scalar();
    return g;
  }
};

const std::vector<GroupDescriptor>& shapes() {
  static const std::vector<GroupDescriptor> all = {
      GroupDescriptor::lattice(2),
      GroupDescriptor::heisenberg(1),
      GroupDescriptor::heisenberg(2),
      GroupDescriptor::heisenberg_mod(1, 19),
      GroupDescriptor::product({GroupDescriptor::lattice(1), GroupDescriptor::heisenberg(1)}),
      GroupDescriptor::product(
          {GroupDescriptor::lattice(2),
           GroupDescriptor::product(
               {GroupDescriptor::heisenberg(2), GroupDescriptor::heisenberg_mod(1, 7)})}),
  };
  return all;
}

}  // namespace

TEST_CASE("heisenberg product law") {
  // y * x = x y z^-1, forced by the relation x y = y x z.
  HeisenbergElement y = h_from_y({Int(1)});
  HeisenbergElement x = h_from_x({Int(1)});
  CHECK(h_multiply(y, x) == xyz({1}, {1}, -1));
  CHECK(h_multiply(x, y) == xyz({1}, {1}, 0));

  // d = 2: the x-block passes the empty y-block untouched.
  HeisenbergElement xs = h_from_x({Int(1), Int(2)});
  HeisenbergElement ys = h_from_y({Int(3), Int(4)});
  CHECK(h_multiply(xs, ys) == xyz({1, 2}, {3, 4}, 0));

  CHECK_THROWS_AS(h_multiply(x, xs), UsageError);
}

TEST_CASE("heisenberg inverse") {
  CHECK(h_inverse(h_identity(1)) == h_identity(1));
  CHECK(h_inverse(h_from_z(1, 5)) == h_from_z(1, -5));

  HeisenbergElement g = xyz({1}, {1}, 0);  // x y
  HeisenbergElement inv = h_inverse(g);
  CHECK(h_multiply(g, inv) == h_identity(1));
  CHECK(h_multiply(inv, g) == h_identity(1));
  CHECK(inv == xyz({-1}, {-1}, -1));
}

TEST_CASE("commutator formula [x^u, y^v] = z^<u,v>") {
  CHECK(h_commutator(h_from_x({Int(1), Int(2)}), h_from_y({Int(3), Int(4)})) == h_from_z(2, 11));
  CHECK(h_commutator(h_from_x({Int(1)}), h_from_x({Int(1)})) == h_identity(1));

  // [x^{b_i} y, x^{b_j} y] = z^{b_i - b_j} with b_i = 3, b_j = 10.
  HeisenbergElement hi = h_multiply(h_from_x({Int(3)}), h_from_y({Int(1)}));
  HeisenbergElement hj = h_multiply(h_from_x({Int(10)}), h_from_y({Int(1)}));
  CHECK(h_commutator(hi, hj) == h_from_z(1, -7));
}

TEST_CASE("commutator formula on random vectors") {
  Rng rng;
  for (int d : {1, 2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      IntVec u = rng.vec(d), v = rng.vec(d);
      CHECK(h_commutator(h_from_x(u), h_from_y(v)) == h_from_z(d, inner_product(u, v)));
    }
  }
}

TEST_CASE("central quotient projection") {
  CHECK(quotient_project(h_from_z(1, 19), 19).base == h_identity(1));
  CHECK(quotient_project(h_from_z(1, -1), 19).base == h_from_z(1, 18));
  CHECK(quotient_project(xyz({1}, {1}, 23), 19).base == xyz({1}, {1}, 4));
  CHECK_THROWS_AS(quotient_project(h_identity(1), 0), UsageError);
}

TEST_CASE("quotient projection is a homomorphism") {
  Rng rng;
  for (int trial = 0; trial < 300; ++trial) {
    HeisenbergElement g = rng.xyzd(1), h = rng.xyzd(1);
    Int e = 1 + floor_mod(rng.scalar(1, 40), 40);
    CHECK(q_multiply(quotient_project(g, e), quotient_project(h, e)) ==
          quotient_project(h_multiply(g, h), e));
  }
}

TEST_CASE("ambient product group operations") {
  GroupDescriptor zxh3 =
      GroupDescriptor::product({GroupDescriptor::lattice(1), GroupDescriptor::heisenberg(1)});
  AmbientElement a(AmbientElement::Product{AmbientElement(LatticeElement{{Int(3)}}),
                                           AmbientElement(h_from_x({Int(1)}))});
  AmbientElement b(AmbientElement::Product{AmbientElement(LatticeElement{{Int(4)}}),
                                           AmbientElement(h_from_y({Int(1)}))});
  AmbientElement ab = ambient_multiply(a, b);
  CHECK(conforms(zxh3, ab));
  AmbientElement expected(AmbientElement::Product{AmbientElement(LatticeElement{{Int(7)}}),
                                                  AmbientElement(xyz({1}, {1}, 0))});
  CHECK(ab == expected);
}

TEST_CASE("conjugation in H5") {
  // (x^(1,0) z^2)^(y^(-1,0)) = x^(1,0) z^{2 + <(1,0),(-1,0)>}.
  AmbientElement a(h_multiply(h_from_x({Int(1), Int(0)}), h_from_z(2, 2)));
  AmbientElement g(h_from_y({Int(-1), Int(0)}));
  AmbientElement expected(h_multiply(h_from_x({Int(1), Int(0)}), h_from_z(2, 1)));
  CHECK(ambient_conjugate(a, g) == expected);

  GroupDescriptor h5 = GroupDescriptor::heisenberg(2);
  CHECK(ambient_conjugate(a, ambient_identity(h5)) == a);
}

TEST_CASE("group axioms on random elements, every shape") {
  Rng rng;
  for (const auto& shape : shapes()) {
    AmbientElement e = ambient_identity(shape);
    for (int trial = 0; trial < 1000; ++trial) {
      AmbientElement a = rng.element(shape);
      AmbientElement b = rng.element(shape);
      AmbientElement c = rng.element(shape);
      CHECK(ambient_multiply(ambient_multiply(a, b), c) ==
            ambient_multiply(a, ambient_multiply(b, c)));
      if (trial < 200) {
        CHECK(ambient_multiply(a, ambient_inverse(a)) == e);
        CHECK(ambient_multiply(ambient_inverse(a), a) == e);
        CHECK(ambient_multiply(a, e) == a);
        CHECK(ambient_multiply(e, a) == a);
      }
    }
  }
}

TEST_CASE("z is central and commutators are bilinear") {
  Rng rng;
  GroupDescriptor h5 = GroupDescriptor::heisenberg(2);
  for (int trial = 0; trial < 200; ++trial) {
    AmbientElement a = rng.element(h5);
    AmbientElement zk(h_from_z(2, rng.scalar()));
    CHECK(ambient_multiply(a, zk) == ambient_multiply(zk, a));

    // Class 2: [a, bc] = [a,b] [a,c].
    HeisenbergElement ha = rng.xyzd(2), hb = rng.xyzd(2), hc = rng.xyzd(2);
    CHECK(h_commutator(ha, h_multiply(hb, hc)) ==
          h_multiply(h_commutator(ha, hb), h_commutator(ha, hc)));
  }
}

TEST_CASE("descriptor validation and conformance") {
  CHECK_THROWS_AS(GroupDescriptor::heisenberg(0), UsageError);
  CHECK_THROWS_AS(GroupDescriptor::heisenberg_mod(1, 0), UsageError);
  CHECK_THROWS_AS(GroupDescriptor::lattice(-1), UsageError);
  CHECK_THROWS_AS(GroupDescriptor::product({}), UsageError);
  CHECK_NOTHROW(GroupDescriptor::lattice(0));

  GroupDescriptor h3 = GroupDescriptor::heisenberg(1);
  CHECK(conforms(h3, AmbientElement(h_identity(1))));
  CHECK(!conforms(h3, AmbientElement(h_identity(2))));
  CHECK(!conforms(h3, AmbientElement(LatticeElement{{Int(0)}})));
  CHECK(!conforms(GroupDescriptor::heisenberg_mod(1, 5),
                  AmbientElement(quotient_project(h_identity(1), 7))));
}

TEST_CASE("canonical keys separate distinct normal forms") {
  Rng rng;
  for (const auto& shape : shapes()) {
    for (int trial = 0; trial < 100; ++trial) {
      AmbientElement a = rng.element(shape);
      AmbientElement b = rng.element(shape);
      CHECK((canonical_key(a) == canonical_key(b)) == (a == b));
    }
  }
  CHECK(canonical_key(AmbientElement(h_identity(1))) !=
        canonical_key(AmbientElement(quotient_project(h_identity(1), 1))));
}

TEST_CASE("abelianization is a homomorphism that kills z") {
  Rng rng;
  for (const auto& shape : shapes()) {
    CHECK(static_cast<int>(abelianization(ambient_identity(shape)).size()) ==
          abelianization_rank(shape));
    for (int trial = 0; trial < 100; ++trial) {
      AmbientElement a = rng.element(shape);
      AmbientElement b = rng.element(shape);
      CHECK(abelianization(ambient_multiply(a, b)) ==
            vec_add(abelianization(a), abelianization(b)));
    }
  }
  CHECK(abelianization(AmbientElement(h_from_z(2, 41))) == IntVec(4, Int(0)));
}
