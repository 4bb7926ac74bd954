#include <doctest.h>

#include "ccp/errors.hpp"
#include "support.hpp"

using namespace ccp;
using ccptest::lattice_pool;

namespace {

ConstraintId named(const ConstraintSystem& cs, const std::string& name) {
  auto id = cs.find(name);
  REQUIRE_MESSAGE(id.has_value(), "missing constraint '" << name << "'");
  return *id;
}

// Independent enumeration of the minimal enablers, straight from the
// side condition of the ask rule.
std::vector<ConstraintId> enablers_by_enumeration(const ConstraintSystem& cs, ConstraintId c,
                                                  ConstraintId d) {
  std::vector<ConstraintId> qualifying;
  for (std::uint32_t i = 0; i < cs.size(); ++i) {
    if (cs.leq(c, cs.lub(d, ConstraintId{i}))) qualifying.push_back(ConstraintId{i});
  }
  std::vector<ConstraintId> minimal;
  for (ConstraintId a : qualifying) {
    bool isMin = true;
    for (ConstraintId b : qualifying) isMin = isMin && (b == a || !cs.leq(b, a));
    if (isMin) minimal.push_back(a);
  }
  return minimal;
}

void check_laws(const ConstraintSystem& cs) {
  const std::uint32_t n = static_cast<std::uint32_t>(cs.size());
  for (std::uint32_t a = 0; a < n; ++a) {
    ConstraintId ca{a};
    CHECK(cs.leq(cs.true_id(), ca));
    CHECK(cs.leq(ca, cs.false_id()));
    CHECK(cs.lub(ca, ca) == ca);
    CHECK(cs.lub(cs.true_id(), ca) == ca);
    CHECK(cs.lub(ca, cs.false_id()) == cs.false_id());
    for (std::uint32_t b = 0; b < n; ++b) {
      ConstraintId cb{b};
      // order agrees with join
      CHECK(cs.leq(ca, cb) == (cs.lub(ca, cb) == cb));
      CHECK(cs.lub(ca, cb) == cs.lub(cb, ca));
      ConstraintId u = cs.lub(ca, cb);
      CHECK(cs.leq(ca, u));
      CHECK(cs.leq(cb, u));
      for (std::uint32_t e = 0; e < n; ++e) {
        ConstraintId ce{e};
        if (cs.leq(ca, ce) && cs.leq(cb, ce)) CHECK(cs.leq(u, ce));
        CHECK(cs.lub(cs.lub(ca, cb), ce) == cs.lub(ca, cs.lub(cb, ce)));
      }
    }
  }
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("atoms lattice basics") {
  ConstraintSystem cs = build_atoms_lattice({"a", "b"});
  CHECK(cs.size() == 5);  // {}, a, b, ab, false
  ConstraintId a = named(cs, "a");
  ConstraintId b = named(cs, "b");
  CHECK(cs.lub(a, cs.true_id()) == a);
  CHECK(cs.lub(a, cs.false_id()) == cs.false_id());
  CHECK(cs.name(cs.lub(a, b)) == "a&b");
  CHECK_FALSE(cs.leq(a, b));
  CHECK(cs.leq(a, cs.lub(a, b)));
}

TEST_CASE("atoms lattice rejects duplicates") {
  CHECK_THROWS_AS(build_atoms_lattice({"a", "a"}), LatticeError);
  CHECK_THROWS_AS(build_atoms_lattice({"true"}), LatticeError);
  CHECK_THROWS_AS(build_atoms_lattice({"bad name"}), LatticeError);
  CHECK_THROWS_AS(build_atoms_lattice({}), LatticeError);
}

TEST_CASE("bounds lattice of the running example") {
  Workspace ws = ccptest::load_fixture("running.ccp");
  const ConstraintSystem& cs = ws.cs;
  // x in {none, x<7, x<5}, z in {none, z<7, z<5}, y in {none, y=1}, + false
  CHECK(cs.size() == 19);

  ConstraintId x7 = named(cs, "x<7");
  ConstraintId x5 = named(cs, "x<5");
  ConstraintId z5 = named(cs, "z<5");

  // x<7 is entailed by x<5
  CHECK(cs.leq(x7, x5));
  CHECK_FALSE(cs.leq(x5, x7));
  // absorption under entailment
  CHECK(cs.lub(x7, x5) == x5);
  // joining independent constraints makes a fresh element
  ConstraintId joint = cs.lub(x7, z5);
  CHECK(joint != x7);
  CHECK(joint != z5);
  CHECK(cs.name(joint) == "x<7&z<5");
}

TEST_CASE("bounds lattice with two independent bases") {
  ConstraintSystem cs = build_bounds_lattice(
      {{"x", 0, 9}, {"z", 0, 9}},
      {{"x<7", "x", CmpOp::Lt, 7}, {"z<5", "z", CmpOp::Lt, 5}});
  CHECK(cs.size() == 5);  // true, false, x<7, z<5, x<7&z<5
  ConstraintId joint = cs.lub(named(cs, "x<7"), named(cs, "z<5"));
  CHECK(cs.name(joint) == "x<7&z<5");
}

TEST_CASE("bounds lattice rejects bad declarations") {
  CHECK_THROWS_AS(build_bounds_lattice({{"x", 5, 2}}, {}), LatticeError);
  CHECK_THROWS_AS(
      build_bounds_lattice({{"x", 0, 5}}, {{"y<1", "y", CmpOp::Lt, 1}}),
      LatticeError);
  CHECK_THROWS_AS(build_bounds_lattice({{"x", 0, 5}},
                                       {{"c", "x", CmpOp::Lt, 1}, {"c", "x", CmpOp::Lt, 2}}),
                  LatticeError);
}

TEST_CASE("table lattice validation") {
  CHECK_NOTHROW(ccptest::table_m3());
  CHECK_NOTHROW(ccptest::table_n5());

  // missing lub entry for an incomparable pair
  CHECK_THROWS_AS(build_table_lattice({"true", "a", "b", "false"}, {}, {}), LatticeError);
  // lub entry that is an upper bound but not the least one
  CHECK_THROWS_AS(build_table_lattice({"true", "a", "b", "c", "false"},
                                      {{"a", "c"}, {"b", "c"}},
                                      {{"a", "b", "false"}}),
                  LatticeError);
  // antisymmetry violation
  CHECK_THROWS_AS(build_table_lattice({"true", "a", "b", "false"},
                                      {{"a", "b"}, {"b", "a"}},
                                      {}),
                  LatticeError);
  // true and false are mandatory
  CHECK_THROWS_AS(build_table_lattice({"a", "b"}, {}, {}), LatticeError);
}

TEST_CASE("minimal enablers on the running lattice") {
  Workspace ws = ccptest::load_fixture("running.ccp");
  const ConstraintSystem& cs = ws.cs;
  ConstraintId x7 = named(cs, "x<7");
  ConstraintId z5 = named(cs, "z<5");

  auto singleton = [&](ConstraintId c) { return std::vector<ConstraintId>{c}; };
  CHECK(cs.minimal_enablers(x7, cs.true_id()) == singleton(x7));
  // condition already met: only true is minimal
  CHECK(cs.minimal_enablers(x7, named(cs, "x<5")) == singleton(cs.true_id()));
  CHECK(cs.minimal_enablers(x7, z5) == singleton(x7));
  // inconsistent store enables everything
  CHECK(cs.minimal_enablers(x7, cs.false_id()) == singleton(cs.true_id()));
}

TEST_CASE("minimal enablers match plain enumeration everywhere") {
  for (const ConstraintSystem& cs : lattice_pool()) {
    for (std::uint32_t c = 0; c < cs.size(); ++c) {
      for (std::uint32_t d = 0; d < cs.size(); ++d) {
        auto got = cs.minimal_enablers(ConstraintId{c}, ConstraintId{d});
        auto want = enablers_by_enumeration(cs, ConstraintId{c}, ConstraintId{d});
        REQUIRE(got == want);
        REQUIRE_FALSE(got.empty());
        for (ConstraintId a : got) {
          REQUIRE(cs.leq(ConstraintId{c}, cs.lub(ConstraintId{d}, a)));
          // nothing strictly below a satisfies the condition
          for (std::uint32_t e = 0; e < cs.size(); ++e) {
            ConstraintId ce{e};
            if (ce != a && cs.leq(ce, a)) {
              REQUIRE_FALSE(cs.leq(ConstraintId{c}, cs.lub(ConstraintId{d}, ce)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("lattice laws hold on every pooled lattice") {
  for (const ConstraintSystem& cs : lattice_pool()) check_laws(cs);
}

TEST_CASE("lattice laws hold on larger universes") {
  check_laws(build_atoms_lattice({"a", "b", "c", "d"}));       // 17
  check_laws(build_atoms_lattice({"a", "b", "c", "d", "e"}));  // 33
  Workspace ws = ccptest::load_fixture("running.ccp");
  check_laws(ws.cs);  // 19
  check_laws(build_bounds_lattice({{"x", 0, 9}, {"y", 0, 9}},
                                  {{"x<2", "x", CmpOp::Lt, 2},
                                   {"x<5", "x", CmpOp::Lt, 5},
                                   {"x<8", "x", CmpOp::Lt, 8},
                                   {"y<3", "y", CmpOp::Lt, 3},
                                   {"y<6", "y", CmpOp::Lt, 6}}));
}

}
