#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qva/characters.hpp"

using namespace qva;

namespace {

Specialization generic_yz(const Rat& trunc) {
  Specialization s;
  s.trunc = trunc;
  s.set("y", QMono::q_power(rat(2, 9)));
  s.set("z", QMono::q_power(rat(1, 7)));
  return s;
}

Specialization limits_yz(const Rat& trunc, long ydir = 1, long zdir = 2) {
  Specialization s;
  s.trunc = trunc;
  s.limit("y", Rat(ydir));
  s.limit("z", Rat(zdir));
  return s;
}

}  // namespace

TEST_CASE("flowed weights and dimensions") {
  // boundary level u: vacuum flows to the first twisted module
  WeightDim v3 = flowed_weight_dim(3, 0);
  WeightDim g = general_admissible_weight_dim(2, 3, 1, 0);
  CHECK(g.label == v3.label);
  CHECK(g.dim == v3.dim);
  WeightDim g1 = general_admissible_weight_dim(2, 3, 1, 1);
  WeightDim v31 = flowed_weight_dim(3, 1);
  CHECK(g1.label == v31.label);
  CHECK(g1.dim == v31.dim);
}

TEST_CASE("boundary characters: leading behavior and symmetry") {
  // sigma^{-1/2}-flowed characters at y = z = 1 have leading coefficient 1
  for (long u : {3L, 5L}) {
    for (long j = 0; j < u; ++j) {
      Puiseux ch =
          build_sl2_boundary_char(u, j).flowed(sl2_flow(rat(-1, 2))).evaluate(limits_yz(Rat(6)));
      REQUIRE(!ch.known_zero());
      CHECK(ch.leading()->second == Cyc::one());
    }
  }
  // j and u-1-j give the same twisted q-series
  for (long u : {3L, 5L}) {
    for (long j = 0; 2 * j < u - 1; ++j) {
      Puiseux a =
          build_sl2_boundary_char(u, j).flowed(sl2_flow(rat(-1, 2))).evaluate(limits_yz(Rat(8)));
      Puiseux b = build_sl2_boundary_char(u, u - 1 - j)
                      .flowed(sl2_flow(rat(-1, 2)))
                      .evaluate(limits_yz(Rat(8)));
      CHECK(Puiseux::agree(a, b));
      CHECK(a.trunc() >= 8);
    }
  }
}

TEST_CASE("flow composition") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> half(-2, 3);
  CharExpr vac3 = build_sl2_boundary_char(3, 0);
  CharExpr vac5 = build_sl2_boundary_char(5, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Rat l1 = rat(half(rng), 2), l2 = rat(half(rng), 2);
    for (const CharExpr& e : {vac3, vac5}) {
      Puiseux a = e.flowed(sl2_flow(l2)).flowed(sl2_flow(l1)).evaluate(generic_yz(Rat(5)));
      Puiseux b = e.flowed(sl2_flow(l1 + l2)).evaluate(generic_yz(Rat(5)));
      CHECK(Puiseux::agree(a, b));
    }
  }
}

TEST_CASE("limit direction independence") {
  Puiseux a = build_sl2_boundary_char(3, 1).flowed(sl2_flow(rat(-1, 2))).evaluate(limits_yz(Rat(8), 1, 2));
  Puiseux b = build_sl2_boundary_char(3, 1).flowed(sl2_flow(rat(-1, 2))).evaluate(limits_yz(Rat(8), 3, 5));
  CHECK(Puiseux::agree(a, b));
}

TEST_CASE("untwisted non-vacuum characters have a pole at z = 1") {
  CHECK_THROWS_AS(build_sl2_boundary_char(3, 1).evaluate(limits_yz(Rat(4))), MathError);
  // while the vacuum itself is fine
  Puiseux v = build_sl2_boundary_char(3, 0).evaluate(limits_yz(Rat(4)));
  CHECK(v.leading()->second == Cyc::one());
}

TEST_CASE("level -1/2 characters") {
  // ch[L0] + ch[L1] = y^{-1/2} eta / theta_4
  Specialization s = generic_yz(Rat(6));
  Puiseux l0 = build_sl2_half_char(Sl2HalfModule::L0).evaluate(s);
  Puiseux l1 = build_sl2_half_char(Sl2HalfModule::L1).evaluate(s);
  CharExpr direct = CharExpr::product(
      {CharExpr::mono(VarMono::var("y", rat(-1, 2))),
       CharExpr::quotient(CharExpr::eta(), CharExpr::theta(4, VarMono::var("z")))});
  CHECK(Puiseux::agree(l0 + l1, direct.evaluate(s)));

  // the flowed vacuum q-series is well-defined at y = z = 1
  Puiseux tw = build_sl2_half_char(Sl2HalfModule::L0)
                   .flowed(sl2_flow(rat(-1, 2)))
                   .evaluate(limits_yz(Rat(6)));
  CHECK(tw.leading()->second == Cyc::one());
}

TEST_CASE("sl3 boundary characters") {
  Specialization s;
  s.trunc = 4;
  s.set("y", QMono::q_power(rat(1, 5)));
  s.set("z1", QMono::q_power(rat(1, 7)));
  s.set("z2", QMono::q_power(rat(2, 7)));
  Puiseux vac = build_sl3_boundary_char(Sl3Module::Vac).evaluate(s);
  REQUIRE(!vac.known_zero());
  CHECK(vac.leading()->second == Cyc::one());

  // the half-rho flow of the vacuum evaluates at z -> 1 (ordinary module)
  Specialization lim;
  lim.trunc = 4;
  lim.limit("y", Rat(1));
  lim.limit("z1", Rat(2));
  lim.limit("z2", Rat(5));
  Puiseux fl = build_sl3_boundary_char(Sl3Module::Vac)
                   .flowed(a2_flow_half_lambda1())
                   .evaluate(lim);
  CHECK(fl.leading()->second == Cyc::one());
}

TEST_CASE("bp stored series") {
  Puiseux bp = bp_flowed_char();
  CHECK(bp.val() == rat(1, 6));
  CHECK(bp.coefficient(rat(1, 6)) == Cyc::one());
  CHECK(bp.coefficient(rat(1, 6) + 1) == Cyc(Rat(4)));
  CHECK(bp.coefficient(rat(1, 6) + 2) == Cyc(Rat(10)));
  CHECK(bp.coefficient(rat(1, 6) + 3) == Cyc(Rat(24)));
  CHECK(bp.coefficient(rat(1, 6) + 4) == Cyc(Rat(51)));
  CHECK(bp.coefficient(rat(1, 6) + 5) == Cyc(Rat(100)));
  CHECK(bp.trunc() == rat(1, 6) + 6);
}

TEST_CASE("d4 flow identity (one generic specialization)") {
  Specialization s;
  s.trunc = 4;
  s.set("y", QMono::one());
  s.set("z1", QMono::q_power(rat(1, 11)));
  s.set("z2", QMono::q_power(rat(3, 11)));
  s.set("z3", QMono::q_power(rat(4, 11)));
  s.set("z4", QMono::q_power(rat(5, 11)));
  Puiseux flowed_vac = build_d4_char(D4Module::Vac).flowed(d4_flow(1)).evaluate(s);
  Puiseux l1 = build_d4_char(D4Module::L1).evaluate(s);
  CHECK(Puiseux::agree(flowed_vac, l1));
  CHECK(!flowed_vac.known_zero());
}
