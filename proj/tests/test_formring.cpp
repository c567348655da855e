#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hu/formring.hpp"

using namespace hu;

namespace {

FiniteRingPtr zmod(int m) { return std::make_shared<const FiniteRing>(build_zmod(m)); }

std::uint64_t mask_of(std::initializer_list<int> elems) {
  std::uint64_t m = 0;
  for (int e : elems) m |= 1ull << e;
  return m;
}

}  // namespace

TEST_CASE("integers mod m") {
  auto z2 = zmod(2);
  CHECK(z2->add(1, 1) == 0);
  CHECK(z2->conj(1) == 1);

  auto z4 = zmod(4);
  CHECK(z4->mul(3, 3) == 1);
  CHECK(z4->conj(3) == 3);
  CHECK(z4->is_unit(3));
  CHECK(z4->unit_inverse(3) == 3);
  CHECK_FALSE(z4->is_unit(2));
  CHECK(z4->is_commutative());

  CHECK_THROWS_AS(build_zmod(65), ValidationError);
  CHECK_THROWS_AS(build_zmod(1), ValidationError);
}

TEST_CASE("quadratic extensions") {
  // (Z/2)[x]/(x^2+1): conjugation fixes x
  FiniteRing r = build_quadratic(2, 0, 1);
  CHECK(r.order() == 4);
  Elt x = 2;  // a0 + a1*m encoding
  CHECK(r.conj(x) == x);
  CHECK(r.mul(x, x) == 1);  // x^2 = -1 = 1

  // Gaussian integers mod 3: conjugation negates x
  FiniteRing g = build_quadratic(3, 0, 1);
  CHECK(g.order() == 9);
  Elt gx = 3;
  CHECK(g.conj(gx) == 6);            // -x = 2x
  CHECK(g.mul(gx, gx) == g.neg(1));  // x^2 = -1

  CHECK_THROWS_AS(build_quadratic(9, 0, 1), ValidationError);  // order 81
}

TEST_CASE("product ring with swap involution") {
  FiniteRing r = build_product_swap(2);
  CHECK(r.order() == 4);
  Elt a10 = 1, a01 = 2;  // (1,0) and (0,1)
  CHECK(r.conj(a10) == a01);
  CHECK(r.one() == 3);  // (1,1)
  // componentwise multiplication
  CHECK(r.mul(a10, a01) == 0);
  CHECK(r.mul(a10, a10) == a10);
  // the involution moves something for every m >= 2
  for (int m = 2; m <= 4; ++m) {
    FiniteRing rm = build_product_swap(m);
    bool moved = false;
    for (Elt e = 0; e < rm.order(); ++e)
      if (rm.conj(e) != e) moved = true;
    CHECK(moved);
  }
  CHECK_THROWS_AS(build_product_swap(9), ValidationError);
  CHECK_THROWS_AS(build_product_swap(1), ValidationError);
}

TEST_CASE("form ring validation") {
  auto z4 = zmod(4);
  CHECK(validate_form_ring(FormRing{z4, 1, AdditiveSubgroup(mask_of({0}))}).empty());

  // {0,1} is neither a subgroup nor inside Lambda_max
  auto bad = validate_form_ring(FormRing{z4, 1, AdditiveSubgroup(mask_of({0, 1}))});
  CHECK_FALSE(bad.empty());

  auto nonunit = validate_form_ring(FormRing{z4, 2, AdditiveSubgroup(mask_of({0}))});
  REQUIRE_FALSE(nonunit.empty());
  CHECK(nonunit.front().find("lambda") != std::string::npos);

  CHECK_THROWS_AS(make_form_ring(z4, 2, AdditiveSubgroup(1)), ValidationError);
}

TEST_CASE("lambda_min and lambda_max") {
  auto z4 = zmod(4);
  CHECK(lambda_min(*z4, 1).mask() == mask_of({0}));
  CHECK(lambda_max(*z4, 1).mask() == mask_of({0, 2}));
  CHECK(lambda_min(*z4, 3).mask() == mask_of({0, 2}));
  CHECK(lambda_max(*z4, 3).mask() == mask_of({0, 1, 2, 3}));

  auto z2 = zmod(2);
  CHECK(lambda_min(*z2, 1).mask() == mask_of({0}));
  CHECK(lambda_max(*z2, 1).mask() == mask_of({0, 1}));

  CHECK_THROWS_AS(lambda_min(*z4, 2), ValidationError);

  // lambda_min sits inside lambda_max for every admissible lambda
  std::vector<FiniteRingPtr> rings = {
      z2, z4, zmod(6), zmod(8),
      std::make_shared<const FiniteRing>(build_quadratic(3, 0, 1)),
      std::make_shared<const FiniteRing>(build_product_swap(2))};
  for (const auto& R : rings)
    for (Elt lam = 0; lam < R->order(); ++lam) {
      if (!R->is_central(lam) || R->mul(lam, R->conj(lam)) != R->one()) continue;
      CHECK(lambda_min(*R, lam).subset_of(lambda_max(*R, lam)));
    }
}

TEST_CASE("form parameter enumeration") {
  auto z4 = zmod(4);
  auto p1 = enumerate_form_parameters(*z4, 1);
  REQUIRE(p1.size() == 2);
  CHECK(p1[0].mask() == mask_of({0}));
  CHECK(p1[1].mask() == mask_of({0, 2}));

  auto p3 = enumerate_form_parameters(*z4, 3);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0].mask() == mask_of({0, 2}));
  CHECK(p3[1].mask() == mask_of({0, 1, 2, 3}));

  auto z2 = zmod(2);
  auto p2 = enumerate_form_parameters(*z2, 1);
  REQUIRE(p2.size() == 2);
  CHECK(p2[0].mask() == mask_of({0}));
  CHECK(p2[1].mask() == mask_of({0, 1}));

  // every member is a valid form parameter, and nothing between the bounds
  // is missing: compare with a direct subset sweep of Lambda_max
  for (auto& [Rp, lam] : std::vector<std::pair<FiniteRingPtr, Elt>>{
           {z4, 1}, {z4, 3}, {z2, 1}, {zmod(6), 1}}) {
    auto params = enumerate_form_parameters(*Rp, lam);
    for (const auto& p : params)
      CHECK(validate_form_ring(FormRing{Rp, lam, p}).empty());
    auto lo = lambda_min(*Rp, lam);
    auto hi = lambda_max(*Rp, lam);
    auto elems = hi.elements();
    REQUIRE(elems.size() <= 16);
    std::vector<AdditiveSubgroup> brute;
    for (std::uint64_t pick = 0; pick < (1ull << elems.size()); ++pick) {
      std::uint64_t mask = 0;
      for (std::size_t b = 0; b < elems.size(); ++b)
        if (pick >> b & 1) mask |= 1ull << elems[b];
      AdditiveSubgroup s(mask);
      if (!lo.subset_of(s) || !is_additive_subgroup(*Rp, s)) continue;
      if (!validate_form_ring(FormRing{Rp, lam, s}).empty()) continue;
      brute.push_back(s);
    }
    std::sort(brute.begin(), brute.end());
    CHECK(brute == params);
  }
}

TEST_CASE("relative form parameter bounds") {
  auto z4 = zmod(4);
  auto fr = make_form_ring(z4, 1, AdditiveSubgroup(mask_of({0, 2})));
  AdditiveSubgroup I(mask_of({0, 2}));

  CHECK(gamma_min(*fr, I).mask() == mask_of({0}));
  CHECK(gamma_max(*fr, I).mask() == mask_of({0, 2}));
  CHECK(gamma_min(*fr, AdditiveSubgroup(1)).mask() == mask_of({0}));
  CHECK(gamma_max(*fr, AdditiveSubgroup(1)).mask() == mask_of({0}));
  CHECK(gamma_max(*fr, AdditiveSubgroup(z4->all_mask())) == fr->Lambda);

  CHECK_THROWS_AS(gamma_min(*fr, AdditiveSubgroup(mask_of({0, 1}))), ValidationError);

  // gamma_min <= gamma_max across every involution-invariant ideal of small
  // rings and every form parameter
  std::vector<FiniteRingPtr> rings = {
      zmod(4), zmod(6), zmod(8), zmod(12), zmod(16),
      std::make_shared<const FiniteRing>(build_quadratic(2, 0, 1)),
      std::make_shared<const FiniteRing>(build_quadratic(3, 0, 1)),
      std::make_shared<const FiniteRing>(build_product_swap(2)),
      std::make_shared<const FiniteRing>(build_product_swap(3))};
  for (const auto& R : rings) {
    REQUIRE(R->order() <= 16);
    for (Elt lam = 0; lam < R->order(); ++lam) {
      if (!R->is_central(lam) || R->mul(lam, R->conj(lam)) != R->one()) continue;
      for (const auto& Lam : enumerate_form_parameters(*R, lam)) {
        FormRing fr2{R, lam, Lam};
        for (const auto& I2 : enumerate_ideals(*R))
          CHECK(gamma_min(fr2, I2).subset_of(gamma_max(fr2, I2)));
      }
    }
  }
}

TEST_CASE("form ideal axioms") {
  auto z4 = zmod(4);
  auto fr = make_form_ring(z4, 1, AdditiveSubgroup(mask_of({0, 2})));
  CHECK(is_form_ideal(*fr, {AdditiveSubgroup(mask_of({0, 2})), AdditiveSubgroup(1)}));
  CHECK(is_form_ideal(*fr, {AdditiveSubgroup(mask_of({0, 2})),
                            AdditiveSubgroup(mask_of({0, 2}))}));
  auto bad = form_ideal_violations(
      *fr, {AdditiveSubgroup(1), AdditiveSubgroup(mask_of({0, 2}))});
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().find("Gamma_max") != std::string::npos);

  CHECK(enumerate_form_ideals(*fr).size() == 4);
}

TEST_CASE("involution-invariant ideal generated by an element") {
  auto z4 = zmod(4);
  CHECK(involution_ideal(*z4, 2).mask() == mask_of({0, 2}));
  CHECK(involution_ideal(*z4, 0).mask() == mask_of({0}));
  CHECK(involution_ideal(*z4, 3).mask() == z4->all_mask());  // unit generates R

  // swap involution: the ideal of (1,0) must absorb the conjugate (0,1)
  auto ps = std::make_shared<const FiniteRing>(build_product_swap(2));
  CHECK(involution_ideal(*ps, 1).mask() == ps->all_mask());
}

TEST_CASE("form ideal defined by an element") {
  auto z4 = zmod(4);
  auto fr = make_form_ring(z4, 1, AdditiveSubgroup(mask_of({0, 2})));

  FormIdeal fi0{AdditiveSubgroup(1), AdditiveSubgroup(1)};
  FormIdeal out = gamma_of(*fr, fi0, 2);
  CHECK(out.I.mask() == mask_of({0, 2}));
  CHECK(out.Gamma.mask() == mask_of({0}));

  FormIdeal fi1{AdditiveSubgroup(mask_of({0, 2})), AdditiveSubgroup(1)};
  out = gamma_of(*fr, fi1, 2);
  CHECK(out.I.mask() == mask_of({0, 2}));
  CHECK(out.Gamma.mask() == mask_of({0, 2}));

  CHECK_THROWS_AS(gamma_of(*fr, fi0, 0), ValidationError);

  // output is a form ideal and escapes the input, for every admissible x
  auto z6 = zmod(6);
  for (auto& fr2 : {fr, make_form_ring(z6, 1, AdditiveSubgroup(mask_of({0, 3})))}) {
    for (const FormIdeal& fi : enumerate_form_ideals(*fr2))
      for (Elt x = 0; x < fr2->ring->order(); ++x) {
        bool case1 = !fi.I.contains(x);
        bool case2 = gamma_max(*fr2, fi.I).contains(x) && !fi.Gamma.contains(x);
        if (!case1 && !case2) continue;
        FormIdeal got = gamma_of(*fr2, fi, x);
        CHECK(is_form_ideal(*fr2, got));
        CHECK((!got.I.subset_of(fi.I) || !got.Gamma.subset_of(fi.Gamma)));
      }
  }
}

TEST_CASE("subring of norms") {
  auto z6 = zmod(6);
  CHECK(norm_subring(*z6, z6->center()).mask() == z6->all_mask());

  auto g3 = std::make_shared<const FiniteRing>(build_quadratic(3, 0, 1));
  CHECK(norm_subring(*g3, AdditiveSubgroup(mask_of({0, 1, 2}))).mask() ==
        mask_of({0, 1, 2}));
  CHECK(norm_subring(*g3, AdditiveSubgroup(mask_of({0}))).mask() == mask_of({0}));

  CHECK_THROWS_AS(norm_subring(*g3, AdditiveSubgroup(mask_of({0, 3}))),
                  ValidationError);  // not multiplicatively closed: x^2 = -1
}

TEST_CASE("subset machinery") {
  auto z6 = zmod(6);
  CHECK(additive_closure(*z6, mask_of({2})).mask() == mask_of({0, 2, 4}));
  CHECK(ideal_closure(*z6, mask_of({3})).mask() == mask_of({0, 3}));
  CHECK(is_two_sided_ideal(*z6, AdditiveSubgroup(mask_of({0, 3}))));
  CHECK_FALSE(is_two_sided_ideal(*z6, AdditiveSubgroup(mask_of({0, 1}))));

  auto ideals = enumerate_ideals(*z6);
  REQUIRE(ideals.size() == 4);  // {0}, (3), (2), R
  CHECK(ideals[0].mask() == mask_of({0}));
  CHECK(ideals[3].mask() == z6->all_mask());
}
