#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hu/groups.hpp"
#include "hu/rng.hpp"
#include "hu/unitary.hpp"

using namespace hu;

namespace {

std::uint64_t mask_of(std::initializer_list<int> elems) {
  std::uint64_t m = 0;
  for (int e : elems) m |= 1ull << e;
  return m;
}

FormRingPtr ring_z2(std::uint64_t lambda_mask) {
  auto z2 = std::make_shared<const FiniteRing>(build_zmod(2));
  return make_form_ring(z2, 1, AdditiveSubgroup(lambda_mask));
}

FormRingPtr ring_z4() {
  auto z4 = std::make_shared<const FiniteRing>(build_zmod(4));
  return make_form_ring(z4, 1, AdditiveSubgroup(mask_of({0, 2})));
}

UnitaryMatrix random_eu_product(const FormRingPtr& fr, int n, SplitMix64& rng,
                                int len) {
  auto gens = elementary_generators(fr, n);
  UnitaryMatrix acc = UnitaryMatrix::identity(fr, n);
  for (int k = 0; k < len; ++k) acc = acc * gens[rng.below(gens.size())];
  return acc;
}

}  // namespace

TEST_CASE("index bookkeeping") {
  CHECK(eps(3) == 1);
  CHECK(eps(-2) == -1);
  CHECK_THROWS_AS(eps(0), ValidationError);

  CHECK(omega_pos(1, 3) == 1);
  CHECK(omega_pos(-3, 3) == 4);
  CHECK(omega_pos(-1, 3) == 6);
  CHECK_THROWS_AS(omega_pos(4, 3), ValidationError);

  auto om = omega_range(3);
  CHECK(om == std::vector<int>{1, 2, 3, -3, -2, -1});
  for (int p = 1; p <= 6; ++p) CHECK(omega_pos(omega_at(p, 3), 3) == p);
}

TEST_CASE("hyperbolic forms on vectors") {
  auto fr = ring_z4();
  auto e1 = Vector2n::basis(fr, 3, 1);
  auto em1 = Vector2n::basis(fr, 3, -1);
  CHECK(form_f(e1, em1) == 1);
  CHECK(form_f(em1, e1) == 0);
  CHECK(form_h(em1, e1) == 1);  // lambda * conj(f(e1, e_-1))
  CHECK(form_h(e1, em1) == 1);
  CHECK(length_of(e1) == 0);

  auto zero = Vector2n::zero(fr, 3);
  CHECK(form_f(zero, zero) == 0);
  CHECK(form_h(zero, e1) == 0);
  CHECK(length_of(zero) == 0);
}

TEST_CASE("short root elements") {
  auto fr = ring_z4();
  CHECK(short_root(fr, 3, 1, 2, 0).is_identity());

  UnitaryMatrix t = short_root(fr, 3, 1, 2, 3);
  CHECK(t.at_omega(1, 2) == 3);
  CHECK(t.at(4, 5) == 1);  // mirrored entry at (pos(-2), pos(-1)) is -conj(3)
  for (int d = 0; d < 6; ++d) CHECK(t.at(d, d) == 1);

  UnitaryMatrix u = short_root(fr, 3, 1, -2, 3);
  CHECK(u.at_omega(1, -2) == 3);
  CHECK(u.at_omega(2, -1) == 1);  // -conj(lambda)*conj(3) = -3 = 1

  CHECK_THROWS_AS(short_root(fr, 3, 1, 1, 1), ValidationError);
  CHECK_THROWS_AS(short_root(fr, 3, 1, -1, 1), ValidationError);
}

TEST_CASE("long root elements") {
  auto fr = ring_z4();
  CHECK(long_root(fr, 3, 1, 0).is_identity());
  UnitaryMatrix t = long_root(fr, 3, 1, 2);
  CHECK(t.at(0, 5) == 2);  // (pos(1), pos(-1)) = (1, 6)
  CHECK_THROWS_AS(long_root(fr, 3, 1, 1), ValidationError);
  // at a negative index the admissible set is Gamma itself
  CHECK_NOTHROW(long_root(fr, 3, -1, 2));
}

TEST_CASE("signed basis swap") {
  auto fr = ring_z2(mask_of({0, 1}));
  const FiniteRing& R = *fr->ring;
  UnitaryMatrix p = basis_swap(fr, 3, 1, 2);
  UnitaryMatrix prod = short_root(fr, 3, 1, 2, 1) *
                       short_root(fr, 3, 2, 1, R.neg(1)) *
                       short_root(fr, 3, 1, 2, 1);
  CHECK(p == prod);
  CHECK((p * p.inverse()).is_identity());

  // conjugating by the (1,n) swap turns a matrix whose n-th row is f_n into
  // one whose first row is f_1
  UnitaryMatrix sigma = short_root(fr, 3, 1, 2, 1);
  for (int c = 0; c < 6; ++c) CHECK(sigma.at(2, c) == (c == 2 ? 1 : 0));
  UnitaryMatrix tau = sigma.conjugated_by(basis_swap(fr, 3, 1, 3));
  for (int c = 0; c < 6; ++c) CHECK(tau.at(0, c) == (c == 0 ? 1 : 0));
}

TEST_CASE("membership criteria") {
  auto sp = ring_z2(mask_of({0, 1}));
  auto orth = ring_z2(mask_of({0}));

  for (UnitaryCheck m : {UnitaryCheck::definition, UnitaryCheck::entries,
                         UnitaryCheck::blocks}) {
    CHECK(is_unitary(UnitaryMatrix::identity(sp, 3), m));
    CHECK(is_unitary(short_root(sp, 3, 1, 2, 1), m));

    // identity plus a single off-diagonal 1, without the mirrored
    // compensation, preserves nothing
    MatEntries bare = matops::identity(*orth->ring, 6);
    bare[0 * 6 + 1] = 1;
    CHECK_FALSE(is_unitary(*orth, 3, bare, m));

    MatEntries zero(36, 0);
    CHECK_THROWS_AS(is_unitary(*orth, 3, zero, m), SingularMatrixError);
  }

  CHECK_THROWS_AS(UnitaryMatrix::checked(orth, 3, MatEntries(36, 0)),
                  SingularMatrixError);
  MatEntries bare = matops::identity(*orth->ring, 6);
  bare[0 * 6 + 1] = 1;
  CHECK_THROWS_AS(UnitaryMatrix::checked(orth, 3, bare), ValidationError);
}

TEST_CASE("membership methods agree on random products and perturbations") {
  auto fr = ring_z4();
  SplitMix64 rng(2024);
  const FiniteRing& R = *fr->ring;
  for (int s = 0; s < 200; ++s) {
    UnitaryMatrix m = random_eu_product(fr, 3, rng, 1 + (int)rng.below(10));
    CHECK(is_unitary(m, UnitaryCheck::definition));
    CHECK(is_unitary(m, UnitaryCheck::entries));
    CHECK(is_unitary(m, UnitaryCheck::blocks));

    MatEntries mutated = m.entries();
    mutated[rng.below(36)] = static_cast<Elt>(rng.below(R.order()));
    int verdict = -2;
    for (UnitaryCheck method : {UnitaryCheck::definition, UnitaryCheck::entries,
                                UnitaryCheck::blocks}) {
      int v;
      try {
        v = is_unitary(*fr, 3, mutated, method) ? 1 : 0;
      } catch (const SingularMatrixError&) {
        v = -1;
      }
      if (verdict == -2) verdict = v;
      CHECK(v == verdict);
    }
  }
}

TEST_CASE("antihermitian blocks") {
  auto fr = ring_z4();
  std::vector<Elt> zero(9, 0);
  CHECK(is_antihermitian(*fr, 3, zero));
  std::vector<Elt> diag2(9, 0);
  diag2[0] = diag2[4] = diag2[8] = 2;
  CHECK(is_antihermitian(*fr, 3, diag2));
  std::vector<Elt> diag1(9, 0);
  diag1[0] = 1;
  CHECK_FALSE(is_antihermitian(*fr, 3, diag1));  // 1 is not in Lambda
}

TEST_CASE("inverse block formula") {
  auto sp = ring_z2(mask_of({0, 1}));
  CHECK(UnitaryMatrix::identity(sp, 3).inverse().is_identity());

  UnitaryMatrix t = short_root(sp, 3, 1, 2, 1);
  CHECK(t.inverse() == t);  // self-inverse in characteristic 2

  SplitMix64 rng(99);
  auto fr = ring_z4();
  for (int s = 0; s < 100; ++s) {
    UnitaryMatrix m = random_eu_product(fr, 3, rng, 1 + (int)rng.below(8));
    UnitaryMatrix inv = m.inverse();
    CHECK((m * inv).is_identity());
    CHECK((inv * m).is_identity());
  }
}

TEST_CASE("inverse entry law and unit column propagation") {
  auto fr = ring_z4();
  SplitMix64 rng(4242);
  const FiniteRing& R = *fr->ring;
  for (int s = 0; s < 100; ++s) {
    UnitaryMatrix m = random_eu_product(fr, 3, rng, 1 + (int)rng.below(8));
    UnitaryMatrix inv = m.inverse();
    for (int i : omega_range(3))
      for (int j : omega_range(3)) {
        Elt expect = R.mul(fr->lambda_pow((eps(j) - eps(i)) / 2),
                           R.conj(m.at_omega(-j, -i)));
        CHECK(inv.at_omega(i, j) == expect);
      }

    // columns of the shape x*e_k force the opposite row, and dually
    for (int k : omega_range(3)) {
      int pk = omega_pos(k, 3) - 1;
      Elt x = m.at(pk, pk);
      bool col_premise = R.is_unit(x);
      for (int r = 0; r < 6 && col_premise; ++r)
        if (r != pk && m.at(r, pk) != 0) col_premise = false;
      if (col_premise) {
        int prow = omega_pos(-k, 3) - 1;
        Elt want = R.conj(R.unit_inverse(x));
        for (int c = 0; c < 6; ++c)
          CHECK(m.at(prow, c) == (c == prow ? want : 0));
      }
      bool row_premise = R.is_unit(x);
      for (int c = 0; c < 6 && row_premise; ++c)
        if (c != pk && m.at(pk, c) != 0) row_premise = false;
      if (row_premise) {
        int pcol = omega_pos(-k, 3) - 1;
        Elt want = R.conj(R.unit_inverse(x));
        for (int r = 0; r < 6; ++r)
          CHECK(m.at(r, pcol) == (r == pcol ? want : 0));
      }
    }
  }
}

TEST_CASE("defining relations hold") {
  auto sp = ring_z2(mask_of({0, 1}));
  RelationsReport rr = verify_relations(sp, 3);
  CHECK(rr.all_ok);
  CHECK(rr.total_checked > 0);

  // additivity: T(1)T(1) = T(0) = e in characteristic 2
  CHECK((short_root(sp, 3, 1, 2, 1) * short_root(sp, 3, 1, 2, 1)).is_identity());
  // composition across a shared index
  CHECK(commutator(short_root(sp, 3, 1, 2, 1), short_root(sp, 3, 2, 3, 1)) ==
        short_root(sp, 3, 1, 3, 1));
}

TEST_CASE("quadratic reduction identity") {
  // q(u+v) = q(u) + q(v) + h(u,v) modulo Lambda; this justifies checking the
  // quadratic condition on basis vectors only
  for (auto fr : {ring_z2(mask_of({0})), ring_z2(mask_of({0, 1}))}) {
    const int dim = 6;
    const FiniteRing& R = *fr->ring;
    std::vector<Elt> u(dim, 0), v(dim, 0);
    auto as_vec = [&](const std::vector<Elt>& c) { return Vector2n{fr, 3, c}; };
    for (std::uint64_t cu = 0; cu < 64; ++cu) {
      for (int b = 0; b < dim; ++b) u[b] = (cu >> b) & 1;
      for (std::uint64_t cv = 0; cv < 64; ++cv) {
        for (int b = 0; b < dim; ++b) v[b] = (cv >> b) & 1;
        std::vector<Elt> sum(dim);
        for (int b = 0; b < dim; ++b) sum[b] = R.add(u[b], v[b]);
        Elt lhs = length_of(as_vec(sum));
        Elt rhs = R.add(R.add(length_of(as_vec(u)), length_of(as_vec(v))),
                        form_h(as_vec(u), as_vec(v)));
        CHECK(fr->Lambda.contains(R.sub(lhs, rhs)));
      }
    }
  }
  // sampled on a larger ring
  auto fr = ring_z4();
  const FiniteRing& R = *fr->ring;
  SplitMix64 rng(7);
  for (int s = 0; s < 20000; ++s) {
    std::vector<Elt> u(6), v(6), sum(6);
    for (int b = 0; b < 6; ++b) {
      u[b] = (Elt)rng.below(4);
      v[b] = (Elt)rng.below(4);
      sum[b] = R.add(u[b], v[b]);
    }
    Vector2n vu{fr, 3, u}, vv{fr, 3, v}, vs{fr, 3, sum};
    Elt lhs = length_of(vs);
    Elt rhs = R.add(R.add(length_of(vu), length_of(vv)), form_h(vu, vv));
    CHECK(fr->Lambda.contains(R.sub(lhs, rhs)));
  }
}

TEST_CASE("principal congruence membership") {
  auto fr = ring_z4();
  FormIdeal fi{AdditiveSubgroup(mask_of({0, 2})), AdditiveSubgroup(mask_of({0}))};
  CHECK(in_principal_congruence(UnitaryMatrix::identity(fr, 3), fi));
  CHECK(in_principal_congruence(short_root(fr, 3, 1, 2, 2), fi));
  CHECK_FALSE(in_principal_congruence(short_root(fr, 3, 1, 2, 1), fi));

  // a long root whose argument lies in Lambda \ Gamma passes the mod-I
  // condition but fails the length condition
  CHECK_FALSE(in_principal_congruence(long_root(fr, 3, 1, 2), fi));
  CHECK(in_principal_congruence(
      long_root(fr, 3, 1, 2),
      FormIdeal{AdditiveSubgroup(mask_of({0, 2})), AdditiveSubgroup(mask_of({0, 2}))}));

  CHECK_THROWS_AS(
      in_principal_congruence(
          UnitaryMatrix::identity(fr, 3),
          FormIdeal{AdditiveSubgroup(1), AdditiveSubgroup(mask_of({0, 2}))}),
      ValidationError);
}

TEST_CASE("level of an elementary root element") {
  auto fr = ring_z4();
  FormIdeal zero{AdditiveSubgroup(1), AdditiveSubgroup(1)};
  FormIdeal mid{AdditiveSubgroup(mask_of({0, 2})), AdditiveSubgroup(mask_of({0, 2}))};

  CHECK(is_elementary_of_level(*fr, RootKind::kShort, 1, 2, 0, zero));
  CHECK_FALSE(is_elementary_of_level(*fr, RootKind::kShort, 1, 2, 1, zero));
  CHECK(is_elementary_of_level(*fr, RootKind::kShort, 1, 2, 2, mid));
  CHECK(is_elementary_of_level(*fr, RootKind::kLong, -1, 1, 2, mid));
  CHECK_FALSE(is_elementary_of_level(*fr, RootKind::kLong, -1, 1, 2, zero));
  CHECK_THROWS_AS(is_elementary_of_level(*fr, RootKind::kShort, 1, 1, 0, zero),
                  ValidationError);
}

TEST_CASE("ideal of off-diagonal entries") {
  auto fr = ring_z4();
  CHECK(offdiag_ideal(UnitaryMatrix::identity(fr, 3)).mask() == 1);
  CHECK(offdiag_ideal(short_root(fr, 3, 1, 2, 2)).mask() == mask_of({0, 2}));

  // diagonal members have trivial off-diagonal ideal
  MatEntries d = matops::identity(*fr->ring, 6);
  d[0 * 6 + 0] = 3;
  d[5 * 6 + 5] = 3;
  UnitaryMatrix diag = UnitaryMatrix::checked(fr, 3, d);
  CHECK(offdiag_ideal(diag).mask() == 1);
}

TEST_CASE("commutator length congruences") {
  auto fr = ring_z4();
  AdditiveSubgroup I(mask_of({0, 2}));

  auto r = check_length_congruences(UnitaryMatrix::identity(fr, 3), I,
                                    {RootKind::kShort, 1, 2, 3});
  CHECK(r.ok);

  r = check_length_congruences(long_root(fr, 3, 1, 2), I, {RootKind::kShort, 1, 2, 3});
  CHECK(r.ok);
  r = check_length_congruences(long_root(fr, 3, 1, 2), I, {RootKind::kLong, -2, 2, 2});
  CHECK(r.ok);

  // random members of the congruence subgroup, random moves
  FormIdeal level{I, gamma_max(*fr, I)};
  auto gens = elementary_generators_of_level(fr, 3, level);
  SplitMix64 rng(31337);
  auto omegas = omega_range(3);
  for (int s = 0; s < 200; ++s) {
    UnitaryMatrix sigma = UnitaryMatrix::identity(fr, 3);
    int len = 1 + (int)rng.below(6);
    for (int k = 0; k < len; ++k) sigma = sigma * gens[rng.below(gens.size())];
    LengthCongruenceMove move;
    if (rng.below(2) == 0) {
      move.kind = RootKind::kShort;
      do {
        move.i = omegas[rng.below(6)];
        move.j = omegas[rng.below(6)];
      } while (move.i == move.j || move.i == -move.j);
      move.arg = (Elt)rng.below(4);
    } else {
      move.kind = RootKind::kLong;
      move.i = omegas[rng.below(6)];
      auto adm = fr->long_root_set(move.i).elements();
      move.arg = adm[rng.below(adm.size())];
    }
    auto rr = check_length_congruences(sigma, I, move);
    CHECK(rr.ok);
  }

  // matrices outside the congruence subgroup are rejected
  CHECK_THROWS_AS(check_length_congruences(short_root(fr, 3, 1, 2, 1), I,
                                           {RootKind::kShort, 1, 2, 1}),
                  ValidationError);
}

TEST_CASE("basis convention conversion") {
  auto fr = ring_z4();
  MatEntries id = matops::identity(*fr->ring, 6);
  CHECK(convert_basis(3, id) == id);

  SplitMix64 rng(5);
  MatEntries m(36);
  for (auto& e : m) e = (Elt)rng.below(4);
  CHECK(convert_basis(3, convert_basis(3, m)) == m);

  // a lone upper-right block entry lands mirrored within its block
  MatEntries b(36, 0);
  b[0 * 6 + 3] = 1;  // block position (1,1) of the upper-right block
  MatEntries conv = convert_basis(3, b);
  MatEntries expect(36, 0);
  expect[0 * 6 + 5] = 1;  // column mirrored by p
  CHECK(conv == expect);
}
