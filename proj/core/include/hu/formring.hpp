#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hu/errors.hpp"

namespace hu {

// Element of a FiniteRing, as an index into its operation tables.
using Elt = int;

// Rings are dense-table objects; the cap keeps every exhaustive axiom sweep
// trivially fast and lets subsets live in one 64-bit mask.
inline constexpr int kMaxRingOrder = 64;

// A subset of a ring's elements that is closed under addition and negation
// and contains zero. Stored as a bitmask over element indices.
class AdditiveSubgroup {
public:
  AdditiveSubgroup() = default;
  explicit AdditiveSubgroup(std::uint64_t mask) : mask_(mask) {}

  std::uint64_t mask() const { return mask_; }
  bool contains(Elt e) const { return e >= 0 && e < 64 && (mask_ >> e & 1); }
  bool subset_of(const AdditiveSubgroup& o) const { return (mask_ & ~o.mask_) == 0; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }

  AdditiveSubgroup intersect(const AdditiveSubgroup& o) const {
    return AdditiveSubgroup(mask_ & o.mask_);
  }

  std::vector<Elt> elements() const {
    std::vector<Elt> out;
    for (Elt e = 0; e < 64; ++e)
      if (mask_ >> e & 1) out.push_back(e);
    return out;
  }

  friend bool operator==(const AdditiveSubgroup&, const AdditiveSubgroup&) = default;
  friend bool operator<(const AdditiveSubgroup& a, const AdditiveSubgroup& b) {
    return a.mask_ < b.mask_;
  }

  std::string to_string() const;

private:
  std::uint64_t mask_ = 0;
};

/// A finite associative unital ring with involution, given by dense
/// operation tables over element indices 0..order-1. All ring and involution
/// axioms are checked exhaustively at construction.
class FiniteRing {
public:
  FiniteRing(int order, std::vector<Elt> add_table, std::vector<Elt> mul_table,
             std::vector<Elt> inv_table, Elt zero, Elt one,
             std::vector<std::string> names = {});

  int order() const { return order_; }
  Elt zero() const { return zero_; }
  Elt one() const { return one_; }

  Elt add(Elt a, Elt b) const { return add_[a * order_ + b]; }
  Elt mul(Elt a, Elt b) const { return mul_[a * order_ + b]; }
  Elt conj(Elt a) const { return inv_[a]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt sub(Elt a, Elt b) const { return add(a, neg_[b]); }

  bool is_unit(Elt a) const { return unit_inverse_[a] >= 0; }
  // Two-sided multiplicative inverse; throws if `a` is not a unit.
  Elt unit_inverse(Elt a) const;

  bool is_central(Elt a) const { return (center_mask_ >> a & 1) != 0; }
  AdditiveSubgroup center() const { return AdditiveSubgroup(center_mask_); }
  std::uint64_t all_mask() const {
    return order_ == 64 ? ~0ull : ((1ull << order_) - 1);
  }
  bool is_commutative() const { return commutative_; }

  const std::string& name(Elt a) const { return names_[a]; }
  std::string describe(const AdditiveSubgroup& s) const;

  bool valid_element(Elt a) const { return a >= 0 && a < order_; }

private:
  void validate() const;
  int order_;
  std::vector<Elt> add_, mul_, inv_, neg_;
  Elt zero_, one_;
  std::vector<Elt> unit_inverse_;  // -1 when not a unit
  std::uint64_t center_mask_;
  bool commutative_;
  std::vector<std::string> names_;
};

using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

// --- ring constructors -------------------------------------------------

// Z/m with the identity involution, 2 <= m <= 64.
FiniteRing build_zmod(int m);

// (Z/m)[x]/(x^2 + b x + c) with conjugation x -> -b-x. Order m^2 <= 64.
FiniteRing build_quadratic(int m, int b, int c);

// Z/m x Z/m with the swap involution (a,b) -> (b,a), 2 <= m <= 8.
FiniteRing build_product_swap(int m);

// --- subset machinery ---------------------------------------------------

// Smallest additive subgroup containing `seeds`.
AdditiveSubgroup additive_closure(const FiniteRing& R, std::uint64_t seeds);

// Smallest two-sided ideal containing `seeds`.
AdditiveSubgroup ideal_closure(const FiniteRing& R, std::uint64_t seeds);

bool is_additive_subgroup(const FiniteRing& R, const AdditiveSubgroup& s);
bool is_two_sided_ideal(const FiniteRing& R, const AdditiveSubgroup& s);
bool is_involution_invariant(const FiniteRing& R, const AdditiveSubgroup& s);

// All additive subgroups S with lower <= S <= upper (bounds inclusive),
// ascending by mask. Walks the subgroup lattice by single-element extensions.
std::vector<AdditiveSubgroup> subgroups_between(const FiniteRing& R,
                                                const AdditiveSubgroup& lower,
                                                const AdditiveSubgroup& upper);

// All involution-invariant two-sided ideals, ascending by mask.
std::vector<AdditiveSubgroup> enumerate_ideals(const FiniteRing& R);

// {s*x : x in S} for central s; the image is again an additive subgroup.
AdditiveSubgroup scale_subgroup(const FiniteRing& R, Elt s, const AdditiveSubgroup& S);

// --- form rings ----------------------------------------------------------

struct FormRing;
using FormRingPtr = std::shared_ptr<const FormRing>;

/// A ring with involution together with a central unit lambda satisfying
/// lambda * conj(lambda) = 1 and a form parameter Lambda.
struct FormRing {
  FiniteRingPtr ring;
  Elt lambda = 0;
  AdditiveSubgroup Lambda;

  const FiniteRing& R() const { return *ring; }
  Elt lambda_bar() const { return ring->conj(lambda); }
  // lambda^e for the only exponents that ever arise; lambda^-1 == conj(lambda).
  Elt lambda_pow(int e) const;
  // Admissible long-root arguments at Omega index i: lambda^{-(eps(i)+1)/2} Lambda.
  AdditiveSubgroup long_root_set(int i) const;
};

// True when both values denote the same context (same ring tables, same
// lambda, same Lambda).
bool same_context(const FormRingPtr& a, const FormRingPtr& b);

// Every violated axiom, one line each; empty means the form ring is valid.
std::vector<std::string> validate_form_ring(const FormRing& fr);

// Validating constructor: throws ValidationError listing the first violation.
FormRingPtr make_form_ring(FiniteRingPtr ring, Elt lambda, AdditiveSubgroup Lambda);

// {r - lambda*conj(r) : r in R}. Throws if lambda is not a central unit with
// lambda*conj(lambda) = 1.
AdditiveSubgroup lambda_min(const FiniteRing& R, Elt lambda);

// {r in R : r = -lambda*conj(r)}.
AdditiveSubgroup lambda_max(const FiniteRing& R, Elt lambda);

// All form parameters for (R, lambda), ascending by mask.
std::vector<AdditiveSubgroup> enumerate_form_parameters(const FiniteRing& R, Elt lambda);

/// An involution-invariant ideal I together with a relative form parameter
/// Gamma of level I.
struct FormIdeal {
  AdditiveSubgroup I;
  AdditiveSubgroup Gamma;
  friend bool operator==(const FormIdeal&, const FormIdeal&) = default;
};

// {xi - lambda*conj(xi) : xi in I} + <{zeta*alpha*conj(zeta) : zeta in I,
// alpha in Lambda}>, as an additive subgroup. Throws if I is not an
// involution-invariant ideal.
AdditiveSubgroup gamma_min(const FormRing& fr, const AdditiveSubgroup& I);

// I intersect Lambda.
AdditiveSubgroup gamma_max(const FormRing& fr, const AdditiveSubgroup& I);

// All axioms of a form ideal; empty report means valid.
std::vector<std::string> form_ideal_violations(const FormRing& fr, const FormIdeal& fi);
bool is_form_ideal(const FormRing& fr, const FormIdeal& fi);

// All form ideals of fr, ordered by (I mask, Gamma mask).
std::vector<FormIdeal> enumerate_form_ideals(const FormRing& fr);

// Smallest two-sided ideal containing {x, conj(x)}.
AdditiveSubgroup involution_ideal(const FiniteRing& R, Elt x);

// The form ideal (RxR, Gamma(x)) defined by x relative to (I, Gamma):
// Gamma(x) = gamma_min(RxR) when x lies outside I, and additionally absorbs
// <{y*x*conj(y) : y in R}> when x lies in gamma_max(I) \ Gamma. Throws when x
// satisfies neither case.
FormIdeal gamma_of(const FormRing& fr, const FormIdeal& fi, Elt x);

// Subring generated additively by {c*conj(c), -c*conj(c) : c in Cprime}.
// Cprime must be a central subset closed under add/neg/mul and containing 0.
AdditiveSubgroup norm_subring(const FiniteRing& R, const AdditiveSubgroup& Cprime);

}  // namespace hu
