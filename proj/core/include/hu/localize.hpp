#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hu/groups.hpp"

namespace hu {

// A central multiplicative subset: closed under multiplication, contains 1,
// excludes 0.
struct MultiplicativeSet {
  std::uint64_t mask = 0;
  bool contains(Elt e) const { return e >= 0 && e < 64 && (mask >> e & 1); }
  std::vector<Elt> elements() const { return AdditiveSubgroup(mask).elements(); }
};

MultiplicativeSet make_multiplicative_set(const FiniteRing& R, std::uint64_t mask);

// Maximal ideals of the commutative subring C (a unital central subring of R,
// given as a subset mask): proper C-ideals maximal in the ideal lattice of C.
std::vector<AdditiveSubgroup> maximal_ideals(const FiniteRing& R,
                                             const AdditiveSubgroup& C);

/// S^{-1}R as an explicit pair-class quotient: (r,s) ~ (r',s') iff
/// t(rs' - r's) = 0 for some t in S. The class ring is a FiniteRing again,
/// with involution [r/s] -> [conj(r)/s] (S is involution-fixed since it
/// consists of norms).
class LocalizedRing {
public:
  LocalizedRing(FiniteRingPtr base, MultiplicativeSet S);

  const FiniteRingPtr& base() const { return base_; }
  const FiniteRingPtr& ring() const { return ring_; }
  const MultiplicativeSet& mult_set() const { return S_; }

  // The localization map r -> r/1 (a verified ring homomorphism).
  Elt map(Elt r) const { return class_of(r, base_->one()); }
  Elt class_of(Elt numer, Elt denom) const;

  // S^{-1}X = {x/s : x in X, s in S}.
  AdditiveSubgroup map_subgroup(const AdditiveSubgroup& X) const;
  // Entrywise image of a matrix.
  MatEntries map_matrix(const MatEntries& m) const;
  // (R_m, lambda_m, Lambda_m); validated as a form ring.
  FormRingPtr map_form_ring(const FormRing& fr) const;

private:
  FiniteRingPtr base_;
  MultiplicativeSet S_;
  FiniteRingPtr ring_;
  std::vector<Elt> pair_class_;  // (r, s-index) -> class
  std::vector<Elt> s_list_;      // dense index -> element of S
  std::vector<Elt> s_index_;     // element -> dense index or -1
};

// (I_m, Gamma_m): the localized images of I and Gamma.
FormIdeal localized_level(const FormIdeal& fi, const LocalizedRing& L);

// One instance of the congruence-compatibility square: for c in the principal
// congruence subgroup of level (I,Gamma), the image of sigma*c and the image
// of sigma agree modulo the localized principal congruence subgroup, i.e.
// F(c) lands in U((I_m, Gamma_m)) and F(sigma c) = F(sigma) F(c) entrywise.
bool check_commuting_square(const LocalizedRing& L, const FormRingPtr& base_fr,
                            int n, const FormIdeal& fi, const UnitaryMatrix& sigma,
                            const UnitaryMatrix& c);

struct NoncentralWitness {
  AdditiveSubgroup m;       // maximal ideal of C
  UnitaryMatrix partner;    // localized non-commuting partner comes from this
};

// A maximal ideal m of C with I^C inside m such that the localized class of g
// stays noncentral, certified by a generator whose localized commutator with
// g escapes U((I_m, Gamma_m)). Throws when g is already central (no witness
// exists) or when no maximal ideal works (a theorem-violation finding).
NoncentralWitness find_noncentral_witness(const FormRingPtr& fr, int n,
                                          const UnitaryMatrix& g, const FormIdeal& fi,
                                          const std::vector<UnitaryMatrix>& U_gens,
                                          const AdditiveSubgroup& C);

// Smallest s0 in S with the two saturation properties: for x in s0*R,
// t*x in I for some t in S forces x in I, and likewise with Gamma. Existence
// is guaranteed over finite rings; failure throws as a theorem violation.
Elt find_saturator(const FiniteRing& R, const MultiplicativeSet& S,
                   const AdditiveSubgroup& I, const AdditiveSubgroup& Gamma);

struct InjectivityReport {
  long long pairs = 0;
  long long failures = 0;
  bool hypothesis_ok = true;  // false when the supplied s0 lacks the properties
  std::string witness;
};

// Injectivity of the localized comparison on classes of U((s0 R, s0 Lambda)):
// for sampled g1, g2 there, F(g1^-1 g2) in U((I_m, Gamma_m)) must force
// g1^-1 g2 in U((I, Gamma)). A bad s0 is reported as a hypothesis failure,
// not a conclusion failure.
InjectivityReport check_localization_injectivity(const FormRingPtr& fr, int n,
                                                 const LocalizedRing& L,
                                                 const FormIdeal& fi, Elt s0,
                                                 int samples, std::uint64_t seed);

struct SupplementedBaseReport {
  bool ok = true;
  long long checked = 0;
  std::vector<std::string> failures;
};

// Checks the supplemented-base conditions for explicit finite families:
// (1) every two A-members contain a common A-member in their intersection;
// (2) for every supplied group generator g and A-member U there is an
//     A-member V with gVg^-1 inside U;
// (3) every B-member sits inside some A-member;
// (4) every (A-member, B-member) intersection contains a B-member.
SupplementedBaseReport check_supplemented_base(
    const std::vector<FiniteSubgroup>& A, const std::vector<FiniteSubgroup>& B,
    const std::vector<UnitaryMatrix>& group_gens);

}  // namespace hu
