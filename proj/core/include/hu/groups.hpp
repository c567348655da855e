#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hu/unitary.hpp"

namespace hu {

// Canonical matrix encoding: row-major entries bit-packed into 64-bit words,
// bit_width(order-1) bits per entry. 256 bits cover every desk-scale
// configuration (order <= 64 at n = 3, order <= 16 at n = 4, Z/2 up to n = 6).
struct MatKey {
  std::array<std::uint64_t, 4> w{};
  friend bool operator==(const MatKey&, const MatKey&) = default;
  friend auto operator<=>(const MatKey&, const MatKey&) = default;
};

struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::uint64_t v : k.w) {
      h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

class MatrixCodec {
public:
  MatrixCodec(int ring_order, int dim);
  MatKey encode(const MatEntries& m) const;
  MatEntries decode(const MatKey& k) const;
  int dim() const { return dim_; }

private:
  int dim_;
  int bits_;
};

/// An explicitly enumerated subgroup of U_{2n}(R, Lambda): a sorted vector of
/// canonical encodings (shared, immutable) plus a designated generating set.
class FiniteSubgroup {
public:
  using KeysPtr = std::shared_ptr<const std::vector<MatKey>>;

  FiniteSubgroup(FormRingPtr ctx, int n, KeysPtr sorted_keys,
                 std::vector<UnitaryMatrix> generators);
  static FiniteSubgroup trivial(FormRingPtr ctx, int n);

  const FormRingPtr& context() const { return ctx_; }
  int n() const { return n_; }
  std::size_t size() const { return keys_->size(); }
  const std::vector<MatKey>& keys() const { return *keys_; }
  const KeysPtr& keys_ptr() const { return keys_; }
  const MatrixCodec& codec() const { return codec_; }
  const std::vector<UnitaryMatrix>& generators() const { return gens_; }

  bool contains_key(const MatKey& k) const;
  bool contains(const UnitaryMatrix& m) const;
  UnitaryMatrix element(std::size_t idx) const;

  bool subset_of(const FiniteSubgroup& other) const;
  bool same_elements(const FiniteSubgroup& other) const;

  // Same elements, different designated generating set.
  FiniteSubgroup with_generators(std::vector<UnitaryMatrix> gens) const;

private:
  FormRingPtr ctx_;
  int n_;
  MatrixCodec codec_;
  KeysPtr keys_;
  std::vector<UnitaryMatrix> gens_;
};

// Product/inverse closure of the generators (BFS; finite, so right products
// suffice). Deterministic: the element list is sorted. Throws CapExceededError
// past `cap` elements. When `ambient` is a known supergroup containing every
// generator, the search stops as soon as more than half of it is reached --
// by Lagrange the closure then equals `ambient` and its element list is
// shared instead of rebuilt.
FiniteSubgroup closure(FormRingPtr ctx, int n, std::vector<UnitaryMatrix> gens,
                       std::size_t cap, const FiniteSubgroup* ambient = nullptr);

// Smallest subgroup containing the seeds and stable under conjugation by the
// normalizer generators (and hence by the group they generate).
FiniteSubgroup normal_closure(FormRingPtr ctx, int n,
                              std::vector<UnitaryMatrix> seeds,
                              const std::vector<UnitaryMatrix>& normalizer_gens,
                              std::size_t cap,
                              const FiniteSubgroup* ambient = nullptr);

// All elementary root elements with nonzero argument.
std::vector<UnitaryMatrix> elementary_generators(const FormRingPtr& ctx, int n);
// The (I, Gamma)-elementary ones.
std::vector<UnitaryMatrix> elementary_generators_of_level(const FormRingPtr& ctx,
                                                          int n, const FormIdeal& fi);

inline constexpr std::size_t kDefaultCap = 5'000'000;

// EU_{2n}(R, Lambda).
FiniteSubgroup elementary_group(const FormRingPtr& ctx, int n,
                                std::size_t cap = kDefaultCap,
                                const FiniteSubgroup* ambient = nullptr);
// Preelementary subgroup of level (I, Gamma): generated by level elements.
FiniteSubgroup preelementary_subgroup(const FormRingPtr& ctx, int n,
                                      const FormIdeal& fi,
                                      std::size_t cap = kDefaultCap);
// Elementary subgroup of level (I, Gamma): normal closure of the above in EU.
FiniteSubgroup relative_elementary_subgroup(const FormRingPtr& ctx, int n,
                                            const FormIdeal& fi,
                                            std::size_t cap = kDefaultCap,
                                            const FiniteSubgroup* ambient = nullptr);

// The full hyperbolic unitary group by column backtracking: columns are
// chosen left to right subject to the pairwise h-constraints against the
// already-fixed columns and the per-column length constraint, with the block
// membership test as final filter. Includes a small deterministic generating
// set. Throws CapExceededError when results exceed `cap` or the candidate
// space is infeasible.
FiniteSubgroup enumerate_unitary_group(const FormRingPtr& ctx, int n,
                                       std::size_t cap = kDefaultCap);

// Small generating set of an enumerated subgroup (seeded probe + closure;
// deterministic). Empty for the trivial group.
std::vector<UnitaryMatrix> generating_set(const FiniteSubgroup& H);

// Filter of U by the principal congruence condition; spot-checks normality
// in U by sampled conjugations.
FiniteSubgroup principal_congruence_subgroup(const FormIdeal& fi,
                                             const FiniteSubgroup& U);

// sigma central modulo the principal congruence subgroup: [sigma, tau] lands
// in U((I,Gamma)) for every tau in a generating set of U. Throws
// ValidationError("necessary-condition mode required") when U_gens is empty.
bool in_full_congruence(const UnitaryMatrix& sigma, const FormIdeal& fi,
                        const std::vector<UnitaryMatrix>& U_gens);

// CU_{2n}((R,Lambda),(I,Gamma)) as an explicit subgroup of the enumerated U.
FiniteSubgroup full_congruence_subgroup(const FormIdeal& fi, const FiniteSubgroup& U,
                                        const std::vector<UnitaryMatrix>& U_gens);

struct Level {
  FormIdeal fi;
  bool is_form_ideal = false;
  std::vector<std::string> violations;
};

// (I, Gamma) with I = {x : T_12(x) in H} and Gamma = {y in Lambda :
// T_{-1,1}(y) in H}; a form ideal whenever H is E-normal, raw sets with a
// validity flag otherwise.
Level level_of(const FiniteSubgroup& H);

// Conjugation of every H-generator by every elementary generator stays in H.
bool is_E_normal(const FiniteSubgroup& H);

// [A, B]: generated by generator commutators, closed under conjugation by
// the generators of both sides.
FiniteSubgroup commutator_subgroup(const FiniteSubgroup& A, const FiniteSubgroup& B,
                                   std::size_t cap = kDefaultCap,
                                   const FiniteSubgroup* ambient = nullptr);

struct PivotSearch {
  bool found = false;
  std::vector<UnitaryMatrix> word;  // conjugators in application order
  std::optional<UnitaryMatrix> result;
  std::size_t explored = 0;
};

// BFS over conjugation by elementary generators until the (1,1) entry is a
// unit. Throws CapExceededError when `cap` states are exhausted first.
PivotSearch make_pivot_invertible(const UnitaryMatrix& sigma, std::size_t cap);

// Seeded test-case generator: each sample is the normal closure under EU of
// 1-3 uniformly chosen elements of U. Deterministic for a fixed seed.
std::vector<FiniteSubgroup> sample_E_normal(std::uint64_t seed, int count,
                                            const FiniteSubgroup& U,
                                            std::size_t cap = kDefaultCap);

// Precomputed per-configuration data for sandwich verification.
struct SandwichLevelData {
  FormIdeal fi;
  FiniteSubgroup rel;   // elementary subgroup of level fi
  FiniteSubgroup pcs;   // principal congruence subgroup
  FiniteSubgroup cu;    // full congruence subgroup
};

struct SandwichContext {
  FormRingPtr ctx;
  int n = 0;
  FiniteSubgroup U;
  std::vector<UnitaryMatrix> U_gens;
  std::vector<UnitaryMatrix> elem_gens;
  std::vector<SandwichLevelData> levels;

  static SandwichContext build(FormRingPtr ctx, int n, std::size_t cap = kDefaultCap);
  const SandwichLevelData& data_for(const FormIdeal& fi) const;
};

struct SandwichReport {
  Level level;
  bool lower_ok = false;        // EU((R,Lambda),(I,Gamma)) <= H
  bool upper_ok = false;        // H <= CU((R,Lambda),(I,Gamma))
  int matching_levels = 0;      // form ideals sandwiching H; must be exactly 1
  bool unique = false;
  bool ok = false;
  std::vector<std::string> notes;
};

// Level computation plus both inclusions plus the uniqueness sweep over all
// form ideals of the configuration.
SandwichReport sandwich_check(const FiniteSubgroup& H, const SandwichContext& sc);

// One-sided variant for configurations without an enumerated U: the upper
// inclusion is tested against elementary generators only.
SandwichReport sandwich_check_necessary(const FiniteSubgroup& H, std::size_t cap);

}  // namespace hu
