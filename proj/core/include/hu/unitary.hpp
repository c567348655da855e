#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hu/formring.hpp"

namespace hu {

// Row-major (2n)x(2n) entry list over a FiniteRing.
using MatEntries = std::vector<Elt>;

// Omega indices run over {1..n, -n..-1}; zero is invalid.
int eps(int i);                      // +1 on the positive side, -1 on the negative
int omega_pos(int i, int n);         // 1-based matrix position: i>0 -> i, i<0 -> 2n+1+i
int omega_at(int pos, int n);        // inverse of omega_pos
std::vector<int> omega_range(int n); // 1,...,n,-n,...,-1 in matrix-position order

/// A coordinate vector of length 2n over a form ring, positions ordered by
/// the hyperbolic basis (e_1..e_n, e_{-n}..e_{-1}).
struct Vector2n {
  FormRingPtr ctx;
  int n = 0;
  std::vector<Elt> coords;

  static Vector2n zero(FormRingPtr ctx, int n);
  static Vector2n basis(FormRingPtr ctx, int n, int i);  // e_i for i in Omega
};

// f(v,w) = sum conj(v_k) w_{-k} over k=1..n.
Elt form_f(const Vector2n& v, const Vector2n& w);
// h(v,w) = f(v,w) + lambda * conj(f(w,v)).
Elt form_h(const Vector2n& v, const Vector2n& w);
// |v| = f(v,v); quadratic statements about v are membership queries on this.
Elt length_of(const Vector2n& v);

// |column j of sigma| = sum_{i=1..n} conj(sigma_{i,j}) sigma_{-i,j}, j in Omega.
Elt column_length(const FormRing& fr, int n, const MatEntries& m, int j);

class UnitaryMatrix;

UnitaryMatrix commutator(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// An element of the hyperbolic unitary group U_{2n}(R, Lambda). Values built
/// through the checked constructors satisfy the membership criterion; products,
/// inverses and conjugates of members stay members.
class UnitaryMatrix {
public:
  static UnitaryMatrix identity(FormRingPtr ctx, int n);
  // Validates membership (entries criterion); throws SingularMatrixError or
  // ValidationError for non-members.
  static UnitaryMatrix checked(FormRingPtr ctx, int n, MatEntries entries);
  // Trusted path for values already known to be members (decoded subgroup
  // elements, products formed internally).
  static UnitaryMatrix unchecked(FormRingPtr ctx, int n, MatEntries entries);

  const FormRingPtr& context() const { return ctx_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const MatEntries& entries() const { return e_; }

  Elt at(int row, int col) const { return e_[row * 2 * n_ + col]; }  // 0-based
  Elt at_omega(int i, int j) const {
    return e_[(omega_pos(i, n_) - 1) * 2 * n_ + (omega_pos(j, n_) - 1)];
  }

  bool is_identity() const;
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;
  // Inverse through the block formula (pd*p, conj(lambda) pb*p / lambda pc*p,
  // pa*p), verified by one multiplication; throws if that fails.
  UnitaryMatrix inverse() const;
  UnitaryMatrix conjugated_by(const UnitaryMatrix& g) const;  // g * this * g^-1

  Vector2n column(int j) const;  // j in Omega
  std::string to_string() const;

  friend bool operator==(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

private:
  UnitaryMatrix(FormRingPtr ctx, int n, MatEntries e)
      : ctx_(std::move(ctx)), n_(n), e_(std::move(e)) {}
  FormRingPtr ctx_;
  int n_;
  MatEntries e_;
};

enum class UnitaryCheck { definition, entries, blocks };

// Membership test for the hyperbolic unitary group. All three methods agree
// on invertible input; singular input raises SingularMatrixError instead of
// returning false. The definition method checks h on all basis pairs and the
// quadratic condition on basis vectors, plus an exhaustive sweep of the
// quadratic condition over all of R^{2n} whenever |R|^{2n} <= 10^6.
bool is_unitary(const FormRing& fr, int n, const MatEntries& m, UnitaryCheck method);
bool is_unitary(const UnitaryMatrix& sigma, UnitaryCheck method);

// True when the matrix is invertible over the ring (additive kernel test by
// meet-in-the-middle; throws CapExceededError past ~10^6 half-space vectors).
bool is_invertible(const FiniteRing& R, int dim, const MatEntries& m);

// a in M_n(R) with a = -lambda * a^* and diagonal entries in Lambda.
bool is_antihermitian(const FormRing& fr, int n, const std::vector<Elt>& a);

// Elementary short root element T_ij(xi) = e + xi e^{ij}
// - lambda^{(eps(j)-eps(i))/2} conj(xi) e^{-j,-i}; requires i != +-j.
UnitaryMatrix short_root(FormRingPtr ctx, int n, int i, int j, Elt xi);

// Elementary long root element T_{i,-i}(alpha) = e + alpha e^{i,-i};
// requires alpha in lambda^{-(eps(i)+1)/2} Lambda.
UnitaryMatrix long_root(FormRingPtr ctx, int n, int i, Elt alpha);

// The signed basis swap built from unit short roots; the explicit entry
// formula is compared against T_ij(1) T_ji(-1) T_ij(1) and a mismatch throws.
UnitaryMatrix basis_swap(FormRingPtr ctx, int n, int i, int j);

struct RelationCheck {
  std::string name;
  long long checked = 0;
  long long failures = 0;
  std::string witness;  // first failing instance, if any
};

struct RelationsReport {
  std::vector<RelationCheck> relations;
  long long total_checked = 0;
  bool all_ok = true;
};

// Sweeps the six defining relations of the elementary root elements over
// every admissible index tuple. Ring arguments are exhaustive when
// |R| <= exhaustive_order_cap, otherwise sampled with the given seed.
RelationsReport verify_relations(const FormRingPtr& ctx, int n,
                                 int exhaustive_order_cap = 16,
                                 std::uint64_t sample_seed = 1,
                                 long long samples_per_relation = 5000);

// sigma == e mod I (entrywise) and every column length lies in Gamma.
bool in_principal_congruence(const UnitaryMatrix& sigma, const FormIdeal& fi);
// Same predicate without revalidating fi; for callers filtering many matrices
// against one already-validated form ideal.
bool in_principal_congruence_unchecked(const UnitaryMatrix& sigma, const FormIdeal& fi);

enum class RootKind { kShort, kLong };

// Level test for an elementary root element: short needs xi in I, long needs
// xi in lambda^{-(eps(i)+1)/2} Gamma.
bool is_elementary_of_level(const FormRing& fr, RootKind kind, int i, int j,
                            Elt xi, const FormIdeal& fi);

// Involution-closed two-sided ideal generated by the off-diagonal entries of
// sigma and sigma^-1.
AdditiveSubgroup offdiag_ideal(const UnitaryMatrix& sigma);

struct LengthCongruenceMove {
  RootKind kind;
  int i = 0;
  int j = 0;   // ignored for long moves
  Elt arg = 0; // xi (any ring element) for short, y (admissible) for long
};

struct LengthCongruenceReport {
  bool ok = true;
  std::vector<std::string> failures;
  long long checked = 0;
};

// For sigma in the principal congruence subgroup of level (I, I ^ Lambda),
// forms the commutator with the given root element and verifies every column
// length congruence modulo gamma_min(I): untouched columns land in
// gamma_min(I); column j picks up conj(x)|sigma_{*i}|x; column -i picks up
// x|sigma_{*,-j}|conj(x) (short), resp. conj(y)|sigma_{*i}|y (long).
LengthCongruenceReport check_length_congruences(const UnitaryMatrix& sigma,
                                                const AdditiveSubgroup& I,
                                                const LengthCongruenceMove& move);

// Reindex between the (e_1..e_n, e_{-1}..e_{-n}) basis convention and the
// (e_1..e_n, e_{-n}..e_{-1}) one used here: (a b / c d) <-> (a bp / pc pdp).
// Involutive.
MatEntries convert_basis(int n, const MatEntries& m);

// --- low-level helpers shared by groups/localize -------------------------

namespace matops {

MatEntries identity(const FiniteRing& R, int dim);
void mul(const FiniteRing& R, int dim, const MatEntries& a, const MatEntries& b,
         MatEntries& out);
MatEntries mul(const FiniteRing& R, int dim, const MatEntries& a, const MatEntries& b);
bool is_identity(const FiniteRing& R, int dim, const MatEntries& a);
// Candidate inverse from the twisted-transpose entry law; equals the inverse
// exactly on unitary matrices.
MatEntries unitary_inverse_candidate(const FormRing& fr, int n, const MatEntries& m);

}  // namespace matops

}  // namespace hu
