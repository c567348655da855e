#include "hu/localize.hpp"

#include <algorithm>
#include <numeric>

#include "hu/rng.hpp"

namespace hu {

MultiplicativeSet make_multiplicative_set(const FiniteRing& R, std::uint64_t mask) {
  MultiplicativeSet S{mask};
  if (!S.contains(R.one())) throw ValidationError("multiplicative set must contain 1");
  if (S.contains(R.zero())) throw ValidationError("multiplicative set must exclude 0");
  for (Elt s : S.elements()) {
    if (s >= R.order()) throw ValidationError("multiplicative set element out of range");
    if (!R.is_central(s)) throw ValidationError("multiplicative set must be central");
    if (!S.contains(R.conj(s)))
      throw ValidationError("multiplicative set must be involution-invariant");
    for (Elt t : S.elements())
      if (!S.contains(R.mul(s, t)))
        throw ValidationError("multiplicative set is not multiplicatively closed");
  }
  return S;
}

std::vector<AdditiveSubgroup> maximal_ideals(const FiniteRing& R,
                                             const AdditiveSubgroup& C) {
  if (!C.contains(R.one()))
    throw ValidationError("subring C must contain 1");
  for (Elt c : C.elements())
    if (c >= R.order() || !R.is_central(c))
      throw ValidationError("subring C must be central");
  if (!is_additive_subgroup(R, C))
    throw ValidationError("subring C must be additively closed");
  for (Elt a : C.elements())
    for (Elt b : C.elements())
      if (!C.contains(R.mul(a, b)))
        throw ValidationError("subring C must be multiplicatively closed");

  // ideals of C: additive subgroups of C absorbing multiplication by C
  std::vector<AdditiveSubgroup> ideals;
  AdditiveSubgroup zero(1ull << R.zero());
  for (const AdditiveSubgroup& s : subgroups_between(R, zero, C)) {
    bool absorbs = true;
    for (Elt a : s.elements()) {
      for (Elt c : C.elements())
        if (!s.contains(R.mul(c, a))) {
          absorbs = false;
          break;
        }
      if (!absorbs) break;
    }
    if (absorbs) ideals.push_back(s);
  }
  std::vector<AdditiveSubgroup> out;
  for (const AdditiveSubgroup& m : ideals) {
    if (m == C) continue;
    bool maximal = true;
    for (const AdditiveSubgroup& other : ideals)
      if (!(other == C) && !(other == m) && m.subset_of(other)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- LocalizedRing -----------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

LocalizedRing::LocalizedRing(FiniteRingPtr base, MultiplicativeSet S)
    : base_(std::move(base)), S_(S) {
  const FiniteRing& R = *base_;
  S_ = make_multiplicative_set(R, S.mask);
  s_list_ = S_.elements();
  s_index_.assign(R.order(), -1);
  for (std::size_t i = 0; i < s_list_.size(); ++i) s_index_[s_list_[i]] = static_cast<Elt>(i);

  const int ns = static_cast<int>(s_list_.size());
  const int npairs = R.order() * ns;
  auto pid = [&](Elt r, int si) { return r * ns + si; };

  // pairs (r,s) and (tr,ts) are one class for every t in S; two t-scaled
  // pairs with equal cross products are one class (witness t^2)
  UnionFind uf(npairs);
  for (Elt r = 0; r < R.order(); ++r)
    for (int si = 0; si < ns; ++si)
      for (Elt t : s_list_)
        uf.unite(pid(r, si), pid(R.mul(t, r), s_index_[R.mul(t, s_list_[si])]));
  for (int p = 0; p < npairs; ++p) {
    Elt r1 = p / ns, s1 = s_list_[p % ns];
    for (int q = p + 1; q < npairs; ++q) {
      Elt r2 = q / ns, s2 = s_list_[q % ns];
      if (R.mul(r1, s2) == R.mul(r2, s1)) uf.unite(p, q);
    }
  }

  // class ids in order of first appearance of r/1, which exists for every
  // class over a finite ring (the image of some power of the denominator)
  pair_class_.assign(npairs, -1);
  std::vector<int> root_class(npairs, -1);
  std::vector<std::pair<Elt, Elt>> reps;  // class -> (numerator, denominator=1)
  const int one_si = s_index_[R.one()];
  for (Elt r = 0; r < R.order(); ++r) {
    int root = uf.find(pid(r, one_si));
    if (root_class[root] < 0) {
      root_class[root] = static_cast<int>(reps.size());
      reps.push_back({r, R.one()});
    }
  }
  for (int p = 0; p < npairs; ++p) {
    int cls = root_class[uf.find(p)];
    if (cls < 0)
      throw ValidationError("localization class without a denominator-one member");
    pair_class_[p] = cls;
  }

  const int order = static_cast<int>(reps.size());
  if (order < 2 || order > kMaxRingOrder)
    throw ValidationError("localized ring collapsed to a single class");

  std::vector<Elt> add(order * order), mul(order * order), inv(order);
  std::vector<std::string> names(order);
  for (int a = 0; a < order; ++a) {
    auto [r1, s1] = reps[a];
    inv[a] = pair_class_[pid(R.conj(r1), s_index_[R.conj(s1)])];
    names[a] = R.name(r1);
    for (int b = 0; b < order; ++b) {
      auto [r2, s2] = reps[b];
      add[a * order + b] =
          pair_class_[pid(R.add(R.mul(r1, s2), R.mul(r2, s1)), s_index_[R.mul(s1, s2)])];
      mul[a * order + b] = pair_class_[pid(R.mul(r1, r2), s_index_[R.mul(s1, s2)])];
    }
  }
  Elt zero = pair_class_[pid(R.zero(), one_si)];
  Elt one = pair_class_[pid(R.one(), one_si)];
  ring_ = std::make_shared<const FiniteRing>(order, std::move(add), std::move(mul),
                                             std::move(inv), zero, one, std::move(names));

  // the localization map must be a ring homomorphism sending S to units
  for (Elt a = 0; a < R.order(); ++a) {
    if (ring_->conj(map(a)) != map(R.conj(a)))
      throw ValidationError("localization map does not respect the involution");
    for (Elt b = 0; b < R.order(); ++b) {
      if (map(R.add(a, b)) != ring_->add(map(a), map(b)) ||
          map(R.mul(a, b)) != ring_->mul(map(a), map(b)))
        throw ValidationError("localization map is not a ring homomorphism");
    }
  }
  for (Elt s : s_list_)
    if (!ring_->is_unit(map(s)))
      throw ValidationError("localization failed to invert the multiplicative set");
}

Elt LocalizedRing::class_of(Elt numer, Elt denom) const {
  const FiniteRing& R = *base_;
  if (!R.valid_element(numer)) throw ValidationError("numerator out of range");
  if (!S_.contains(denom)) throw ValidationError("denominator not in the multiplicative set");
  return pair_class_[numer * static_cast<Elt>(s_list_.size()) + s_index_[denom]];
}

AdditiveSubgroup LocalizedRing::map_subgroup(const AdditiveSubgroup& X) const {
  std::uint64_t mask = 0;
  for (Elt x : X.elements())
    for (Elt s : s_list_) mask |= 1ull << class_of(x, s);
  // fraction sets of non-ideals need not be literally sum-closed; the
  // localized parameter is the additive subgroup they generate
  return additive_closure(*ring_, mask);
}

MatEntries LocalizedRing::map_matrix(const MatEntries& m) const {
  MatEntries out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = map(m[i]);
  return out;
}

FormRingPtr LocalizedRing::map_form_ring(const FormRing& fr) const {
  if (fr.ring != base_)
    throw ContextMismatchError("form ring does not live over the localization base");
  return make_form_ring(ring_, map(fr.lambda), map_subgroup(fr.Lambda));
}

FormIdeal localized_level(const FormIdeal& fi, const LocalizedRing& L) {
  return FormIdeal{L.map_subgroup(fi.I), L.map_subgroup(fi.Gamma)};
}

bool check_commuting_square(const LocalizedRing& L, const FormRingPtr& base_fr,
                            int n, const FormIdeal& fi, const UnitaryMatrix& sigma,
                            const UnitaryMatrix& c) {
  if (base_fr->ring != L.base())
    throw ContextMismatchError("form ring does not live over the localization base");
  if (!in_principal_congruence(c, fi))
    throw ValidationError("c must lie in the principal congruence subgroup");
  FormRingPtr frm = L.map_form_ring(*base_fr);
  FormIdeal fim = localized_level(fi, L);

  const FiniteRing& Rm = *frm->ring;
  MatEntries fs = L.map_matrix(sigma.entries());
  MatEntries fc = L.map_matrix(c.entries());
  MatEntries fsc = L.map_matrix((sigma * c).entries());
  if (fsc != matops::mul(Rm, 2 * n, fs, fc)) return false;
  if (!is_unitary(*frm, n, fc, UnitaryCheck::entries)) return false;
  UnitaryMatrix fcm = UnitaryMatrix::unchecked(frm, n, std::move(fc));
  return in_principal_congruence(fcm, fim);
}

NoncentralWitness find_noncentral_witness(const FormRingPtr& fr, int n,
                                          const UnitaryMatrix& g, const FormIdeal& fi,
                                          const std::vector<UnitaryMatrix>& U_gens,
                                          const AdditiveSubgroup& C) {
  auto violations = form_ideal_violations(*fr, fi);
  if (!violations.empty())
    throw ValidationError("invalid form ideal: " + violations.front());
  bool noncentral = false;
  for (const UnitaryMatrix& tau : U_gens)
    if (!in_principal_congruence_unchecked(commutator(g, tau), fi)) {
      noncentral = true;
      break;
    }
  if (!noncentral)
    throw ValidationError("no witness exists: the class of g is central");

  AdditiveSubgroup IC(fi.I.mask() & C.mask());
  for (const AdditiveSubgroup& m : maximal_ideals(*fr->ring, C)) {
    if (!IC.subset_of(m)) continue;
    MultiplicativeSet S{C.mask() & ~m.mask()};
    LocalizedRing L(fr->ring, S);
    FormRingPtr frm = L.map_form_ring(*fr);
    FormIdeal fim = localized_level(fi, L);
    UnitaryMatrix gm = UnitaryMatrix::unchecked(frm, n, L.map_matrix(g.entries()));
    for (const UnitaryMatrix& tau : U_gens) {
      UnitaryMatrix tm = UnitaryMatrix::unchecked(frm, n, L.map_matrix(tau.entries()));
      if (!in_principal_congruence_unchecked(commutator(gm, tm), fim))
        return NoncentralWitness{m, tau};
    }
  }
  throw ValidationError(
      "theorem violation: no maximal ideal keeps the class noncentral");
}

namespace {

bool saturates(const FiniteRing& R, const MultiplicativeSet& S, Elt s0,
               const AdditiveSubgroup& target) {
  for (Elt r = 0; r < R.order(); ++r) {
    Elt x = R.mul(s0, r);
    if (target.contains(x)) continue;
    for (Elt t : S.elements())
      if (target.contains(R.mul(t, x))) return false;
  }
  return true;
}

}  // namespace

Elt find_saturator(const FiniteRing& R, const MultiplicativeSet& S,
                   const AdditiveSubgroup& I, const AdditiveSubgroup& Gamma) {
  for (Elt s0 : S.elements())
    if (saturates(R, S, s0, I) && saturates(R, S, s0, Gamma)) return s0;
  throw ValidationError(
      "theorem violation: no element of S saturates (I, Gamma) divisibility");
}

InjectivityReport check_localization_injectivity(const FormRingPtr& fr, int n,
                                                 const LocalizedRing& L,
                                                 const FormIdeal& fi, Elt s0,
                                                 int samples, std::uint64_t seed) {
  const FiniteRing& R = *fr->ring;
  InjectivityReport rep;
  if (!L.mult_set().contains(s0) || !saturates(R, L.mult_set(), s0, fi.I) ||
      !saturates(R, L.mult_set(), s0, fi.Gamma)) {
    rep.hypothesis_ok = false;
    rep.witness = "s0=" + R.name(s0) + " lacks the saturation properties";
    return rep;
  }

  FormIdeal level0{ideal_closure(R, 1ull << s0),
                   scale_subgroup(R, s0, fr->Lambda)};
  auto violations = form_ideal_violations(*fr, level0);
  if (!violations.empty())
    throw ValidationError("(s0 R, s0 Lambda) is not a form ideal: " + violations.front());

  FormRingPtr frm = L.map_form_ring(*fr);
  FormIdeal fim = localized_level(fi, L);
  std::vector<UnitaryMatrix> gens = elementary_generators_of_level(fr, n, level0);

  SplitMix64 rng(seed);
  auto random_member = [&]() {
    UnitaryMatrix acc = UnitaryMatrix::identity(fr, n);
    if (gens.empty()) return acc;
    int len = 1 + static_cast<int>(rng.below(6));
    for (int k = 0; k < len; ++k) acc = acc * gens[rng.below(gens.size())];
    return acc;
  };

  for (int t = 0; t < samples; ++t) {
    UnitaryMatrix g1 = random_member(), g2 = random_member();
    UnitaryMatrix h = g1.inverse() * g2;
    if (!in_principal_congruence_unchecked(h, level0))
      throw ValidationError("sampled element escaped U((s0 R, s0 Lambda))");
    ++rep.pairs;
    UnitaryMatrix hm = UnitaryMatrix::unchecked(frm, n, L.map_matrix(h.entries()));
    if (!in_principal_congruence_unchecked(hm, fim)) continue;  // premise vacuous
    if (!in_principal_congruence_unchecked(h, fi)) {
      ++rep.failures;
      if (rep.witness.empty()) rep.witness = h.to_string();
    }
  }
  return rep;
}

namespace {

// Members of both families are subgroups, so membership of the designated
// generators decides every containment: <G> lies inside a subgroup exactly
// when G does, and g<G>g^-1 lies inside it exactly when gGg^-1 does.
std::vector<UnitaryMatrix> family_gens(const FiniteSubgroup& G) {
  if (!G.generators().empty() || G.size() == 1) return G.generators();
  return generating_set(G);
}

bool gens_inside(const std::vector<UnitaryMatrix>& gens, const FiniteSubgroup& U) {
  for (const UnitaryMatrix& g : gens)
    if (!U.contains(g)) return false;
  return true;
}

}  // namespace

SupplementedBaseReport check_supplemented_base(
    const std::vector<FiniteSubgroup>& A, const std::vector<FiniteSubgroup>& B,
    const std::vector<UnitaryMatrix>& group_gens) {
  SupplementedBaseReport rep;
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.failures.push_back(what);
  };
  if (A.empty()) {
    fail("family A is empty");
    return rep;
  }
  for (const FiniteSubgroup& G : A)
    if (G.size() <= 1) fail("family A contains a trivial subgroup");
  for (const FiniteSubgroup& G : B)
    if (G.size() <= 1) fail("family B contains a trivial subgroup");

  std::vector<std::vector<UnitaryMatrix>> Agens, Bgens;
  for (const FiniteSubgroup& G : A) Agens.push_back(family_gens(G));
  for (const FiniteSubgroup& G : B) Bgens.push_back(family_gens(G));

  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j) {
      ++rep.checked;
      bool found = false;
      for (std::size_t w = 0; w < A.size() && !found; ++w)
        found = gens_inside(Agens[w], A[i]) && gens_inside(Agens[w], A[j]);
      if (!found)
        fail("no A-member inside A[" + std::to_string(i) + "] ^ A[" +
             std::to_string(j) + "]");
    }

  for (std::size_t gi = 0; gi < group_gens.size(); ++gi)
    for (std::size_t ui = 0; ui < A.size(); ++ui) {
      ++rep.checked;
      bool found = false;
      for (std::size_t v = 0; v < A.size() && !found; ++v) {
        bool inside = true;
        for (const UnitaryMatrix& g : Agens[v])
          if (!A[ui].contains(g.conjugated_by(group_gens[gi]))) {
            inside = false;
            break;
          }
        found = inside;
      }
      if (!found)
        fail("no A-member conjugates into A[" + std::to_string(ui) +
             "] under generator " + std::to_string(gi));
    }

  for (std::size_t vi = 0; vi < B.size(); ++vi) {
    ++rep.checked;
    bool found = false;
    for (std::size_t u = 0; u < A.size() && !found; ++u)
      found = gens_inside(Bgens[vi], A[u]);
    if (!found) fail("B[" + std::to_string(vi) + "] is in no A-member");
  }

  for (std::size_t ui = 0; ui < A.size(); ++ui)
    for (std::size_t vi = 0; vi < B.size(); ++vi) {
      ++rep.checked;
      bool found = false;
      for (std::size_t w = 0; w < B.size() && !found; ++w)
        found = gens_inside(Bgens[w], A[ui]) && gens_inside(Bgens[w], B[vi]);
      if (!found)
        fail("no B-member inside A[" + std::to_string(ui) + "] ^ B[" +
             std::to_string(vi) + "]");
    }
  return rep;
}

}  // namespace hu
