#include "hu/formring.hpp"

#include <algorithm>
#include <unordered_set>

namespace hu {

std::string AdditiveSubgroup::to_string() const {
  std::string out = "{";
  bool first = true;
  for (Elt e : elements()) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

FiniteRing::FiniteRing(int order, std::vector<Elt> add_table,
                       std::vector<Elt> mul_table, std::vector<Elt> inv_table,
                       Elt zero, Elt one, std::vector<std::string> names)
    : order_(order),
      add_(std::move(add_table)),
      mul_(std::move(mul_table)),
      inv_(std::move(inv_table)),
      zero_(zero),
      one_(one),
      names_(std::move(names)) {
  if (order_ < 2 || order_ > kMaxRingOrder)
    throw ValidationError("ring order must be between 2 and " +
                          std::to_string(kMaxRingOrder) + ", got " +
                          std::to_string(order_));
  if (static_cast<int>(add_.size()) != order_ * order_ ||
      static_cast<int>(mul_.size()) != order_ * order_ ||
      static_cast<int>(inv_.size()) != order_)
    throw ValidationError("operation table size does not match ring order");
  for (Elt v : add_)
    if (!valid_element(v)) throw ValidationError("add table entry out of range");
  for (Elt v : mul_)
    if (!valid_element(v)) throw ValidationError("mul table entry out of range");
  for (Elt v : inv_)
    if (!valid_element(v)) throw ValidationError("involution table entry out of range");
  if (!valid_element(zero_) || !valid_element(one_))
    throw ValidationError("zero/one element index out of range");

  neg_.assign(order_, -1);
  for (Elt a = 0; a < order_; ++a)
    for (Elt b = 0; b < order_; ++b)
      if (add(a, b) == zero_) neg_[a] = b;

  validate();

  unit_inverse_.assign(order_, -1);
  for (Elt a = 0; a < order_; ++a)
    for (Elt b = 0; b < order_; ++b)
      if (mul(a, b) == one_ && mul(b, a) == one_) unit_inverse_[a] = b;

  center_mask_ = 0;
  commutative_ = true;
  for (Elt a = 0; a < order_; ++a) {
    bool central = true;
    for (Elt b = 0; b < order_ && central; ++b)
      if (mul(a, b) != mul(b, a)) central = false;
    if (central)
      center_mask_ |= 1ull << a;
    else
      commutative_ = false;
  }

  if (names_.empty()) {
    names_.reserve(order_);
    for (Elt a = 0; a < order_; ++a) names_.push_back(std::to_string(a));
  } else if (static_cast<int>(names_.size()) != order_) {
    throw ValidationError("element name list size does not match ring order");
  }
}

void FiniteRing::validate() const {
  const int n = order_;
  if (zero_ == one_) throw ValidationError("ring must have 1 != 0");
  for (Elt a = 0; a < n; ++a) {
    if (add(a, zero_) != a || add(zero_, a) != a)
      throw ValidationError("zero is not an additive identity");
    if (neg_[a] < 0) throw ValidationError("element without additive inverse");
    if (mul(a, one_) != a || mul(one_, a) != a)
      throw ValidationError("one is not a multiplicative identity");
  }
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b) {
      if (add(a, b) != add(b, a)) throw ValidationError("addition not commutative");
      if (conj(add(a, b)) != add(conj(a), conj(b)))
        throw ValidationError("involution not additive");
      if (conj(mul(a, b)) != mul(conj(b), conj(a)))
        throw ValidationError("involution does not reverse products");
    }
  for (Elt a = 0; a < n; ++a)
    if (conj(conj(a)) != a) throw ValidationError("involution not self-inverse");
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b)
      for (Elt c = 0; c < n; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c)))
          throw ValidationError("addition not associative");
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw ValidationError("multiplication not associative");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
          throw ValidationError("left distributivity fails");
        if (mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
          throw ValidationError("right distributivity fails");
      }
}

Elt FiniteRing::unit_inverse(Elt a) const {
  if (!valid_element(a) || unit_inverse_[a] < 0)
    throw ValidationError("element " + std::to_string(a) + " is not a unit");
  return unit_inverse_[a];
}

std::string FiniteRing::describe(const AdditiveSubgroup& s) const {
  std::string out = "{";
  bool first = true;
  for (Elt e : s.elements()) {
    if (e >= order_) break;
    if (!first) out += ",";
    out += names_[e];
    first = false;
  }
  return out + "}";
}

// --- constructors ----------------------------------------------------------

FiniteRing build_zmod(int m) {
  if (m < 2 || m > kMaxRingOrder)
    throw ValidationError("zmod modulus must be between 2 and 64, got " +
                          std::to_string(m));
  std::vector<Elt> add(m * m), mul(m * m), inv(m);
  for (int a = 0; a < m; ++a) {
    inv[a] = a;
    for (int b = 0; b < m; ++b) {
      add[a * m + b] = (a + b) % m;
      mul[a * m + b] = (a * b) % m;
    }
  }
  return FiniteRing(m, std::move(add), std::move(mul), std::move(inv), 0, 1);
}

FiniteRing build_quadratic(int m, int b, int c) {
  if (m < 2 || m * m > kMaxRingOrder)
    throw ValidationError("quadratic ring (Z/m)[x]/(x^2+bx+c) needs m^2 <= 64, got m=" +
                          std::to_string(m));
  b = ((b % m) + m) % m;
  c = ((c % m) + m) % m;
  const int order = m * m;
  auto idx = [m](int a0, int a1) { return ((a0 % m + m) % m) + ((a1 % m + m) % m) * m; };
  std::vector<Elt> add(order * order), mul(order * order), inv(order);
  std::vector<std::string> names(order);
  for (int a1 = 0; a1 < m; ++a1)
    for (int a0 = 0; a0 < m; ++a0) {
      int a = idx(a0, a1);
      inv[a] = idx(a0 - a1 * b, -a1);  // x -> -b - x
      names[a] = a1 == 0 ? std::to_string(a0)
                         : std::to_string(a0) + "+" + std::to_string(a1) + "x";
      for (int b1 = 0; b1 < m; ++b1)
        for (int b0 = 0; b0 < m; ++b0) {
          int bb = idx(b0, b1);
          add[a * order + bb] = idx(a0 + b0, a1 + b1);
          // (a0 + a1 x)(b0 + b1 x) with x^2 = -b x - c
          mul[a * order + bb] = idx(a0 * b0 - c * a1 * b1, a0 * b1 + a1 * b0 - b * a1 * b1);
        }
    }
  return FiniteRing(order, std::move(add), std::move(mul), std::move(inv),
                    idx(0, 0), idx(1, 0), std::move(names));
}

FiniteRing build_product_swap(int m) {
  if (m < 2 || m > 8)
    throw ValidationError("product-swap ring needs 2 <= m <= 8, got " +
                          std::to_string(m));
  const int order = m * m;
  auto idx = [m](int a, int b) { return a + b * m; };
  std::vector<Elt> add(order * order), mul(order * order), inv(order);
  std::vector<std::string> names(order);
  for (int a1 = 0; a1 < m; ++a1)
    for (int a0 = 0; a0 < m; ++a0) {
      int a = idx(a0, a1);
      inv[a] = idx(a1, a0);
      names[a] = "(" + std::to_string(a0) + "," + std::to_string(a1) + ")";
      for (int b1 = 0; b1 < m; ++b1)
        for (int b0 = 0; b0 < m; ++b0) {
          int bb = idx(b0, b1);
          add[a * order + bb] = idx((a0 + b0) % m, (a1 + b1) % m);
          mul[a * order + bb] = idx((a0 * b0) % m, (a1 * b1) % m);
        }
    }
  return FiniteRing(order, std::move(add), std::move(mul), std::move(inv),
                    idx(0, 0), idx(1, 1), std::move(names));
}

// --- subset machinery --------------------------------------------------

AdditiveSubgroup additive_closure(const FiniteRing& R, std::uint64_t seeds) {
  std::uint64_t mask = seeds | (1ull << R.zero());
  bool grew = true;
  while (grew) {
    grew = false;
    std::uint64_t cur = mask;
    for (Elt a = 0; a < R.order(); ++a) {
      if (!(cur >> a & 1)) continue;
      std::uint64_t add_row = 0;
      for (Elt b = 0; b < R.order(); ++b)
        if (cur >> b & 1) add_row |= 1ull << R.add(a, b);
      add_row |= 1ull << R.neg(a);
      if (add_row & ~mask) {
        mask |= add_row;
        grew = true;
      }
    }
  }
  return AdditiveSubgroup(mask);
}

AdditiveSubgroup ideal_closure(const FiniteRing& R, std::uint64_t seeds) {
  std::uint64_t mask = additive_closure(R, seeds).mask();
  bool grew = true;
  while (grew) {
    grew = false;
    std::uint64_t next = mask;
    for (Elt a = 0; a < R.order(); ++a) {
      if (!(mask >> a & 1)) continue;
      for (Elt r = 0; r < R.order(); ++r) {
        next |= 1ull << R.mul(r, a);
        next |= 1ull << R.mul(a, r);
      }
    }
    if (next != mask) {
      mask = additive_closure(R, next).mask();
      grew = true;
    }
  }
  return AdditiveSubgroup(mask);
}

bool is_additive_subgroup(const FiniteRing& R, const AdditiveSubgroup& s) {
  if (!s.contains(R.zero())) return false;
  for (Elt a : s.elements()) {
    if (a >= R.order()) return false;
    if (!s.contains(R.neg(a))) return false;
    for (Elt b : s.elements())
      if (!s.contains(R.add(a, b))) return false;
  }
  return true;
}

bool is_two_sided_ideal(const FiniteRing& R, const AdditiveSubgroup& s) {
  if (!is_additive_subgroup(R, s)) return false;
  for (Elt a : s.elements())
    for (Elt r = 0; r < R.order(); ++r)
      if (!s.contains(R.mul(r, a)) || !s.contains(R.mul(a, r))) return false;
  return true;
}

bool is_involution_invariant(const FiniteRing& R, const AdditiveSubgroup& s) {
  for (Elt a : s.elements())
    if (!s.contains(R.conj(a))) return false;
  return true;
}

std::vector<AdditiveSubgroup> subgroups_between(const FiniteRing& R,
                                                const AdditiveSubgroup& lower,
                                                const AdditiveSubgroup& upper) {
  AdditiveSubgroup base = additive_closure(R, lower.mask());
  std::vector<AdditiveSubgroup> out;
  if (!base.subset_of(upper)) return out;
  std::unordered_set<std::uint64_t> seen{base.mask()};
  std::vector<std::uint64_t> frontier{base.mask()};
  while (!frontier.empty()) {
    std::uint64_t cur = frontier.back();
    frontier.pop_back();
    for (Elt x : upper.elements()) {
      if (cur >> x & 1) continue;
      AdditiveSubgroup grown = additive_closure(R, cur | (1ull << x));
      if (!grown.subset_of(upper)) continue;
      if (seen.insert(grown.mask()).second) frontier.push_back(grown.mask());
    }
  }
  out.reserve(seen.size());
  for (std::uint64_t m : seen) out.push_back(AdditiveSubgroup(m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AdditiveSubgroup> enumerate_ideals(const FiniteRing& R) {
  AdditiveSubgroup zero(1ull << R.zero());
  AdditiveSubgroup all(R.all_mask());
  std::vector<AdditiveSubgroup> out;
  for (const AdditiveSubgroup& s : subgroups_between(R, zero, all))
    if (is_two_sided_ideal(R, s) && is_involution_invariant(R, s)) out.push_back(s);
  return out;
}

AdditiveSubgroup scale_subgroup(const FiniteRing& R, Elt s, const AdditiveSubgroup& S) {
  std::uint64_t mask = 0;
  for (Elt a : S.elements()) mask |= 1ull << R.mul(s, a);
  return AdditiveSubgroup(mask);
}

// --- form rings --------------------------------------------------------

Elt FormRing::lambda_pow(int e) const {
  switch (e) {
    case 0: return ring->one();
    case 1: return lambda;
    case -1: return ring->conj(lambda);
    default: throw ValidationError("lambda power exponent must be -1, 0 or 1");
  }
}

AdditiveSubgroup FormRing::long_root_set(int i) const {
  if (i == 0) throw ValidationError("Omega index must be nonzero");
  // exponent -(eps(i)+1)/2 is -1 on the positive side, 0 on the negative side
  return i > 0 ? scale_subgroup(*ring, ring->conj(lambda), Lambda) : Lambda;
}

bool same_context(const FormRingPtr& a, const FormRingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->ring == b->ring && a->lambda == b->lambda && a->Lambda == b->Lambda;
}

static bool lambda_ok(const FiniteRing& R, Elt lambda, std::string* why) {
  if (!R.valid_element(lambda)) {
    if (why) *why = "lambda index out of range";
    return false;
  }
  if (!R.is_central(lambda)) {
    if (why) *why = "lambda is not central";
    return false;
  }
  if (R.mul(lambda, R.conj(lambda)) != R.one()) {
    if (why) *why = "lambda*conj(lambda) != 1";
    return false;
  }
  return true;
}

AdditiveSubgroup lambda_min(const FiniteRing& R, Elt lambda) {
  std::string why;
  if (!lambda_ok(R, lambda, &why)) throw ValidationError(why);
  std::uint64_t mask = 0;
  for (Elt r = 0; r < R.order(); ++r)
    mask |= 1ull << R.sub(r, R.mul(lambda, R.conj(r)));
  return AdditiveSubgroup(mask);  // image of an additive map, already a subgroup
}

AdditiveSubgroup lambda_max(const FiniteRing& R, Elt lambda) {
  std::string why;
  if (!lambda_ok(R, lambda, &why)) throw ValidationError(why);
  std::uint64_t mask = 0;
  for (Elt r = 0; r < R.order(); ++r)
    if (r == R.neg(R.mul(lambda, R.conj(r)))) mask |= 1ull << r;
  return AdditiveSubgroup(mask);
}

std::vector<std::string> validate_form_ring(const FormRing& fr) {
  std::vector<std::string> out;
  const FiniteRing& R = *fr.ring;
  std::string why;
  if (!lambda_ok(R, fr.lambda, &why)) {
    out.push_back(why);
    return out;  // Lambda bounds are meaningless without a valid lambda
  }
  if (!is_additive_subgroup(R, fr.Lambda))
    out.push_back("Lambda is not an additive subgroup");
  AdditiveSubgroup lo = lambda_min(R, fr.lambda);
  AdditiveSubgroup hi = lambda_max(R, fr.lambda);
  if (!lo.subset_of(fr.Lambda)) out.push_back("Lambda_min not contained in Lambda");
  if (!fr.Lambda.subset_of(hi)) out.push_back("Lambda not contained in Lambda_max");
  for (Elt r = 0; r < R.order(); ++r)
    for (Elt a : fr.Lambda.elements())
      if (!fr.Lambda.contains(R.mul(R.mul(r, a), R.conj(r)))) {
        out.push_back("r*Lambda*conj(r) escapes Lambda at r=" + R.name(r) +
                      ", a=" + R.name(a));
        return out;
      }
  return out;
}

FormRingPtr make_form_ring(FiniteRingPtr ring, Elt lambda, AdditiveSubgroup Lambda) {
  FormRing fr{std::move(ring), lambda, Lambda};
  auto violations = validate_form_ring(fr);
  if (!violations.empty()) throw ValidationError("invalid form ring: " + violations.front());
  return std::make_shared<const FormRing>(std::move(fr));
}

std::vector<AdditiveSubgroup> enumerate_form_parameters(const FiniteRing& R, Elt lambda) {
  AdditiveSubgroup lo = lambda_min(R, lambda);
  AdditiveSubgroup hi = lambda_max(R, lambda);
  std::vector<AdditiveSubgroup> out;
  for (const AdditiveSubgroup& s : subgroups_between(R, lo, hi)) {
    bool stable = true;
    for (Elt r = 0; r < R.order() && stable; ++r)
      for (Elt a : s.elements())
        if (!s.contains(R.mul(R.mul(r, a), R.conj(r)))) {
          stable = false;
          break;
        }
    if (stable) out.push_back(s);
  }
  return out;
}

AdditiveSubgroup gamma_min(const FormRing& fr, const AdditiveSubgroup& I) {
  const FiniteRing& R = *fr.ring;
  if (!is_two_sided_ideal(R, I) || !is_involution_invariant(R, I))
    throw ValidationError("I is not an involution-invariant two-sided ideal");
  std::uint64_t seeds = 0;
  for (Elt xi : I.elements())
    seeds |= 1ull << R.sub(xi, R.mul(fr.lambda, R.conj(xi)));
  for (Elt zeta : I.elements())
    for (Elt alpha : fr.Lambda.elements())
      seeds |= 1ull << R.mul(R.mul(zeta, alpha), R.conj(zeta));
  return additive_closure(R, seeds);
}

AdditiveSubgroup gamma_max(const FormRing& fr, const AdditiveSubgroup& I) {
  return I.intersect(fr.Lambda);
}

std::vector<std::string> form_ideal_violations(const FormRing& fr, const FormIdeal& fi) {
  std::vector<std::string> out;
  const FiniteRing& R = *fr.ring;
  if (!is_two_sided_ideal(R, fi.I)) out.push_back("I is not a two-sided ideal");
  if (!is_involution_invariant(R, fi.I)) out.push_back("I is not involution-invariant");
  if (!out.empty()) return out;
  if (!is_additive_subgroup(R, fi.Gamma))
    out.push_back("Gamma is not an additive subgroup");
  if (!gamma_min(fr, fi.I).subset_of(fi.Gamma))
    out.push_back("Gamma_min not contained in Gamma");
  if (!fi.Gamma.subset_of(gamma_max(fr, fi.I)))
    out.push_back("Gamma not contained in Gamma_max = I intersect Lambda");
  for (Elt a = 0; a < R.order(); ++a)
    for (Elt g : fi.Gamma.elements())
      if (!fi.Gamma.contains(R.mul(R.mul(a, g), R.conj(a)))) {
        out.push_back("alpha*Gamma*conj(alpha) escapes Gamma at alpha=" + R.name(a));
        return out;
      }
  return out;
}

bool is_form_ideal(const FormRing& fr, const FormIdeal& fi) {
  return form_ideal_violations(fr, fi).empty();
}

std::vector<FormIdeal> enumerate_form_ideals(const FormRing& fr) {
  const FiniteRing& R = *fr.ring;
  std::vector<FormIdeal> out;
  for (const AdditiveSubgroup& I : enumerate_ideals(R)) {
    AdditiveSubgroup lo = gamma_min(fr, I);
    AdditiveSubgroup hi = gamma_max(fr, I);
    for (const AdditiveSubgroup& G : subgroups_between(R, lo, hi)) {
      FormIdeal fi{I, G};
      if (is_form_ideal(fr, fi)) out.push_back(fi);
    }
  }
  return out;
}

AdditiveSubgroup involution_ideal(const FiniteRing& R, Elt x) {
  if (!R.valid_element(x)) throw ValidationError("element index out of range");
  return ideal_closure(R, (1ull << x) | (1ull << R.conj(x)));
}

FormIdeal gamma_of(const FormRing& fr, const FormIdeal& fi, Elt x) {
  const FiniteRing& R = *fr.ring;
  if (!R.valid_element(x)) throw ValidationError("element index out of range");
  AdditiveSubgroup RxR = involution_ideal(R, x);
  AdditiveSubgroup gamma;
  if (!fi.I.contains(x)) {
    gamma = gamma_min(fr, RxR);
  } else if (gamma_max(fr, fi.I).contains(x) && !fi.Gamma.contains(x)) {
    std::uint64_t seeds = gamma_min(fr, RxR).mask();
    for (Elt y = 0; y < R.order(); ++y)
      seeds |= 1ull << R.mul(R.mul(y, x), R.conj(y));
    gamma = additive_closure(R, seeds);
  } else {
    throw ValidationError(
        "element " + R.name(x) +
        " is neither outside I nor in gamma_max(I) \\ Gamma");
  }
  return FormIdeal{RxR, gamma};
}

AdditiveSubgroup norm_subring(const FiniteRing& R, const AdditiveSubgroup& Cprime) {
  for (Elt c : Cprime.elements()) {
    if (c >= R.order()) throw ValidationError("Cprime element out of range");
    if (!R.is_central(c)) throw ValidationError("Cprime is not central");
  }
  if (!is_additive_subgroup(R, Cprime))
    throw ValidationError("Cprime is not additively closed");
  for (Elt a : Cprime.elements())
    for (Elt b : Cprime.elements())
      if (!Cprime.contains(R.mul(a, b)))
        throw ValidationError("Cprime is not multiplicatively closed");
  std::uint64_t seeds = 0;
  for (Elt c : Cprime.elements()) {
    Elt n = R.mul(c, R.conj(c));
    seeds |= 1ull << n;
    seeds |= 1ull << R.neg(n);
  }
  return additive_closure(R, seeds);
}

}  // namespace hu
