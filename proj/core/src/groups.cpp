#include "hu/groups.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "hu/rng.hpp"

namespace hu {

// --- codec -----------------------------------------------------------------

MatrixCodec::MatrixCodec(int ring_order, int dim) : dim_(dim) {
  bits_ = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(ring_order - 1))));
  if (dim_ * dim_ * bits_ > 256)
    throw ValidationError(
        "matrix encoding exceeds 256 bits (order " + std::to_string(ring_order) +
        " at dimension " + std::to_string(dim) + " is past desk scale)");
}

MatKey MatrixCodec::encode(const MatEntries& m) const {
  MatKey k;
  int off = 0;
  for (Elt e : m) {
    std::uint64_t bits = static_cast<std::uint64_t>(e);
    int word = off >> 6, shift = off & 63;
    k.w[word] |= bits << shift;
    if (shift + bits_ > 64) k.w[word + 1] |= bits >> (64 - shift);
    off += bits_;
  }
  return k;
}

MatEntries MatrixCodec::decode(const MatKey& k) const {
  MatEntries m(dim_ * dim_);
  const std::uint64_t mask = bits_ == 64 ? ~0ull : ((1ull << bits_) - 1);
  int off = 0;
  for (int idx = 0; idx < dim_ * dim_; ++idx) {
    int word = off >> 6, shift = off & 63;
    std::uint64_t bits = k.w[word] >> shift;
    if (shift + bits_ > 64) bits |= k.w[word + 1] << (64 - shift);
    m[idx] = static_cast<Elt>(bits & mask);
    off += bits_;
  }
  return m;
}

// --- FiniteSubgroup ----------------------------------------------------------

FiniteSubgroup::FiniteSubgroup(FormRingPtr ctx, int n, KeysPtr sorted_keys,
                               std::vector<UnitaryMatrix> generators)
    : ctx_(std::move(ctx)),
      n_(n),
      codec_(ctx_->ring->order(), 2 * n),
      keys_(std::move(sorted_keys)),
      gens_(std::move(generators)) {
  if (!keys_ || keys_->empty())
    throw ValidationError("subgroup element list must contain the identity");
  if (!std::is_sorted(keys_->begin(), keys_->end()))
    throw ValidationError("subgroup element list must be sorted");
  MatKey id = codec_.encode(matops::identity(*ctx_->ring, 2 * n));
  if (!contains_key(id)) throw ValidationError("subgroup is missing the identity");
  for (const UnitaryMatrix& g : gens_) {
    if (!same_context(g.context(), ctx_) || g.n() != n_)
      throw ContextMismatchError("generator context differs from subgroup context");
    if (!contains(g)) throw ValidationError("designated generator is not a member");
  }
}

FiniteSubgroup FiniteSubgroup::trivial(FormRingPtr ctx, int n) {
  MatrixCodec codec(ctx->ring->order(), 2 * n);
  auto keys = std::make_shared<std::vector<MatKey>>();
  keys->push_back(codec.encode(matops::identity(*ctx->ring, 2 * n)));
  return FiniteSubgroup(ctx, n, std::move(keys), {});
}

bool FiniteSubgroup::contains_key(const MatKey& k) const {
  return std::binary_search(keys_->begin(), keys_->end(), k);
}

bool FiniteSubgroup::contains(const UnitaryMatrix& m) const {
  return contains_key(codec_.encode(m.entries()));
}

UnitaryMatrix FiniteSubgroup::element(std::size_t idx) const {
  return UnitaryMatrix::unchecked(ctx_, n_, codec_.decode((*keys_)[idx]));
}

bool FiniteSubgroup::subset_of(const FiniteSubgroup& other) const {
  if (keys_ == other.keys_) return true;
  if (size() > other.size()) return false;
  return std::includes(other.keys_->begin(), other.keys_->end(), keys_->begin(),
                       keys_->end());
}

bool FiniteSubgroup::same_elements(const FiniteSubgroup& other) const {
  return keys_ == other.keys_ || *keys_ == *other.keys_;
}

FiniteSubgroup FiniteSubgroup::with_generators(std::vector<UnitaryMatrix> gens) const {
  return FiniteSubgroup(ctx_, n_, keys_, std::move(gens));
}

// --- closures ---------------------------------------------------------------

namespace {

std::vector<UnitaryMatrix> dedupe_nontrivial(const MatrixCodec& codec,
                                             std::vector<UnitaryMatrix> gens) {
  std::vector<UnitaryMatrix> out;
  std::unordered_set<MatKey, MatKeyHash> seen;
  for (UnitaryMatrix& g : gens) {
    if (g.is_identity()) continue;
    if (seen.insert(codec.encode(g.entries())).second) out.push_back(std::move(g));
  }
  return out;
}

bool ambient_usable(const FormRingPtr& ctx, int n,
                    const std::vector<UnitaryMatrix>& gens,
                    const FiniteSubgroup* ambient) {
  if (!ambient) return false;
  if (!same_context(ambient->context(), ctx) || ambient->n() != n) return false;
  for (const UnitaryMatrix& g : gens)
    if (!ambient->contains(g)) return false;
  return true;
}

FiniteSubgroup finish(FormRingPtr ctx, int n,
                      std::unordered_set<MatKey, MatKeyHash>&& seen,
                      std::vector<UnitaryMatrix> gens) {
  auto keys = std::make_shared<std::vector<MatKey>>(seen.begin(), seen.end());
  std::sort(keys->begin(), keys->end());
  return FiniteSubgroup(std::move(ctx), n, std::move(keys), std::move(gens));
}

}  // namespace

FiniteSubgroup closure(FormRingPtr ctx, int n, std::vector<UnitaryMatrix> gens,
                       std::size_t cap, const FiniteSubgroup* ambient) {
  const FiniteRing& R = *ctx->ring;
  const int dim = 2 * n;
  MatrixCodec codec(R.order(), dim);
  for (const UnitaryMatrix& g : gens)
    if (!same_context(g.context(), ctx) || g.n() != n)
      throw ContextMismatchError("closure generators from different contexts");

  std::vector<UnitaryMatrix> use = dedupe_nontrivial(codec, std::move(gens));
  const bool lagrange = ambient_usable(ctx, n, use, ambient);
  const std::size_t half = lagrange ? ambient->size() / 2 : 0;

  std::unordered_set<MatKey, MatKeyHash> seen;
  std::deque<MatKey> frontier;
  MatKey id = codec.encode(matops::identity(R, dim));
  seen.insert(id);
  frontier.push_back(id);

  MatEntries cur, prod;
  while (!frontier.empty()) {
    MatKey k = frontier.front();
    frontier.pop_front();
    cur = codec.decode(k);
    for (const UnitaryMatrix& g : use) {
      matops::mul(R, dim, cur, g.entries(), prod);
      MatKey pk = codec.encode(prod);
      if (seen.insert(pk).second) {
        if (seen.size() > cap)
          throw CapExceededError("closure exceeded its cap", seen.size());
        if (lagrange && seen.size() > half)
          return FiniteSubgroup(ctx, n, ambient->keys_ptr(), std::move(use));
        frontier.push_back(pk);
      }
    }
  }
  return finish(std::move(ctx), n, std::move(seen), std::move(use));
}

FiniteSubgroup normal_closure(FormRingPtr ctx, int n,
                              std::vector<UnitaryMatrix> seeds,
                              const std::vector<UnitaryMatrix>& normalizer_gens,
                              std::size_t cap, const FiniteSubgroup* ambient) {
  MatrixCodec codec(ctx->ring->order(), 2 * n);
  std::vector<UnitaryMatrix> gens = dedupe_nontrivial(codec, std::move(seeds));
  const FiniteSubgroup* amb =
      ambient_usable(ctx, n, gens, ambient) &&
              ambient_usable(ctx, n, normalizer_gens, ambient)
          ? ambient
          : nullptr;

  // Close, conjugate the generators, absorb what escapes, repeat. Only a few
  // novel conjugates are admitted per round: each closure pass costs
  // |H| * |gens| products, so short generator lists keep the rounds cheap.
  // Termination still requires one clean full scan that adds nothing.
  constexpr std::size_t kMaxNewPerRound = 4;
  while (true) {
    FiniteSubgroup H = closure(ctx, n, gens, cap, amb);
    if (amb && H.keys_ptr() == amb->keys_ptr()) return H;  // already everything
    std::size_t added = 0;
    std::size_t fixed = gens.size();
    for (std::size_t gi = 0; gi < fixed && added < kMaxNewPerRound; ++gi)
      for (const UnitaryMatrix& t : normalizer_gens) {
        UnitaryMatrix c = gens[gi].conjugated_by(t);
        if (!H.contains(c)) {
          gens.push_back(std::move(c));
          if (++added >= kMaxNewPerRound) break;
        }
      }
    if (added == 0) return H;
    gens = dedupe_nontrivial(codec, std::move(gens));
  }
}

// --- elementary generators --------------------------------------------------

std::vector<UnitaryMatrix> elementary_generators(const FormRingPtr& ctx, int n) {
  const FiniteRing& R = *ctx->ring;
  std::vector<UnitaryMatrix> out;
  for (int i : omega_range(n))
    for (int j : omega_range(n)) {
      if (i == j || i == -j) continue;
      for (Elt xi = 0; xi < R.order(); ++xi)
        if (xi != R.zero()) out.push_back(short_root(ctx, n, i, j, xi));
    }
  for (int i : omega_range(n))
    for (Elt a : ctx->long_root_set(i).elements())
      if (a != R.zero()) out.push_back(long_root(ctx, n, i, a));
  return out;
}

std::vector<UnitaryMatrix> elementary_generators_of_level(const FormRingPtr& ctx,
                                                          int n, const FormIdeal& fi) {
  const FiniteRing& R = *ctx->ring;
  std::vector<UnitaryMatrix> out;
  for (int i : omega_range(n))
    for (int j : omega_range(n)) {
      if (i == j || i == -j) continue;
      for (Elt xi : fi.I.elements())
        if (xi != R.zero()) out.push_back(short_root(ctx, n, i, j, xi));
    }
  for (int i : omega_range(n)) {
    AdditiveSubgroup admissible =
        i > 0 ? scale_subgroup(R, ctx->lambda_bar(), fi.Gamma) : fi.Gamma;
    for (Elt a : admissible.elements())
      if (a != R.zero()) out.push_back(long_root(ctx, n, i, a));
  }
  return out;
}

FiniteSubgroup elementary_group(const FormRingPtr& ctx, int n, std::size_t cap,
                                const FiniteSubgroup* ambient) {
  return closure(ctx, n, elementary_generators(ctx, n), cap, ambient);
}

FiniteSubgroup preelementary_subgroup(const FormRingPtr& ctx, int n,
                                      const FormIdeal& fi, std::size_t cap) {
  return closure(ctx, n, elementary_generators_of_level(ctx, n, fi), cap);
}

FiniteSubgroup relative_elementary_subgroup(const FormRingPtr& ctx, int n,
                                            const FormIdeal& fi, std::size_t cap,
                                            const FiniteSubgroup* ambient) {
  return normal_closure(ctx, n, elementary_generators_of_level(ctx, n, fi),
                        elementary_generators(ctx, n), cap, ambient);
}

// --- full group enumeration --------------------------------------------------

FiniteSubgroup enumerate_unitary_group(const FormRingPtr& ctx, int n,
                                       std::size_t cap) {
  const FiniteRing& R = *ctx->ring;
  const int dim = 2 * n;
  MatrixCodec codec(R.order(), dim);

  double space = 1;
  for (int k = 0; k < dim; ++k) space *= R.order();
  if (space > 2e6)
    throw CapExceededError("column candidate space |R|^(2n) is infeasible",
                           static_cast<std::size_t>(2e6));

  // candidate columns: all v with |v| in Lambda (the per-column constraint)
  std::vector<std::vector<Elt>> candidates;
  {
    std::vector<Elt> v(dim, R.zero());
    while (true) {
      Elt len = R.zero();
      for (int k = 1; k <= n; ++k)
        len = R.add(len, R.mul(R.conj(v[omega_pos(k, n) - 1]),
                               v[omega_pos(-k, n) - 1]));
      if (ctx->Lambda.contains(len)) candidates.push_back(v);
      int c = 0;
      for (; c < dim; ++c) {
        v[c] = (v[c] + 1) % R.order();
        if (v[c] != 0) break;
      }
      if (c == dim) break;
    }
  }

  // target gram values h(e_i, e_j) by matrix position
  std::vector<Elt> target(dim * dim, R.zero());
  for (int p = 1; p <= dim; ++p) {
    int i = omega_at(p, n);
    target[(p - 1) * dim + (omega_pos(-i, n) - 1)] = i > 0 ? R.one() : ctx->lambda;
  }

  auto h_of = [&](const std::vector<Elt>& u, const std::vector<Elt>& v) {
    Elt fuv = R.zero(), fvu = R.zero();
    for (int k = 1; k <= n; ++k) {
      int top = omega_pos(k, n) - 1, bot = omega_pos(-k, n) - 1;
      fuv = R.add(fuv, R.mul(R.conj(u[top]), v[bot]));
      fvu = R.add(fvu, R.mul(R.conj(v[top]), u[bot]));
    }
    return R.add(fuv, R.mul(ctx->lambda, R.conj(fvu)));
  };

  auto keys = std::make_shared<std::vector<MatKey>>();
  std::vector<const std::vector<Elt>*> placed;
  MatEntries assembled(dim * dim);
  std::size_t attempts = 0;
  constexpr std::size_t kAttemptBudget = 500'000'000;

  auto emit = [&]() {
    for (int c = 0; c < dim; ++c)
      for (int r = 0; r < dim; ++r) assembled[r * dim + c] = (*placed[c])[r];
    if (is_unitary(*ctx, n, assembled, UnitaryCheck::blocks)) {
      keys->push_back(codec.encode(assembled));
      if (keys->size() > cap)
        throw CapExceededError("unitary group enumeration exceeded its cap",
                               keys->size());
    }
  };

  // iterative DFS over column choices
  std::vector<std::size_t> choice(dim, 0);
  int depth = 0;
  while (depth >= 0) {
    if (choice[depth] >= candidates.size()) {
      choice[depth] = 0;
      --depth;
      if (depth >= 0) {
        placed.pop_back();
        ++choice[depth];
      }
      continue;
    }
    const std::vector<Elt>& cand = candidates[choice[depth]];
    if (++attempts > kAttemptBudget)
      throw CapExceededError("unitary group enumeration budget exhausted",
                             keys->size());
    bool ok = true;
    for (int p = 0; p < depth && ok; ++p)
      ok = h_of(*placed[p], cand) == target[p * dim + depth];
    if (!ok) {
      ++choice[depth];
      continue;
    }
    placed.push_back(&cand);
    if (depth == dim - 1) {
      emit();
      placed.pop_back();
      ++choice[depth];
    } else {
      ++depth;
    }
  }

  std::sort(keys->begin(), keys->end());
  FiniteSubgroup U(ctx, n, std::move(keys), {});
  return U.with_generators(generating_set(U));
}

std::vector<UnitaryMatrix> generating_set(const FiniteSubgroup& H) {
  if (H.size() == 1) return {};
  SplitMix64 rng(0x5DEECE66Dull ^ H.size());
  std::vector<UnitaryMatrix> gens;
  FiniteSubgroup cur = FiniteSubgroup::trivial(H.context(), H.n());
  while (cur.size() < H.size()) {
    // seeded probe; fall back to the first element outside the current
    // closure so termination never depends on luck
    std::size_t idx = rng.below(H.size());
    if (cur.contains_key(H.keys()[idx])) {
      std::size_t scan = 0;
      while (scan < H.size() && cur.contains_key(H.keys()[scan])) ++scan;
      if (scan == H.size()) break;
      idx = scan;
    }
    gens.push_back(H.element(idx));
    cur = closure(H.context(), H.n(), gens, H.size(), &H);
  }
  return gens;
}

// --- congruence subgroups ---------------------------------------------------

FiniteSubgroup principal_congruence_subgroup(const FormIdeal& fi,
                                             const FiniteSubgroup& U) {
  const FormRingPtr& ctx = U.context();
  auto violations = form_ideal_violations(*ctx, fi);
  if (!violations.empty())
    throw ValidationError("invalid form ideal: " + violations.front());

  auto keys = std::make_shared<std::vector<MatKey>>();
  for (std::size_t i = 0; i < U.size(); ++i)
    if (in_principal_congruence_unchecked(U.element(i), fi)) keys->push_back(U.keys()[i]);
  FiniteSubgroup pcs = keys->size() == U.size()
                           ? FiniteSubgroup(ctx, U.n(), U.keys_ptr(), {})
                           : FiniteSubgroup(ctx, U.n(), std::move(keys), {});

  // normality spot-check: conjugates of sampled members by sampled U elements
  SplitMix64 rng(0xC0FFEEull);
  for (int t = 0; t < 32 && pcs.size() > 1; ++t) {
    UnitaryMatrix m = pcs.element(rng.below(pcs.size()));
    UnitaryMatrix g = U.element(rng.below(U.size()));
    if (!pcs.contains(m.conjugated_by(g)))
      throw ValidationError("principal congruence subgroup is not normal in U");
  }
  return pcs.with_generators(generating_set(pcs));
}

bool in_full_congruence(const UnitaryMatrix& sigma, const FormIdeal& fi,
                        const std::vector<UnitaryMatrix>& U_gens) {
  if (U_gens.empty())
    throw ValidationError("necessary-condition mode required: no generating set "
                          "of the full unitary group was supplied");
  auto violations = form_ideal_violations(*sigma.context(), fi);
  if (!violations.empty())
    throw ValidationError("invalid form ideal: " + violations.front());
  for (const UnitaryMatrix& tau : U_gens)
    if (!in_principal_congruence_unchecked(commutator(sigma, tau), fi)) return false;
  return true;
}

FiniteSubgroup full_congruence_subgroup(const FormIdeal& fi, const FiniteSubgroup& U,
                                        const std::vector<UnitaryMatrix>& U_gens) {
  FiniteSubgroup pcs = principal_congruence_subgroup(fi, U);
  if (pcs.size() == U.size())  // trivial quotient: everything is central
    return FiniteSubgroup(U.context(), U.n(), U.keys_ptr(), U.generators());
  if (U_gens.empty())
    throw ValidationError("necessary-condition mode required: no generating set "
                          "of the full unitary group was supplied");
  auto keys = std::make_shared<std::vector<MatKey>>();
  for (std::size_t i = 0; i < U.size(); ++i) {
    UnitaryMatrix sigma = U.element(i);
    bool central = true;
    for (const UnitaryMatrix& tau : U_gens) {
      if (!pcs.contains(commutator(sigma, tau))) {
        central = false;
        break;
      }
    }
    if (central) keys->push_back(U.keys()[i]);
  }
  FiniteSubgroup cu(U.context(), U.n(), std::move(keys), {});
  return cu.with_generators(generating_set(cu));
}

Level level_of(const FiniteSubgroup& H) {
  const FormRingPtr& ctx = H.context();
  const FiniteRing& R = *ctx->ring;
  std::uint64_t imask = 0, gmask = 0;
  for (Elt x = 0; x < R.order(); ++x)
    if (H.contains(short_root(ctx, H.n(), 1, 2, x))) imask |= 1ull << x;
  for (Elt y : ctx->Lambda.elements())
    if (H.contains(long_root(ctx, H.n(), -1, y))) gmask |= 1ull << y;
  Level lvl;
  lvl.fi = FormIdeal{AdditiveSubgroup(imask), AdditiveSubgroup(gmask)};
  lvl.violations = form_ideal_violations(*ctx, lvl.fi);
  lvl.is_form_ideal = lvl.violations.empty();
  return lvl;
}

bool is_E_normal(const FiniteSubgroup& H) {
  const std::vector<UnitaryMatrix>& gens =
      H.generators().empty() && H.size() > 1 ? generating_set(H) : H.generators();
  for (const UnitaryMatrix& t : elementary_generators(H.context(), H.n()))
    for (const UnitaryMatrix& g : gens)
      if (!H.contains(g.conjugated_by(t))) return false;
  return true;
}

FiniteSubgroup commutator_subgroup(const FiniteSubgroup& A, const FiniteSubgroup& B,
                                   std::size_t cap, const FiniteSubgroup* ambient) {
  if (!same_context(A.context(), B.context()) || A.n() != B.n())
    throw ContextMismatchError("commutator subgroup across different contexts");
  std::vector<UnitaryMatrix> seeds;
  for (const UnitaryMatrix& a : A.generators())
    for (const UnitaryMatrix& b : B.generators())
      seeds.push_back(commutator(a, b));
  std::vector<UnitaryMatrix> normalizer = A.generators();
  normalizer.insert(normalizer.end(), B.generators().begin(), B.generators().end());
  return normal_closure(A.context(), A.n(), std::move(seeds), normalizer, cap,
                        ambient);
}

PivotSearch make_pivot_invertible(const UnitaryMatrix& sigma, std::size_t cap) {
  const FormRingPtr& ctx = sigma.context();
  const FiniteRing& R = *ctx->ring;
  MatrixCodec codec(R.order(), sigma.dim());
  std::vector<UnitaryMatrix> gens = elementary_generators(ctx, sigma.n());

  PivotSearch out;
  if (R.is_unit(sigma.at(0, 0))) {
    out.found = true;
    out.result = sigma;
    return out;
  }

  std::vector<MatEntries> gen_inv;
  gen_inv.reserve(gens.size());
  for (const UnitaryMatrix& g : gens) gen_inv.push_back(g.inverse().entries());

  struct Node {
    MatKey key;
    std::int64_t parent;
    int gen;
  };
  std::vector<Node> nodes;
  std::unordered_set<MatKey, MatKeyHash> seen;
  MatKey k0 = codec.encode(sigma.entries());
  nodes.push_back({k0, -1, -1});
  seen.insert(k0);
  if (seen.size() > cap)
    throw CapExceededError("pivot search exceeded its cap", seen.size());

  const FiniteRing& Rr = *ctx->ring;
  const int dim = sigma.dim();
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    MatEntries cur = codec.decode(nodes[head].key);
    for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
      UnitaryMatrix next = UnitaryMatrix::unchecked(
          ctx, sigma.n(),
          matops::mul(Rr, dim, matops::mul(Rr, dim, gens[gi].entries(), cur),
                      gen_inv[gi]));
      MatKey nk = codec.encode(next.entries());
      if (!seen.insert(nk).second) continue;
      if (seen.size() > cap)
        throw CapExceededError("pivot search exceeded its cap", seen.size());
      nodes.push_back({nk, static_cast<std::int64_t>(head), gi});
      if (R.is_unit(next.at(0, 0))) {
        out.found = true;
        out.result = next;
        out.explored = seen.size();
        for (std::int64_t at = static_cast<std::int64_t>(nodes.size()) - 1;
             nodes[at].parent >= 0; at = nodes[at].parent)
          out.word.push_back(gens[nodes[at].gen]);
        std::reverse(out.word.begin(), out.word.end());
        return out;
      }
    }
  }
  out.explored = seen.size();
  return out;  // search space exhausted without a unit pivot
}

std::vector<FiniteSubgroup> sample_E_normal(std::uint64_t seed, int count,
                                            const FiniteSubgroup& U,
                                            std::size_t cap) {
  SplitMix64 rng(seed);
  std::vector<UnitaryMatrix> elem = elementary_generators(U.context(), U.n());
  std::vector<FiniteSubgroup> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    int k = 1 + static_cast<int>(rng.below(3));
    std::vector<UnitaryMatrix> seeds;
    for (int t = 0; t < k; ++t) seeds.push_back(U.element(rng.below(U.size())));
    out.push_back(
        normal_closure(U.context(), U.n(), std::move(seeds), elem, cap, &U));
  }
  return out;
}

// --- sandwich ---------------------------------------------------------------

SandwichContext SandwichContext::build(FormRingPtr ctx, int n, std::size_t cap) {
  SandwichContext sc{ctx, n, enumerate_unitary_group(ctx, n, cap), {}, {}, {}};
  sc.U_gens = sc.U.generators();
  sc.elem_gens = elementary_generators(ctx, n);
  for (const FormIdeal& fi : enumerate_form_ideals(*ctx)) {
    FiniteSubgroup rel = relative_elementary_subgroup(ctx, n, fi, cap, &sc.U);
    FiniteSubgroup pcs = principal_congruence_subgroup(fi, sc.U);
    FiniteSubgroup cu = full_congruence_subgroup(fi, sc.U, sc.U_gens);
    sc.levels.push_back({fi, std::move(rel), std::move(pcs), std::move(cu)});
  }
  return sc;
}

const SandwichLevelData& SandwichContext::data_for(const FormIdeal& fi) const {
  for (const SandwichLevelData& d : levels)
    if (d.fi == fi) return d;
  throw ValidationError("level is not a form ideal of this configuration");
}

SandwichReport sandwich_check(const FiniteSubgroup& H, const SandwichContext& sc) {
  SandwichReport rep;
  rep.level = level_of(H);
  if (!rep.level.is_form_ideal) {
    rep.notes.push_back("level is not a form ideal: " + rep.level.violations.front());
    return rep;
  }
  const SandwichLevelData& d = sc.data_for(rep.level.fi);
  rep.lower_ok = d.rel.subset_of(H);
  rep.upper_ok = H.subset_of(d.cu);
  for (const SandwichLevelData& other : sc.levels)
    if (other.rel.subset_of(H) && H.subset_of(other.cu)) ++rep.matching_levels;
  rep.unique = rep.matching_levels == 1;
  rep.ok = rep.lower_ok && rep.upper_ok && rep.unique;
  if (!rep.lower_ok) rep.notes.push_back("elementary subgroup of the level escapes H");
  if (!rep.upper_ok) rep.notes.push_back("H escapes the full congruence subgroup");
  if (!rep.unique)
    rep.notes.push_back("sandwiching levels found: " +
                        std::to_string(rep.matching_levels));
  return rep;
}

SandwichReport sandwich_check_necessary(const FiniteSubgroup& H, std::size_t cap) {
  const FormRingPtr& ctx = H.context();
  SandwichReport rep;
  rep.level = level_of(H);
  if (!rep.level.is_form_ideal) {
    rep.notes.push_back("level is not a form ideal: " + rep.level.violations.front());
    return rep;
  }
  FiniteSubgroup rel = relative_elementary_subgroup(ctx, H.n(), rep.level.fi, cap);
  rep.lower_ok = rel.subset_of(H);
  rep.upper_ok = true;
  const std::vector<UnitaryMatrix>& gens =
      H.generators().empty() && H.size() > 1 ? generating_set(H) : H.generators();
  for (const UnitaryMatrix& g : gens)
    for (const UnitaryMatrix& t : elementary_generators(ctx, H.n()))
      if (!in_principal_congruence(commutator(g, t), rep.level.fi)) {
        rep.upper_ok = false;
        break;
      }
  rep.matching_levels = -1;  // uniqueness needs the enumerated group
  rep.unique = false;
  rep.ok = rep.lower_ok && rep.upper_ok;
  rep.notes.push_back("necessary-condition mode: upper inclusion tested against "
                      "elementary generators only; verdict is one-sided");
  return rep;
}

}  // namespace hu
