#include "ggt/smallcancel.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "ggt/errors.hpp"

namespace ggt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t hash_step(std::uint64_t h, const Letter& l) {
  std::uint64_t enc = static_cast<std::uint64_t>(l.elem) * 2 + static_cast<std::uint64_t>(l.factor) + 1;
  return splitmix64(h ^ (enc * 0x9e3779b97f4a7c15ull));
}

constexpr std::uint64_t kHashSeed = 0x51ca17a10ull;

// State of the canonical form of prefix * iota(h): running C-part and a
// rolling hash of the representative-letter sequence.
struct VarState {
  int c = 0;
  std::uint64_t hash = kHashSeed;
};

// Advances all variant states by one relator letter t (a coset
// representative). v(k, h) = v(k-1, h2) * t' where t*iota(h) = iota(h2)*t'.
void advance_states(const AmalgamContext& ctx, const Letter& t, std::vector<VarState>& states,
                    std::vector<VarState>& scratch) {
  const FiniteGroup& F = ctx.factor(t.factor);
  const std::vector<int>& img = ctx.iota(t.factor);
  scratch.resize(states.size());
  for (int h = 0; h < static_cast<int>(states.size()); ++h) {
    int y = F.mul(t.elem, img[static_cast<size_t>(h)]);
    int h2 = ctx.coset_cpart(t.factor, y);
    Letter tp{t.factor, ctx.coset_rep(t.factor, y)};
    scratch[static_cast<size_t>(h)] = VarState{states[static_cast<size_t>(h2)].c,
                                               hash_step(states[static_cast<size_t>(h2)].hash, tp)};
  }
  states.swap(scratch);
}

std::vector<VarState> initial_states(const AmalgamContext& ctx, int c_part) {
  std::vector<VarState> st(static_cast<size_t>(ctx.C().order));
  for (int h = 0; h < ctx.C().order; ++h)
    st[static_cast<size_t>(h)] = VarState{ctx.C().mul(c_part, h), kHashSeed};
  return st;
}

// Order-independent key of the whole prefix class at the current length.
std::uint64_t class_key(const std::vector<VarState>& states) {
  std::uint64_t key = 0;
  for (const VarState& s : states)
    key += splitmix64(s.hash ^ (static_cast<std::uint64_t>(s.c) * 0xd1b54a32d192ed03ull));
  return key;
}

bool length_lex_less(const AmalgamWord& a, const AmalgamWord& b) {
  if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

}  // namespace

NormalForm prefix_variant(const AmalgamContext& ctx, const NormalForm& r, int k, int h) {
  NormalForm p;
  p.c = r.c;
  p.reps.assign(r.reps.begin(), r.reps.begin() + k);
  AmalgamWord w = from_normal_form(ctx, p);
  if (h != ctx.C().identity)
    w.letters.push_back(Letter{Factor::A, ctx.iota(Factor::A)[static_cast<size_t>(h)]});
  return to_normal_form(ctx, w);
}

int common_prefix_class_length(const SymmetrizedSet& R, int i, int j) {
  const AmalgamContext& ctx = *R.ctx;
  const NormalForm& ri = R.nfs[static_cast<size_t>(i)];
  const NormalForm& rj = R.nfs[static_cast<size_t>(j)];
  int kmax = static_cast<int>(std::min(ri.reps.size(), rj.reps.size()));
  int best = 0;
  for (int k = 1; k <= kmax; ++k) {
    NormalForm pj = prefix_variant(ctx, rj, k, ctx.C().identity);
    bool match = false;
    for (int h = 0; h < ctx.C().order && !match; ++h)
      match = prefix_variant(ctx, ri, k, h) == pj;
    if (!match) break;  // prefix classes refine with k
    best = k;
  }
  return best;
}

SymmetrizedSet symmetrize(const AmalgamContext& ctx, const std::vector<AmalgamWord>& r0) {
  std::unordered_set<AmalgamWord, AmalgamWordHash> seen;
  std::vector<AmalgamWord> queue;
  for (const AmalgamWord& w0 : r0) {
    AmalgamWord w = normal_form(ctx, w0);
    if (!is_weakly_cyclically_reduced(ctx, w) || w.empty())
      throw NotWeaklyCyclicallyReduced("relator '" + format_word(ctx, w0) +
                                       "' is not weakly cyclically reduced");
    if (seen.insert(w).second) queue.push_back(w);
  }
  auto push = [&](const AmalgamWord& u) {
    if (!u.empty() && is_weakly_cyclically_reduced(ctx, u) && seen.insert(u).second)
      queue.push_back(u);
  };
  for (size_t head = 0; head < queue.size(); ++head) {
    AmalgamWord u = queue[head];
    push(invert(ctx, u));
    if (u.letters.size() > 1) {
      AmalgamWord shifted;
      shifted.letters.assign(u.letters.begin() + 1, u.letters.end());
      shifted.letters.push_back(u.letters.front());
      push(normal_form(ctx, shifted));
    }
    for (int c = 0; c < ctx.C().order; ++c) {
      if (c == ctx.C().identity) continue;
      AmalgamWord conj;
      conj.letters.reserve(u.letters.size() + 2);
      int img = ctx.iota(Factor::A)[static_cast<size_t>(c)];
      conj.letters.push_back(Letter{Factor::A, ctx.A().inverse(img)});
      conj.letters.insert(conj.letters.end(), u.letters.begin(), u.letters.end());
      conj.letters.push_back(Letter{Factor::A, img});
      push(normal_form(ctx, conj));
    }
  }

  SymmetrizedSet R;
  R.ctx = &ctx;
  R.relators.assign(seen.begin(), seen.end());
  std::sort(R.relators.begin(), R.relators.end(), length_lex_less);
  R.nfs.reserve(R.relators.size());
  for (const AmalgamWord& w : R.relators) R.nfs.push_back(to_normal_form(ctx, w));
  if (!R.relators.empty()) {
    R.min_length = R.relators.front().letters.size();
    R.max_length = R.relators.back().letters.size();
  }

  // prefix index for the Dehn reducer: tseq hashes of prefixes longer than
  // half the relator
  for (int r = 0; r < static_cast<int>(R.nfs.size()); ++r) {
    const NormalForm& nf = R.nfs[static_cast<size_t>(r)];
    int n = static_cast<int>(nf.reps.size());
    std::uint64_t h = kHashSeed;
    for (int k = 1; k <= n; ++k) {
      h = hash_step(h, nf.reps[static_cast<size_t>(k - 1)]);
      if (2 * k > n) R.half_prefix_index.push_back({h, {r, k}});
    }
  }
  std::sort(R.half_prefix_index.begin(), R.half_prefix_index.end());
  R.cprime_one_sixth = check_cprime(R, Rational(1, 6)).satisfied;
  return R;
}

namespace {

// Hash-indexed upper bounds for the longest shared prefix class per relator.
// Classes are deterministic functions of the variant family, so equal classes
// always collide; unequal classes collide only on 64-bit hash accidents,
// which callers reconcile with the exact comparison.
std::vector<int> piece_length_upper_bounds(const SymmetrizedSet& R) {
  const AmalgamContext& ctx = *R.ctx;
  int n = static_cast<int>(R.nfs.size());
  std::vector<int> piece_len(static_cast<size_t>(n), 0);
  std::vector<std::vector<VarState>> states(static_cast<size_t>(n));
  std::vector<int> active;
  for (int r = 0; r < n; ++r) {
    states[static_cast<size_t>(r)] = initial_states(ctx, R.nfs[static_cast<size_t>(r)].c);
    active.push_back(r);
  }
  std::vector<VarState> scratch;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;
  for (int k = 1; !active.empty(); ++k) {
    buckets.clear();
    for (int r : active) {
      const NormalForm& nf = R.nfs[static_cast<size_t>(r)];
      advance_states(ctx, nf.reps[static_cast<size_t>(k - 1)], states[static_cast<size_t>(r)],
                     scratch);
      buckets[class_key(states[static_cast<size_t>(r)])].push_back(r);
    }
    std::vector<int> next;
    for (auto& [key, rel] : buckets) {
      if (rel.size() < 2) continue;
      for (int r : rel) {
        piece_len[static_cast<size_t>(r)] = k;
        if (static_cast<int>(R.nfs[static_cast<size_t>(r)].reps.size()) > k) next.push_back(r);
      }
    }
    std::sort(next.begin(), next.end());
    active.swap(next);
  }
  return piece_len;
}

int exact_piece_length(const SymmetrizedSet& R, int r, const std::vector<int>& upper) {
  int best = 0;
  for (int j = 0; j < static_cast<int>(R.nfs.size()); ++j) {
    if (j == r) continue;
    if (upper[static_cast<size_t>(j)] <= best) continue;  // shared bounds agree pairwise
    best = std::max(best, common_prefix_class_length(R, r, j));
  }
  return best;
}

}  // namespace

CancellationReport check_cprime(const SymmetrizedSet& R, const Rational& lambda) {
  if (lambda <= 0 || lambda > 1) throw Error("lambda must lie in (0, 1]");
  CancellationReport rep;
  rep.lambda = lambda;
  rep.min_relator_len = R.min_length;
  if (R.relators.empty()) {
    rep.satisfied = true;
    return rep;
  }

  std::vector<int> upper = piece_length_upper_bounds(R);

  bool length_ok = Rational(static_cast<int>(R.min_length)) * lambda > 1;
  // candidates whose hash bound breaks the piece condition; re-check exactly
  std::vector<std::pair<AmalgamWord, int>> violations;  // (piece word, relator)
  int exact_max = 0;
  std::vector<char> exact_known(R.nfs.size(), 0);
  std::vector<int> exact_len(R.nfs.size(), 0);
  auto ensure_exact = [&](int r) {
    if (!exact_known[static_cast<size_t>(r)]) {
      exact_len[static_cast<size_t>(r)] = exact_piece_length(R, r, upper);
      exact_known[static_cast<size_t>(r)] = 1;
    }
    return exact_len[static_cast<size_t>(r)];
  };

  for (int r = 0; r < static_cast<int>(R.nfs.size()); ++r) {
    int len = static_cast<int>(R.nfs[static_cast<size_t>(r)].reps.size());
    if (Rational(upper[static_cast<size_t>(r)]) >= lambda * len) {
      int pl = ensure_exact(r);
      exact_max = std::max(exact_max, pl);
      if (Rational(pl) >= lambda * len) {
        // smallest violating piece length for a deterministic witness
        int kmin = pl;
        while (kmin > 1 && Rational(kmin - 1) >= lambda * len) --kmin;
        NormalForm p;
        p.c = R.nfs[static_cast<size_t>(r)].c;
        p.reps.assign(R.nfs[static_cast<size_t>(r)].reps.begin(),
                      R.nfs[static_cast<size_t>(r)].reps.begin() + kmin);
        violations.push_back({from_normal_form(*R.ctx, p), r});
      }
    }
  }

  // exact maximum piece length: confirm hash attainers
  int hash_max = *std::max_element(upper.begin(), upper.end());
  while (true) {
    int candidate_max = exact_max;
    bool pending = false;
    for (int r = 0; r < static_cast<int>(R.nfs.size()); ++r) {
      if (upper[static_cast<size_t>(r)] > candidate_max && !exact_known[static_cast<size_t>(r)]) {
        pending = true;
        candidate_max = std::max(candidate_max, ensure_exact(r));
      }
    }
    exact_max = std::max(exact_max, candidate_max);
    if (!pending || exact_max >= hash_max) break;
  }
  rep.max_piece_len = exact_max;

  rep.satisfied = length_ok && violations.empty();
  if (!length_ok) {
    PieceWitness w;
    w.relator1 = 0;  // relators are sorted by length; the first is shortest
    rep.witness = w;
  } else if (!violations.empty()) {
    auto best = std::min_element(
        violations.begin(), violations.end(), [&](const auto& a, const auto& b) {
          if (a.first != b.first) return a.first < b.first;
          return R.relators[static_cast<size_t>(a.second)] < R.relators[static_cast<size_t>(b.second)];
        });
    PieceWitness w;
    w.piece = best->first;
    w.relator1 = best->second;
    for (int j = 0; j < static_cast<int>(R.nfs.size()); ++j) {
      if (j == w.relator1) continue;
      if (common_prefix_class_length(R, w.relator1, j) >=
          static_cast<int>(w.piece.letters.size())) {
        w.relator2 = j;
        break;
      }
    }
    rep.witness = w;
  }
  return rep;
}

PieceQueryResult is_piece(const SymmetrizedSet& R, const AmalgamWord& b0) {
  PieceQueryResult res;
  if (b0.empty()) throw Error("is_piece: empty word");
  const AmalgamContext& ctx = *R.ctx;
  AmalgamWord b = normal_form(ctx, b0);
  int k = static_cast<int>(b.letters.size());
  for (int r = 0; r < static_cast<int>(R.nfs.size()); ++r) {
    if (static_cast<int>(R.nfs[static_cast<size_t>(r)].reps.size()) < k) continue;
    for (int h = 0; h < ctx.C().order; ++h) {
      if (from_normal_form(ctx, prefix_variant(ctx, R.nfs[static_cast<size_t>(r)], k, h)) == b) {
        if (res.witness1 < 0) {
          res.witness1 = r;
        } else {
          res.witness2 = r;
          res.piece = true;
          return res;
        }
        break;
      }
    }
  }
  return res;
}

namespace {

struct DehnMatch {
  int start = -1;
  int length = 0;
  int relator = -1;
  int h = -1;  // subword variant that matched
};

// Finds the deterministic first match: smallest start, then longest subword,
// then first relator in the set's canonical order.
std::optional<DehnMatch> find_dehn_match(const SymmetrizedSet& R, const NormalForm& w) {
  const AmalgamContext& ctx = *R.ctx;
  const auto& index = R.half_prefix_index;
  int n = static_cast<int>(w.reps.size());
  int min_match = static_cast<int>(R.min_length) / 2 + 1;
  std::vector<VarState> states, scratch;
  for (int i = 0; i + min_match <= n; ++i) {
    states = initial_states(ctx, ctx.C().identity);
    std::optional<DehnMatch> best;
    int lmax = std::min(n - i, static_cast<int>(R.max_length));
    for (int L = 1; L <= lmax; ++L) {
      advance_states(ctx, w.reps[static_cast<size_t>(i + L - 1)], states, scratch);
      if (L < min_match) continue;
      for (int h = 0; h < ctx.C().order; ++h) {
        std::uint64_t key = states[static_cast<size_t>(h)].hash;
        auto lo = std::lower_bound(index.begin(), index.end(), key,
                                   [](const auto& e, std::uint64_t k) { return e.first < k; });
        for (auto it = lo; it != index.end() && it->first == key; ++it) {
          auto [r, kr] = it->second;
          if (kr != L) continue;
          // exact verification: tseq of subword*iota(h) vs relator prefix
          NormalForm sub;
          sub.c = ctx.C().identity;
          sub.reps.assign(w.reps.begin() + i, w.reps.begin() + i + L);
          NormalForm v = prefix_variant(ctx, sub, L, h);
          if (v.reps != std::vector<Letter>(R.nfs[static_cast<size_t>(r)].reps.begin(),
                                            R.nfs[static_cast<size_t>(r)].reps.begin() + L))
            continue;
          if (!best || L > best->length || (L == best->length && r < best->relator))
            best = DehnMatch{i, L, r, h};
        }
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

AmalgamWord dehn_reduce(const SymmetrizedSet& R, const AmalgamWord& w0, int step_budget) {
  const AmalgamContext& ctx = *R.ctx;
  if (!R.cprime_one_sixth)
    throw SmallCancellationViolated("dehn_reduce requires a C'(1/6) symmetrized set");
  AmalgamWord w = normal_form(ctx, w0);
  if (R.empty()) return w;

  for (int step = 0; step < step_budget; ++step) {
    NormalForm nf = to_normal_form(ctx, w);
    auto m = find_dehn_match(R, nf);
    if (!m) return w;

    const NormalForm& rnf = R.nfs[static_cast<size_t>(m->relator)];
    // subword s (no C-part), matched prefix p, complement q with r = p*q
    NormalForm sub;
    sub.c = ctx.C().identity;
    sub.reps.assign(nf.reps.begin() + m->start, nf.reps.begin() + m->start + m->length);
    NormalForm v = prefix_variant(ctx, sub, m->length, m->h);  // s * iota(h)
    NormalForm pnf;
    pnf.c = rnf.c;
    pnf.reps.assign(rnf.reps.begin(), rnf.reps.begin() + m->length);
    AmalgamWord p = from_normal_form(ctx, pnf);
    // p = iota(h1) * s * iota(h), with h1 = c_p * c_v^{-1}
    int h1 = ctx.C().mul(pnf.c, ctx.C().inverse(v.c));
    AmalgamWord q = multiply(ctx, invert(ctx, p), R.relators[static_cast<size_t>(m->relator)]);

    // s = iota(h1)^{-1} * p * iota(h)^{-1}  ==  iota(h1)^{-1} * q^{-1} * iota(h)^{-1} mod N
    AmalgamWord repl;
    NormalForm head;
    head.c = nf.c;
    head.reps.assign(nf.reps.begin(), nf.reps.begin() + m->start);
    repl = from_normal_form(ctx, head);
    auto push_c = [&](int c) {
      if (c != ctx.C().identity)
        repl.letters.push_back(Letter{Factor::A, ctx.iota(Factor::A)[static_cast<size_t>(c)]});
    };
    push_c(ctx.C().inverse(h1));
    AmalgamWord qinv = invert(ctx, q);
    repl.letters.insert(repl.letters.end(), qinv.letters.begin(), qinv.letters.end());
    push_c(ctx.C().inverse(m->h));
    repl.letters.insert(repl.letters.end(), nf.reps.begin() + m->start + m->length,
                        nf.reps.end());

    AmalgamWord next = normal_form(ctx, repl);
    if (next.letters.size() >= w.letters.size())
      throw Error("dehn_reduce: step did not decrease length (internal error)");
    w = next;
    if (w.empty()) return w;
  }
  throw StepBudgetExceeded("dehn_reduce step budget exhausted");
}

bool is_trivial_in_quotient(const SymmetrizedSet& R, const AmalgamWord& w, int step_budget) {
  return dehn_reduce(R, w, step_budget).empty();
}

AmalgamWord search_cprime_relator(const AmalgamContext& ctx, int len, const Rational& lambda,
                                  std::uint64_t seed, int max_attempts) {
  if (len < 2 || len % 2 != 0) throw Error("search_cprime_relator: length must be even and >= 2");
  std::mt19937_64 rng(seed);
  const std::vector<int>& ta = ctx.transversal(Factor::A);
  const std::vector<int>& tb = ctx.transversal(Factor::B);
  if (ta.size() < 2 || tb.size() < 2) throw Error("factors must differ from the edge subgroup");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    AmalgamWord w;
    w.letters.reserve(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) {
      const std::vector<int>& t = i % 2 == 0 ? ta : tb;
      std::uniform_int_distribution<size_t> d(1, t.size() - 1);
      w.letters.push_back(Letter{i % 2 == 0 ? Factor::A : Factor::B, t[d(rng)]});
    }
    SymmetrizedSet R = symmetrize(ctx, {w});
    if (check_cprime(R, lambda).satisfied) return w;
  }
  throw Error("search_cprime_relator: no C'(lambda) word found within attempt budget");
}

}  // namespace ggt
