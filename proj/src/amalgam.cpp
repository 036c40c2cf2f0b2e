#include "ggt/amalgam.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "ggt/errors.hpp"

namespace ggt {

size_t AmalgamWordHash::operator()(const AmalgamWord& w) const noexcept {
  size_t h = 0xcbf29ce484222325ull;
  for (const Letter& l : w.letters) {
    h ^= static_cast<size_t>(l.elem) * 2 + static_cast<size_t>(l.factor);
    h *= 0x100000001b3ull;
  }
  return h;
}

AmalgamContext::AmalgamContext(FiniteGroup A, FiniteGroup B, FiniteGroup C,
                               std::vector<int> iotaA, std::vector<int> iotaB)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), iotaA_(std::move(iotaA)),
      iotaB_(std::move(iotaB)) {
  auto validate = [&](const FiniteGroup& F, const std::vector<int>& img, const char* which) {
    GroupHom hom{&C_, &F, img};
    if (static_cast<int>(img.size()) != C_.order)
      throw Error(std::string(which) + ": embedding table size mismatch");
    for (int v : img)
      if (v < 0 || v >= F.order) throw Error(std::string(which) + ": image out of range");
    HomCheckResult r = check_hom(hom);
    if (!r.multiplicative) throw Error(std::string(which) + ": not a homomorphism");
    if (!r.injective) throw Error(std::string(which) + ": not injective");
  };
  validate(A_, iotaA_, "iotaA");
  validate(B_, iotaB_, "iotaB");

  auto build = [&](const FiniteGroup& F, const std::vector<int>& img) {
    FactorTables t;
    t.in_h.assign(F.order, 0);
    t.inv_iota.assign(F.order, -1);
    for (int c = 0; c < C_.order; ++c) {
      t.in_h[static_cast<size_t>(img[c])] = 1;
      t.inv_iota[static_cast<size_t>(img[c])] = c;
    }
    t.rep.assign(F.order, -1);
    t.cpart.assign(F.order, -1);
    for (int g = 0; g < F.order; ++g) {
      if (t.rep[static_cast<size_t>(g)] >= 0) continue;
      // right coset iota(C)*g; canonical representative
      int rep = F.order;
      if (t.in_h[static_cast<size_t>(g)]) {
        rep = F.identity;
      } else {
        for (int c = 0; c < C_.order; ++c) rep = std::min(rep, F.mul(img[c], g));
      }
      for (int c = 0; c < C_.order; ++c) {
        int x = F.mul(img[c], g);
        t.rep[static_cast<size_t>(x)] = rep;
      }
    }
    for (int g = 0; g < F.order; ++g) {
      // g = iota(c) * rep  =>  c = iota^{-1}(g * rep^{-1})
      int h = F.mul(g, F.inverse(t.rep[static_cast<size_t>(g)]));
      t.cpart[static_cast<size_t>(g)] = t.inv_iota[static_cast<size_t>(h)];
    }
    t.transversal.push_back(F.identity);
    for (int g = 0; g < F.order; ++g)
      if (t.rep[static_cast<size_t>(g)] == g && g != F.identity) t.transversal.push_back(g);
    return t;
  };
  tabA_ = build(A_, iotaA_);
  tabB_ = build(B_, iotaB_);
}

void nf_left_multiply(const AmalgamContext& ctx, NormalForm& nf, Factor f, int g) {
  const FiniteGroup& F = ctx.factor(f);
  const std::vector<int>& img = ctx.iota(f);
  if (!nf.reps.empty() && nf.reps.front().factor == f) {
    // merge with the first letter iota(c)*t1
    int g2 = F.mul(g, F.mul(img[static_cast<size_t>(nf.c)], nf.reps.front().elem));
    if (ctx.in_edge_subgroup(f, g2)) {
      int c2 = ctx.iota_inverse(f, g2);
      nf.reps.erase(nf.reps.begin());
      if (nf.reps.empty()) {
        nf.c = c2;
      } else {
        // absorb the residual C-part into the new first letter
        Factor f2 = nf.reps.front().factor;
        const FiniteGroup& F2 = ctx.factor(f2);
        int p = F2.mul(ctx.iota(f2)[static_cast<size_t>(c2)], nf.reps.front().elem);
        nf.reps.front().elem = ctx.coset_rep(f2, p);
        nf.c = ctx.coset_cpart(f2, p);
      }
    } else {
      nf.reps.front().elem = ctx.coset_rep(f, g2);
      nf.c = ctx.coset_cpart(f, g2);
    }
  } else {
    int g2 = F.mul(g, img[static_cast<size_t>(nf.c)]);
    if (ctx.in_edge_subgroup(f, g2)) {
      nf.c = ctx.iota_inverse(f, g2);
    } else {
      nf.reps.insert(nf.reps.begin(), Letter{f, ctx.coset_rep(f, g2)});
      nf.c = ctx.coset_cpart(f, g2);
    }
  }
}

namespace {

void validate_letters(const AmalgamContext& ctx, const AmalgamWord& w) {
  for (const Letter& l : w.letters) {
    if (l.elem < 0 || l.elem >= ctx.factor(l.factor).order)
      throw Error("letter element index out of range");
  }
}

}  // namespace

NormalForm to_normal_form(const AmalgamContext& ctx, const AmalgamWord& w) {
  validate_letters(ctx, w);
  NormalForm nf;
  nf.c = ctx.C().identity;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    nf_left_multiply(ctx, nf, it->factor, it->elem);
  return nf;
}

AmalgamWord from_normal_form(const AmalgamContext& ctx, const NormalForm& nf) {
  AmalgamWord w;
  if (nf.reps.empty()) {
    if (nf.c != ctx.C().identity)
      w.letters.push_back(Letter{Factor::A, ctx.iota(Factor::A)[static_cast<size_t>(nf.c)]});
    return w;
  }
  w.letters = nf.reps;
  Factor f0 = w.letters.front().factor;
  const FiniteGroup& F0 = ctx.factor(f0);
  w.letters.front().elem =
      F0.mul(ctx.iota(f0)[static_cast<size_t>(nf.c)], w.letters.front().elem);
  return w;
}

AmalgamWord normal_form(const AmalgamContext& ctx, const AmalgamWord& w) {
  return from_normal_form(ctx, to_normal_form(ctx, w));
}

bool is_reduced(const AmalgamContext& ctx, const AmalgamWord& w) {
  validate_letters(ctx, w);
  size_t n = w.letters.size();
  if (n == 0) return true;
  if (n == 1) return w.letters[0].elem != ctx.factor(w.letters[0].factor).identity;
  for (size_t i = 0; i < n; ++i) {
    if (ctx.in_edge_subgroup(w.letters[i].factor, w.letters[i].elem)) return false;
    if (i + 1 < n && w.letters[i].factor == w.letters[i + 1].factor) return false;
  }
  return true;
}

bool is_cyclically_reduced(const AmalgamContext& ctx, const AmalgamWord& w) {
  if (!is_reduced(ctx, w)) return false;
  size_t n = w.letters.size();
  if (n <= 1) return true;
  return w.letters.front().factor != w.letters.back().factor;
}

bool is_weakly_cyclically_reduced(const AmalgamContext& ctx, const AmalgamWord& w) {
  if (!is_reduced(ctx, w)) return false;
  size_t n = w.letters.size();
  if (n <= 1) return true;
  const Letter& first = w.letters.front();
  const Letter& last = w.letters.back();
  if (first.factor != last.factor) return true;  // x_n * x_1 is not a factor element
  const FiniteGroup& F = ctx.factor(first.factor);
  return !ctx.in_edge_subgroup(first.factor, F.mul(last.elem, first.elem));
}

AmalgamWord multiply(const AmalgamContext& ctx, const AmalgamWord& u, const AmalgamWord& v) {
  AmalgamWord cat;
  cat.letters.reserve(u.letters.size() + v.letters.size());
  cat.letters.insert(cat.letters.end(), u.letters.begin(), u.letters.end());
  cat.letters.insert(cat.letters.end(), v.letters.begin(), v.letters.end());
  return normal_form(ctx, cat);
}

AmalgamWord invert(const AmalgamContext& ctx, const AmalgamWord& u) {
  AmalgamWord r;
  r.letters.reserve(u.letters.size());
  for (auto it = u.letters.rbegin(); it != u.letters.rend(); ++it)
    r.letters.push_back(Letter{it->factor, ctx.factor(it->factor).inverse(it->elem)});
  return normal_form(ctx, r);
}

AmalgamWord conjugate(const AmalgamContext& ctx, const AmalgamWord& u, const AmalgamWord& g) {
  return multiply(ctx, multiply(ctx, invert(ctx, g), u), g);
}

std::vector<AmalgamWord> weakly_cyclic_conjugates(const AmalgamContext& ctx,
                                                  const AmalgamWord& w0) {
  AmalgamWord w = normal_form(ctx, w0);
  if (!is_weakly_cyclically_reduced(ctx, w))
    throw NotWeaklyCyclicallyReduced("input word is not weakly cyclically reduced");

  std::unordered_set<AmalgamWord, AmalgamWordHash> seen;
  std::vector<AmalgamWord> queue{w};
  seen.insert(w);
  auto push = [&](const AmalgamWord& u) {
    if (is_weakly_cyclically_reduced(ctx, u) && seen.insert(u).second) queue.push_back(u);
  };
  for (size_t head = 0; head < queue.size(); ++head) {
    AmalgamWord u = queue[head];
    // cyclic permutation
    if (u.letters.size() > 1) {
      AmalgamWord shifted;
      shifted.letters.assign(u.letters.begin() + 1, u.letters.end());
      shifted.letters.push_back(u.letters.front());
      push(normal_form(ctx, shifted));
    }
    // conjugation by embedded C
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
  std::vector<AmalgamWord> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

AmalgamWord parse_word(const AmalgamContext& ctx, const std::string& text) {
  AmalgamWord w;
  std::istringstream in(text);
  std::string tok;
  size_t pos = 0;
  while (in >> tok) {
    pos = text.find(tok, pos);
    if (tok.size() < 2 || (tok[0] != 'A' && tok[0] != 'B'))
      throw ParseError("bad token '" + tok + "' at position " + std::to_string(pos));
    Factor f = tok[0] == 'A' ? Factor::A : Factor::B;
    auto idx = ctx.factor(f).index_of_name(tok.substr(1));
    if (!idx)
      throw ParseError("unknown element '" + tok + "' at position " + std::to_string(pos));
    w.letters.push_back(Letter{f, *idx});
    pos += tok.size();
  }
  return w;
}

std::string format_word(const AmalgamContext& ctx, const AmalgamWord& w) {
  std::string out;
  for (const Letter& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += l.factor == Factor::A ? 'A' : 'B';
    out += ctx.factor(l.factor).name_of(l.elem);
  }
  return out;
}

}  // namespace ggt
