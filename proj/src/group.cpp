#include "ggt/group.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ggt/errors.hpp"

namespace ggt {

std::string FiniteGroup::name_of(int g) const {
  if (!element_names.empty()) return element_names[static_cast<size_t>(g)];
  return std::to_string(g);
}

std::optional<int> FiniteGroup::index_of_name(const std::string& name) const {
  for (size_t i = 0; i < element_names.size(); ++i)
    if (element_names[i] == name) return static_cast<int>(i);
  // fall back to numeric indices
  try {
    size_t pos = 0;
    int v = std::stoi(name, &pos);
    if (pos == name.size() && v >= 0 && v < order) return v;
  } catch (...) {
  }
  return std::nullopt;
}

namespace {

void check_latin(const std::vector<std::vector<int>>& table, int n) {
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw NotAGroup("table is not square at row " + std::to_string(i));
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (int j = 0; j < n; ++j) {
      int r = table[i][j];
      int c = table[j][i];
      if (r < 0 || r >= n || c < 0 || c >= n)
        throw NotAGroup("entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (row_seen[r]) throw NotAGroup("row " + std::to_string(i) + " is not a permutation");
      if (col_seen[c]) throw NotAGroup("column " + std::to_string(i) + " is not a permutation");
      row_seen[r] = col_seen[c] = 1;
    }
  }
}

}  // namespace

FiniteGroup make_group(const std::vector<std::vector<int>>& table,
                       const std::vector<std::string>& names,
                       const GroupValidationConfig& cfg) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroup("empty table");
  check_latin(table, n);

  // identity: the unique e with e*g = g*e = g for all g
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw NotAGroup("no two-sided identity");

  std::vector<int> inv(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (table[g][h] == identity && table[h][g] == identity) {
        inv[g] = h;
        break;
      }
    }
    if (inv[g] < 0) throw NotAGroup("element " + std::to_string(g) + " has no two-sided inverse");
  }

  auto check_triple = [&](int a, int b, int c) {
    if (table[table[a][b]][c] != table[a][table[b][c]])
      throw NotAGroup("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                      "," + std::to_string(c) + ")");
  };
  if (n <= cfg.exhaustive_assoc_threshold) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int k = 0; k < cfg.sampled_triples; ++k) check_triple(d(rng), d(rng), d(rng));
  }

  FiniteGroup G;
  G.order = n;
  G.mult = table;
  G.identity = identity;
  G.inv = std::move(inv);
  if (!names.empty()) {
    if (static_cast<int>(names.size()) != n) throw NotAGroup("names size does not match order");
    G.element_names = names;
  }
  return G;
}

SubgroupHandle subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> in(G.order, 0);
  std::vector<int> queue;
  auto add = [&](int g) {
    if (!in[static_cast<size_t>(g)]) {
      in[static_cast<size_t>(g)] = 1;
      queue.push_back(g);
    }
  };
  add(G.identity);
  for (int g : gens) add(g);
  for (size_t head = 0; head < queue.size(); ++head) {
    int g = queue[head];
    add(G.inverse(g));
    for (size_t i = 0; i <= head; ++i) {
      add(G.mul(g, queue[i]));
      add(G.mul(queue[i], g));
    }
  }

  SubgroupHandle H;
  H.parent = &G;
  H.member = in;
  for (int g = 0; g < G.order; ++g)
    if (in[static_cast<size_t>(g)]) H.elements.push_back(g);

  // left cosets tH, representative = smallest index in the coset; identity's
  // coset is represented by the identity.
  std::vector<char> covered(G.order, 0);
  for (int g = 0; g < G.order; ++g) {
    if (covered[static_cast<size_t>(g)]) continue;
    int rep = G.order;
    for (int h : H.elements) {
      int x = G.mul(g, h);
      covered[static_cast<size_t>(x)] = 1;
      rep = std::min(rep, x);
    }
    if (H.contains(g)) rep = G.identity;
    H.left_transversal.push_back(rep);
  }
  std::sort(H.left_transversal.begin(), H.left_transversal.end());
  // keep identity's coset first
  auto it = std::find(H.left_transversal.begin(), H.left_transversal.end(), G.identity);
  std::rotate(H.left_transversal.begin(), it, it + 1);
  return H;
}

HomCheckResult check_hom(const GroupHom& f) {
  HomCheckResult res;
  res.multiplicative = true;
  const FiniteGroup& S = *f.source;
  const FiniteGroup& T = *f.target;
  for (int g = 0; g < S.order && res.multiplicative; ++g) {
    for (int h = 0; h < S.order; ++h) {
      if (f.apply(S.mul(g, h)) != T.mul(f.apply(g), f.apply(h))) {
        res.multiplicative = false;
        res.witness_g = g;
        res.witness_h = h;
        break;
      }
    }
  }
  std::set<int> img(f.image.begin(), f.image.end());
  res.injective = static_cast<int>(img.size()) == S.order;
  return res;
}

FiniteGroup make_cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return make_group(t);
}

}  // namespace ggt
