#include "ggt/filling.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ggt/errors.hpp"

namespace ggt {

namespace {

// ---- exact-rational simplex (dense, Bland's rule) ----

struct LpSolution {
  bool feasible = false;
  Rational value;
  std::vector<Rational> x;  // structural variables
  std::vector<Rational> y;  // dual vector, one per row
};

// min sum(x) s.t. Ax = b, x >= 0. A is m x n, small and dense.
LpSolution solve_unit_cost_lp(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  size_t m = A.size();
  size_t n = m == 0 ? 0 : A[0].size();
  LpSolution sol;
  if (m == 0) {
    sol.feasible = true;
    sol.value = 0;
    sol.x.assign(n, Rational(0));
    return sol;
  }
  std::vector<int> row_sign(m, 1);
  for (size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      b[i] = -b[i];
      row_sign[i] = -1;
      for (Rational& v : A[i]) v = -v;
    }

  // tableau: structural columns, artificial identity, rhs
  size_t ntot = n + m;
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(ntot + 1));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][ntot] = b[i];
    basis[i] = n + i;
  }

  auto pivot = [&](size_t r, size_t c) {
    Rational p = T[r][c];
    for (Rational& v : T[r]) v /= p;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || T[i][c] == 0) continue;
      Rational f = T[i][c];
      for (size_t j = 0; j <= ntot; ++j) T[i][j] -= f * T[r][j];
    }
    basis[r] = c;
  };

  // cost[j] for the current phase; iterate with Bland's anti-cycling rule
  auto run = [&](const std::vector<Rational>& cost, size_t limit_cols) {
    while (true) {
      // reduced costs: cost[j] - cost_B . T[:,j]
      size_t enter = ntot + 1;
      for (size_t j = 0; j < limit_cols && enter > ntot; ++j) {
        bool basic = false;
        for (size_t i = 0; i < m && !basic; ++i) basic = basis[i] == j;
        if (basic) continue;
        Rational rc = cost[j];
        for (size_t i = 0; i < m; ++i)
          if (T[i][j] != 0) rc -= cost[basis[i]] * T[i][j];
        if (rc < 0) enter = j;
      }
      if (enter > ntot) return;
      size_t leave = m;
      for (size_t i = 0; i < m; ++i) {
        if (T[i][enter] <= 0) continue;
        if (leave == m) {
          leave = i;
          continue;
        }
        Rational cur = T[i][ntot] / T[i][enter];
        Rational best = T[leave][ntot] / T[leave][enter];
        if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
      }
      if (leave == m) throw Error("unit-cost LP is unbounded (internal error)");
      pivot(leave, enter);
    }
  };

  // entering columns are always structural, so artificials never re-enter
  // and basis[i] is either structural or row i's own artificial
  std::vector<Rational> cost1(ntot, Rational(0));
  for (size_t j = n; j < ntot; ++j) cost1[j] = 1;
  run(cost1, n);
  Rational phase1 = 0;
  for (size_t i = 0; i < m; ++i) phase1 += cost1[basis[i]] * T[i][ntot];
  if (phase1 != 0) return sol;  // infeasible

  // drive remaining artificial variables out of the basis; rows that cannot
  // be pivoted are redundant and get zeroed
  std::vector<char> redundant(m, 0);
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    size_t c = n;
    for (size_t j = 0; j < n && c == n; ++j)
      if (T[i][j] != 0) c = j;
    if (c < n)
      pivot(i, c);
    else
      redundant[i] = 1;
  }

  std::vector<Rational> cost2(ntot, Rational(0));
  for (size_t j = 0; j < n; ++j) cost2[j] = 1;
  for (size_t j = n; j < ntot; ++j) cost2[j] = Rational(1) + Rational(static_cast<int>(m));
  run(cost2, n);

  sol.feasible = true;
  sol.x.assign(n, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = T[i][ntot];
  sol.value = 0;
  for (const Rational& v : sol.x) sol.value += v;

  // dual: solve y^T A_B = 1 over the structural basic columns, pinning y to
  // zero on redundant rows (their equations are implied by the others)
  sol.y.assign(m, Rational(0));
  std::vector<size_t> live_rows, basic_cols;
  for (size_t i = 0; i < m; ++i) {
    if (!redundant[i]) live_rows.push_back(i);
    if (basis[i] < n) basic_cols.push_back(basis[i]);
  }
  size_t s = live_rows.size();
  if (s != basic_cols.size()) throw Error("basis bookkeeping mismatch (internal error)");
  if (s > 0) {
    // system rows indexed by basic columns j: sum_k y_{live k} A[k][j] = 1
    std::vector<std::vector<Rational>> G(s, std::vector<Rational>(s + 1));
    for (size_t r = 0; r < s; ++r) {
      for (size_t k = 0; k < s; ++k) G[r][k] = A[live_rows[k]][basic_cols[r]];
      G[r][s] = 1;
    }
    for (size_t col = 0; col < s; ++col) {
      size_t piv = col;
      while (piv < s && G[piv][col] == 0) ++piv;
      if (piv == s) throw Error("singular dual system (internal error)");
      std::swap(G[col], G[piv]);
      Rational d = G[col][col];
      for (Rational& v : G[col]) v /= d;
      for (size_t r = 0; r < s; ++r) {
        if (r == col || G[r][col] == 0) continue;
        Rational f = G[r][col];
        for (size_t k = col; k <= s; ++k) G[r][k] -= f * G[col][k];
      }
    }
    // undo the sign normalization applied to the rows above
    for (size_t k = 0; k < s; ++k)
      sol.y[live_rows[k]] = row_sign[live_rows[k]] > 0 ? G[k][s] : -G[k][s];
  }
  return sol;
}

// ---- presolve + LP driver ----

struct Program {
  const TwoComplexBall* X = nullptr;
  int fill_degree = 0;
  SparseRationalMatrix B;            // boundary matrix of fill_degree
  std::vector<char> allowed;         // per column
  std::map<int, Rational> residual;  // row -> remaining rhs
};

Program make_program(const TwoComplexBall& X, const RationalChain& c, bool interior_only) {
  if (c.degree != 0 && c.degree != 1)
    throw DegreeMismatch("filling_norm expects a chain of degree 0 or 1");
  Program p;
  p.X = &X;
  p.fill_degree = c.degree + 1;
  p.B = boundary_matrix(X, p.fill_degree);
  p.allowed.assign(static_cast<size_t>(p.B.cols), 1);
  if (interior_only) {
    const std::vector<char>& fr = p.fill_degree == 2 ? X.face_frontier : X.edge_frontier;
    for (int j = 0; j < p.B.cols; ++j)
      if (j < static_cast<int>(fr.size()) && fr[static_cast<size_t>(j)])
        p.allowed[static_cast<size_t>(j)] = 0;
  }
  for (const auto& [i, v] : c.coeffs) {
    if (i < 0 || i >= p.B.rows) throw DegreeMismatch("chain index out of range");
    p.residual[i] = v;
  }
  return p;
}

}  // namespace

FillingResult filling_norm(const TwoComplexBall& X, const RationalChain& c, bool interior_only) {
  Program p = make_program(X, c, interior_only);
  FillingResult res;
  res.witness.degree = p.fill_degree;

  // row-major support over free columns
  std::vector<std::map<int, Rational>> row(static_cast<size_t>(p.B.rows));
  std::vector<char> free_col = p.allowed;
  for (int j = 0; j < p.B.cols; ++j) {
    if (!free_col[static_cast<size_t>(j)]) continue;
    for (const auto& [i, v] : p.B.col[static_cast<size_t>(j)]) row[static_cast<size_t>(i)][j] = v;
  }

  auto fix_column = [&](int i, int j, const Rational& val) {
    res.certificate.fixings.push_back({i, j, val});
    if (val != 0) res.witness.add(j, val);
    free_col[static_cast<size_t>(j)] = 0;
    for (const auto& [r, v] : p.B.col[static_cast<size_t>(j)]) {
      row[static_cast<size_t>(r)].erase(j);
      if (val != 0) {
        Rational& t = p.residual[r];
        t -= val * v;
        if (t == 0) p.residual.erase(r);
      }
    }
  };

  // propagate rows whose equation has a single free column
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < p.B.rows; ++i) {
      auto& supp = row[static_cast<size_t>(i)];
      auto rit = p.residual.find(i);
      Rational rhs = rit == p.residual.end() ? Rational(0) : rit->second;
      if (supp.empty()) {
        if (rhs != 0) throw Infeasible("chain is not a boundary of the allowed cells");
        continue;
      }
      if (supp.size() == 1 && rhs != 0) {
        auto [j, coeff] = *supp.begin();
        fix_column(i, j, rhs / coeff);
        changed = true;
      }
    }
  }

  // reduced program: rows with remaining support, free columns
  std::vector<int> rows, cols;
  for (int i = 0; i < p.B.rows; ++i)
    if (!row[static_cast<size_t>(i)].empty() || p.residual.count(i)) rows.push_back(i);
  for (int j = 0; j < p.B.cols; ++j)
    if (free_col[static_cast<size_t>(j)]) cols.push_back(j);
  res.certificate.reduced_rows = rows;
  res.certificate.reduced_cols = cols;
  res.certificate.dual.assign(rows.size(), Rational(0));
  res.certificate.reduced_value = 0;

  if (!p.residual.empty()) {
    // split columns into positive and negative parts and run the simplex
    size_t m = rows.size(), n = cols.size();
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(2 * n, Rational(0)));
    std::vector<Rational> b(m, Rational(0));
    std::map<int, size_t> rowpos;
    for (size_t i = 0; i < m; ++i) rowpos[rows[i]] = i;
    for (size_t jj = 0; jj < n; ++jj)
      for (const auto& [i, v] : p.B.col[static_cast<size_t>(cols[jj])]) {
        auto it = rowpos.find(i);
        if (it == rowpos.end()) continue;  // row already satisfied with empty support
        A[it->second][jj] = v;
        A[it->second][n + jj] = -v;
      }
    for (const auto& [i, v] : p.residual) b[rowpos.at(i)] = v;

    LpSolution sol = solve_unit_cost_lp(std::move(A), std::move(b));
    if (!sol.feasible) throw Infeasible("chain is not a boundary of the allowed cells");
    for (size_t jj = 0; jj < n; ++jj) {
      Rational v = sol.x[jj] - sol.x[n + jj];
      if (v != 0) res.witness.add(cols[jj], v);
    }
    res.certificate.dual = sol.y;
    res.certificate.reduced_value = sol.value;
  }

  res.value = l1_norm(res.witness);
  return res;
}

bool verify_filling_certificate(const TwoComplexBall& X, const RationalChain& c,
                                const FillingResult& res, bool interior_only) {
  Program p;
  try {
    p = make_program(X, c, interior_only);
  } catch (const Error&) {
    return false;
  }
  if (res.witness.degree != p.fill_degree) return false;
  for (const auto& [j, v] : res.witness.coeffs)
    if (j < 0 || j >= p.B.cols || !p.allowed[static_cast<size_t>(j)]) return false;

  // (1) the witness is a fill of exactly c, (2) with l1 mass equal to value
  RationalChain bd = p.B.apply(res.witness);
  std::map<int, Rational> want;
  for (const auto& [i, v] : c.coeffs) want[i] = v;
  if (bd.coeffs != want) return false;
  if (l1_norm(res.witness) != res.value) return false;

  // (3) replay the fixings: each must be the unique free column of its row
  std::vector<std::map<int, Rational>> row(static_cast<size_t>(p.B.rows));
  std::vector<char> free_col = p.allowed;
  for (int j = 0; j < p.B.cols; ++j)
    if (free_col[static_cast<size_t>(j)])
      for (const auto& [i, v] : p.B.col[static_cast<size_t>(j)]) row[static_cast<size_t>(i)][j] = v;
  std::map<int, Rational> residual = want;
  Rational fixed_mass = 0;
  for (const auto& fx : res.certificate.fixings) {
    if (fx.col < 0 || fx.col >= p.B.cols || !free_col[static_cast<size_t>(fx.col)]) return false;
    auto& supp = row[static_cast<size_t>(fx.row)];
    if (supp.size() != 1 || supp.begin()->first != fx.col) return false;
    auto rit = residual.find(fx.row);
    Rational rhs = rit == residual.end() ? Rational(0) : rit->second;
    if (fx.value * supp.begin()->second != rhs) return false;
    free_col[static_cast<size_t>(fx.col)] = 0;
    for (const auto& [r, v] : p.B.col[static_cast<size_t>(fx.col)]) {
      row[static_cast<size_t>(r)].erase(fx.col);
      if (fx.value != 0) {
        Rational& t = residual[r];
        t -= fx.value * v;
        if (t == 0) residual.erase(r);
      }
    }
    fixed_mass += rat_abs(fx.value);
  }

  // (4) dual feasibility on the reduced program: |y . B_j| <= 1 per free col
  const auto& rows = res.certificate.reduced_rows;
  if (res.certificate.dual.size() != rows.size()) return false;
  std::map<int, Rational> yrow;
  for (size_t i = 0; i < rows.size(); ++i) yrow[rows[i]] = res.certificate.dual[i];
  for (int j = 0; j < p.B.cols; ++j) {
    if (!free_col[static_cast<size_t>(j)]) continue;
    Rational dot = 0;
    for (const auto& [i, v] : p.B.col[static_cast<size_t>(j)]) {
      auto it = yrow.find(i);
      if (it != yrow.end()) dot += it->second * v;
    }
    if (rat_abs(dot) > 1) return false;
  }

  // (5) strong duality for the reduced part, and value decomposition
  Rational ydotb = 0;
  for (const auto& [i, v] : residual) {
    auto it = yrow.find(i);
    if (it == yrow.end()) {
      if (v != 0) return false;  // leftover rhs outside the reduced rows
      continue;
    }
    ydotb += it->second * v;
  }
  if (ydotb != res.certificate.reduced_value) return false;
  return fixed_mass + res.certificate.reduced_value == res.value;
}

namespace {

// canonical form of a simple cycle (vertex sequence) under rotation/reversal
std::vector<int> cycle_canon(std::vector<int> vs) {
  auto least_rotation = [](std::vector<int> v) {
    std::vector<int> best = v;
    for (size_t i = 1; i < v.size(); ++i) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      if (v < best) best = v;
    }
    return best;
  };
  std::vector<int> rev(vs.rbegin(), vs.rend());
  return std::min(least_rotation(std::move(vs)), least_rotation(std::move(rev)));
}

}  // namespace

IsoperimetricScanReport isoperimetric_scan(const TwoComplexBall& X, int max_len,
                                           const std::vector<std::vector<int>>& automorphisms) {
  if (max_len < 3) throw Error("isoperimetric_scan needs max_len >= 3");
  IsoperimetricScanReport rep;
  rep.max_ratio = 0;

  std::vector<std::vector<int>> adj(static_cast<size_t>(X.num_vertices));
  for (auto [u, v] : X.edges) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::set<std::vector<int>> seen;
  std::map<int, IsoperimetricScanReport::Row> table;

  auto handle_cycle = [&](const std::vector<int>& vs) {
    std::vector<int> canon = cycle_canon(vs);
    if (seen.count(canon)) return;
    std::set<std::vector<int>> orbit{canon};
    for (const auto& pi : automorphisms) {
      std::vector<int> img(vs.size());
      bool ok = true;
      for (size_t i = 0; i < vs.size() && ok; ++i) {
        int t = vs[i] >= 0 && vs[i] < static_cast<int>(pi.size()) ? pi[static_cast<size_t>(vs[i])]
                                                                  : -1;
        ok = t >= 0;
        img[i] = t;
      }
      if (ok) orbit.insert(cycle_canon(std::move(img)));
    }
    if (seen.count(*orbit.begin())) {
      seen.insert(orbit.begin(), orbit.end());
      return;
    }
    seen.insert(orbit.begin(), orbit.end());

    CombinatorialLoop loop;
    loop.base = vs[0];
    for (size_t i = 0; i < vs.size(); ++i) {
      int a = vs[i], b = vs[(i + 1) % vs.size()];
      int e = X.edge_between(a, b);
      loop.steps.push_back(SignedEdge{e, X.edges[static_cast<size_t>(e)].first == a ? 1 : -1});
    }
    ++rep.loop_count;
    RationalChain chain = loop_to_chain(X, loop);

    FillingResult fill;
    try {
      fill = filling_norm(X, chain, /*interior_only=*/true);
    } catch (const Infeasible&) {
      try {
        filling_norm(X, chain, /*interior_only=*/false);
        rep.infeasible_at_radius.push_back(loop);
      } catch (const Infeasible&) {
        rep.nonbounding.push_back(loop);
      }
      return;
    }
    Rational ratio = fill.value / l1_norm(chain);
    int len = static_cast<int>(loop.length());
    auto [it, fresh] = table.try_emplace(len, IsoperimetricScanReport::Row{len, ratio, loop});
    if (!fresh && ratio > it->second.worst_ratio) {
      it->second.worst_ratio = ratio;
      it->second.witness = loop;
    }
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  };

  // enumerate simple cycles: base = least vertex of the cycle; reversal is
  // killed by requiring the second vertex to be smaller than the last
  std::vector<int> path;
  std::vector<char> used(static_cast<size_t>(X.num_vertices), 0);
  auto dfs = [&](auto&& self, int base, int at) -> void {
    for (int to : adj[static_cast<size_t>(at)]) {
      if (to == base && static_cast<int>(path.size()) >= 3 && path[1] < path.back()) {
        handle_cycle(path);
        continue;
      }
      if (to <= base || used[static_cast<size_t>(to)] ||
          static_cast<int>(path.size()) >= max_len)
        continue;
      used[static_cast<size_t>(to)] = 1;
      path.push_back(to);
      self(self, base, to);
      path.pop_back();
      used[static_cast<size_t>(to)] = 0;
    }
  };
  for (int base = 0; base < X.num_vertices; ++base) {
    path.assign(1, base);
    std::fill(used.begin(), used.end(), 0);
    used[static_cast<size_t>(base)] = 1;
    dfs(dfs, base, base);
  }

  for (auto& [len, r] : table) rep.per_length.push_back(r);
  return rep;
}

std::vector<DistortionRow> zero_dim_distortion(const GraphBall& Gb, int v0) {
  std::vector<int> dist = bfs_distances(Gb.graph, v0);
  for (int d : dist)
    if (d < 0) throw Disconnected("graph ball is not connected");
  std::vector<DistortionRow> out;
  for (int v = 0; v < Gb.graph.num_vertices; ++v) {
    DistortionRow r;
    r.vertex = v;
    r.distance = dist[static_cast<size_t>(v)];
    if (v == v0) {
      r.value = 0;
    } else {
      RationalChain c;
      c.degree = 0;
      c.add(v, 1);
      c.add(v0, -1);
      r.value = filling_norm(Gb.graph, c).value;
    }
    out.push_back(std::move(r));
  }
  return out;
}

TwoComplexBall make_grid_complex(int w, int h) {
  if (w < 1 || h < 1) throw Error("grid dimensions must be positive");
  auto vid = [&](int x, int y) { return y * (w + 1) + x; };
  std::vector<std::pair<int, int>> edges;
  std::map<std::pair<int, int>, int> eid;
  auto add_edge = [&](int u, int v) {
    eid[{u, v}] = static_cast<int>(edges.size());
    edges.push_back({u, v});
  };
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x) {
      if (x < w) add_edge(vid(x, y), vid(x + 1, y));
      if (y < h) add_edge(vid(x, y), vid(x, y + 1));
    }
  std::vector<std::vector<SignedEdge>> faces;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      faces.push_back({SignedEdge{eid.at({vid(x, y), vid(x + 1, y)}), 1},
                       SignedEdge{eid.at({vid(x + 1, y), vid(x + 1, y + 1)}), 1},
                       SignedEdge{eid.at({vid(x, y + 1), vid(x + 1, y + 1)}), -1},
                       SignedEdge{eid.at({vid(x, y), vid(x, y + 1)}), -1}});
  return make_two_complex((w + 1) * (h + 1), std::move(edges), std::move(faces));
}

}  // namespace ggt
