#include "ggt/complex.hpp"

#include <algorithm>
#include <set>

#include "ggt/errors.hpp"

namespace ggt {

int TwoComplexBall::edge_between(int u, int v) const {
  for (int e = 0; e < num_edges(); ++e) {
    auto [a, b] = edges[static_cast<size_t>(e)];
    if ((a == u && b == v) || (a == v && b == u)) return e;
  }
  return -1;
}

namespace {

int edge_source(const TwoComplexBall& X, const SignedEdge& s) {
  auto [u, v] = X.edges[static_cast<size_t>(s.edge)];
  return s.sign > 0 ? u : v;
}

int edge_target(const TwoComplexBall& X, const SignedEdge& s) {
  auto [u, v] = X.edges[static_cast<size_t>(s.edge)];
  return s.sign > 0 ? v : u;
}

}  // namespace

TwoComplexBall make_two_complex(int num_vertices, std::vector<std::pair<int, int>> edges,
                                std::vector<std::vector<SignedEdge>> faces) {
  if (num_vertices < 0) throw Error("negative vertex count");
  TwoComplexBall X;
  X.num_vertices = num_vertices;
  X.edges = std::move(edges);
  X.faces = std::move(faces);

  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : X.edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
      throw Error("edge endpoint out of range");
    if (u == v) throw Error("loop edge not allowed");
    if (!seen.insert(std::minmax(u, v)).second) throw Error("multi-edge not allowed");
  }
  for (const auto& f : X.faces) {
    if (f.empty()) throw Error("empty face boundary");
    for (const SignedEdge& s : f) {
      if (s.edge < 0 || s.edge >= X.num_edges()) throw Error("face references invalid edge");
      if (s.sign != 1 && s.sign != -1) throw Error("face edge sign must be +1 or -1");
    }
    for (size_t i = 0; i < f.size(); ++i) {
      const SignedEdge& cur = f[i];
      const SignedEdge& nxt = f[(i + 1) % f.size()];
      if (edge_target(X, cur) != edge_source(X, nxt))
        throw NotClosed("face boundary is not a closed edge path");
    }
  }

  // d1 after d2 = 0 follows from closedness, but assert the matrix identity
  SparseRationalMatrix z = boundary_matrix(X, 1).multiply(boundary_matrix(X, 2));
  for (const auto& c : z.col)
    if (!c.empty()) throw Error("boundary composition is nonzero");

  X.vertex_frontier.assign(static_cast<size_t>(num_vertices), 0);
  X.edge_frontier.assign(X.edges.size(), 0);
  X.face_frontier.assign(X.faces.size(), 0);
  return X;
}

Rational RationalChain::get(int i) const {
  auto it = coeffs.find(i);
  return it == coeffs.end() ? Rational(0) : it->second;
}

void RationalChain::add(int i, const Rational& v) {
  if (v == 0) return;
  auto [it, fresh] = coeffs.try_emplace(i, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) coeffs.erase(it);
  }
}

bool chain_is_integral(const RationalChain& a) {
  for (const auto& [i, v] : a.coeffs)
    if (!is_integral(v)) return false;
  return true;
}

Rational SparseRationalMatrix::get(int i, int j) const {
  const auto& c = col[static_cast<size_t>(j)];
  auto it = c.find(i);
  return it == c.end() ? Rational(0) : it->second;
}

void SparseRationalMatrix::set(int i, int j, const Rational& v) {
  if (i < 0 || j < 0 || i >= rows || j >= cols) throw Error("matrix index out of range");
  auto& c = col[static_cast<size_t>(j)];
  if (v == 0)
    c.erase(i);
  else
    c[i] = v;
}

SparseRationalMatrix SparseRationalMatrix::multiply(const SparseRationalMatrix& rhs) const {
  if (cols != rhs.rows) throw DegreeMismatch("matrix dimensions do not compose");
  SparseRationalMatrix out(rows, rhs.cols);
  for (int j = 0; j < rhs.cols; ++j) {
    std::map<int, Rational>& oc = out.col[static_cast<size_t>(j)];
    for (const auto& [k, v] : rhs.col[static_cast<size_t>(j)])
      for (const auto& [i, w] : col[static_cast<size_t>(k)]) {
        Rational& t = oc[i];
        t += v * w;
        if (t == 0) oc.erase(i);
      }
  }
  return out;
}

RationalChain SparseRationalMatrix::apply(const RationalChain& x) const {
  RationalChain out;
  for (const auto& [j, v] : x.coeffs) {
    if (j < 0 || j >= cols) throw DegreeMismatch("chain index out of matrix range");
    for (const auto& [i, w] : col[static_cast<size_t>(j)]) out.add(i, v * w);
  }
  return out;
}

SparseRationalMatrix identity_matrix(int n) {
  SparseRationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SparseRationalMatrix boundary_matrix(const TwoComplexBall& X, int degree) {
  if (degree == 1) {
    SparseRationalMatrix m(X.num_vertices, X.num_edges());
    for (int e = 0; e < X.num_edges(); ++e) {
      auto [u, v] = X.edges[static_cast<size_t>(e)];
      m.set(v, e, m.get(v, e) + 1);
      m.set(u, e, m.get(u, e) - 1);
    }
    return m;
  }
  if (degree == 2) {
    SparseRationalMatrix m(X.num_edges(), X.num_faces());
    for (int f = 0; f < X.num_faces(); ++f)
      for (const SignedEdge& s : X.faces[static_cast<size_t>(f)])
        m.set(s.edge, f, m.get(s.edge, f) + s.sign);
    return m;
  }
  throw DegreeMismatch("boundary matrix defined in degrees 1 and 2");
}

RationalChain boundary(const TwoComplexBall& X, const RationalChain& alpha) {
  if (alpha.degree == 0) throw DegreeZero("0-chains have no boundary");
  if (alpha.degree != 1 && alpha.degree != 2) throw DegreeMismatch("degree must be 0, 1 or 2");
  RationalChain out = boundary_matrix(X, alpha.degree).apply(alpha);
  out.degree = alpha.degree - 1;
  return out;
}

Rational l1_norm(const RationalChain& alpha) {
  Rational s = 0;
  for (const auto& [i, v] : alpha.coeffs) s += rat_abs(v);
  return s;
}

Rational l1_operator_norm(const SparseRationalMatrix& M) {
  Rational best = 0;
  for (const auto& c : M.col) {
    Rational s = 0;
    for (const auto& [i, v] : c) s += rat_abs(v);
    best = std::max(best, s);
  }
  return best;
}

namespace {

void check_chain_map(const std::vector<SparseRationalMatrix>& m,
                     const std::vector<SparseRationalMatrix>& Dsrc,
                     const std::vector<SparseRationalMatrix>& Ddst, const char* name) {
  for (size_t i = 1; i < m.size(); ++i) {
    if (Ddst[i].multiply(m[i]) != m[i - 1].multiply(Dsrc[i]))
      throw NotChainMap(std::string(name) + " does not commute with the boundary in degree " +
                        std::to_string(i));
  }
}

}  // namespace

Rational chain_homotopy_check(const HomotopyData& d) {
  size_t n = d.f.size();
  if (d.g.size() != n || d.h.size() != n || d.Dsrc.size() != n || d.Ddst.size() != n)
    throw DegreeMismatch("graded families must cover the same degrees");
  if (n == 0) throw DegreeMismatch("empty homotopy data");
  check_chain_map(d.f, d.Dsrc, d.Ddst, "f");
  check_chain_map(d.g, d.Ddst, d.Dsrc, "g");

  for (size_t i = 0; i < n; ++i) {
    SparseRationalMatrix lhs(d.f[i].cols, d.f[i].cols);
    if (i + 1 < n) lhs = d.Dsrc[i + 1].multiply(d.h[i]);
    if (i > 0) {
      SparseRationalMatrix t = d.h[i - 1].multiply(d.Dsrc[i]);
      for (int j = 0; j < t.cols; ++j)
        for (const auto& [r, v] : t.col[static_cast<size_t>(j)]) lhs.set(r, j, lhs.get(r, j) + v);
    }
    SparseRationalMatrix rhs = d.g[i].multiply(d.f[i]);
    for (int j = 0; j < rhs.cols; ++j) rhs.set(j, j, rhs.get(j, j) - 1);
    if (lhs != rhs) {
      int bad = 0;
      for (int j = 0; j < lhs.cols; ++j)
        if (lhs.col[static_cast<size_t>(j)] != rhs.col[static_cast<size_t>(j)]) {
          bad = j;
          break;
        }
      throw HomotopyIdentityFails("homotopy identity fails in degree " + std::to_string(i) +
                                      " at column " + std::to_string(bad),
                                  static_cast<int>(i), bad);
    }
  }

  Rational c = 0;
  for (size_t i = 0; i < n; ++i) {
    c = std::max(c, l1_operator_norm(d.f[i]));
    c = std::max(c, l1_operator_norm(d.g[i]));
    c = std::max(c, l1_operator_norm(d.h[i]));
  }
  return c;
}

void validate_loop(const TwoComplexBall& X, const CombinatorialLoop& c) {
  if (c.base < 0 || c.base >= X.num_vertices) throw NotClosed("base vertex out of range");
  int at = c.base;
  for (const SignedEdge& s : c.steps) {
    if (s.edge < 0 || s.edge >= X.num_edges()) throw NotClosed("loop references invalid edge");
    if (edge_source(X, s) != at) throw NotClosed("loop step does not start at current vertex");
    at = edge_target(X, s);
  }
  if (at != c.base) throw NotClosed("loop does not return to its base vertex");
}

RationalChain loop_to_chain(const TwoComplexBall& X, const CombinatorialLoop& c) {
  validate_loop(X, c);
  RationalChain out;
  out.degree = 1;
  for (const SignedEdge& s : c.steps) out.add(s.edge, s.sign);
  return out;
}

bool preceq(const RationalChain& nu, const RationalChain& mu) {
  if (nu.degree != mu.degree) throw DegreeMismatch("preceq requires equal degrees");
  for (const auto& [e, t] : nu.coeffs)
    if (t * t > t * mu.get(e)) return false;
  return true;
}

namespace {

// Signed adjacency of the directed support multigraph Xi: remaining flow per
// edge, positive along orientation.
struct FlowState {
  const TwoComplexBall* X;
  std::map<int, Integer> flow;  // edge -> signed remaining multiplicity

  int out_target(int vertex, int edge) const {
    auto [u, v] = X->edges[static_cast<size_t>(edge)];
    auto it = flow.find(edge);
    if (it == flow.end() || it->second == 0) return -1;
    if (it->second > 0 && u == vertex) return v;
    if (it->second < 0 && v == vertex) return u;
    return -1;
  }
};

bool dls_path(const FlowState& fs, int at, int target, int depth, std::vector<char>& used,
              std::vector<int>& path_edges) {
  if (at == target) return true;
  if (depth == 0) return false;
  for (const auto& [e, f] : fs.flow) {
    int to = fs.out_target(at, e);
    if (to < 0 || used[static_cast<size_t>(to)]) continue;
    used[static_cast<size_t>(to)] = 1;
    path_edges.push_back(e);
    if (dls_path(fs, to, target, depth - 1, used, path_edges)) return true;
    path_edges.pop_back();
    used[static_cast<size_t>(to)] = 0;
  }
  return false;
}

}  // namespace

RationalChain extract_path_chain(const TwoComplexBall& X, const RationalChain& mu, int u, int v,
                                 int m) {
  if (mu.degree != 1) throw DegreeMismatch("extract_path_chain expects a 1-chain");
  if (!chain_is_integral(mu)) throw NotIntegral("chain must be integral");
  if (m <= 0 || u == v) throw BoundaryMismatch("need m > 0 and distinct endpoints");
  RationalChain want;
  want.degree = 0;
  want.add(v, m);
  want.add(u, -m);
  RationalChain got = boundary(X, mu);
  if (!(got.coeffs == want.coeffs)) throw BoundaryMismatch("boundary(mu) != m(v - u)");

  FlowState fs{&X, {}};
  for (const auto& [e, c] : mu.coeffs) fs.flow[e] = numerator(c);

  // iterative deepening keeps the extracted path short and deterministic
  std::vector<int> path_edges;
  std::vector<char> used(static_cast<size_t>(X.num_vertices), 0);
  bool found = false;
  for (int depth = 1; depth <= X.num_vertices && !found; ++depth) {
    std::fill(used.begin(), used.end(), 0);
    used[static_cast<size_t>(u)] = 1;
    path_edges.clear();
    found = dls_path(fs, u, v, depth, used, path_edges);
  }
  if (!found) throw BoundaryMismatch("no directed path from u to v in the support of mu");

  RationalChain nu;
  nu.degree = 1;
  for (int e : path_edges) nu.add(e, fs.flow[e] > 0 ? 1 : -1);
  return nu;
}

std::vector<CombinatorialLoop> decompose_cycle(const TwoComplexBall& X, const RationalChain& z) {
  if (z.degree != 1) throw DegreeMismatch("decompose_cycle expects a 1-chain");
  if (!chain_is_integral(z)) throw NotIntegral("chain must be integral");
  if (!boundary(X, z).is_zero()) throw NotACycle("chain has nonzero boundary");

  FlowState fs{&X, {}};
  for (const auto& [e, c] : z.coeffs) fs.flow[e] = numerator(c);

  std::vector<CombinatorialLoop> loops;
  while (true) {
    // first edge with remaining flow, walked in flow direction
    int start_edge = -1;
    for (const auto& [e, f] : fs.flow)
      if (f != 0) {
        start_edge = e;
        break;
      }
    if (start_edge < 0) break;

    auto [eu, ev] = X.edges[static_cast<size_t>(start_edge)];
    int start = fs.flow[start_edge] > 0 ? eu : ev;

    // walk along out-flow until a vertex repeats, then extract that cycle
    std::vector<int> walk_vertices{start};
    std::vector<int> walk_edges;
    std::map<int, size_t> first_visit{{start, 0}};
    size_t cycle_from = 0;
    for (int at = start;;) {
      int next_edge = -1, next_to = -1;
      for (const auto& [e, f] : fs.flow) {
        int to = fs.out_target(at, e);
        if (to >= 0) {
          next_edge = e;
          next_to = to;
          break;
        }
      }
      if (next_edge < 0) throw NotACycle("flow conservation violated");  // unreachable for cycles
      walk_edges.push_back(next_edge);
      walk_vertices.push_back(next_to);
      auto it = first_visit.find(next_to);
      if (it != first_visit.end()) {
        cycle_from = it->second;
        break;
      }
      first_visit[next_to] = walk_vertices.size() - 1;
      at = next_to;
    }

    CombinatorialLoop loop;
    loop.base = walk_vertices[cycle_from];
    for (size_t i = cycle_from; i < walk_edges.size(); ++i) {
      int e = walk_edges[i];
      int sign = fs.flow[e] > 0 ? 1 : -1;
      loop.steps.push_back(SignedEdge{e, sign});
      fs.flow[e] -= sign;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace ggt
