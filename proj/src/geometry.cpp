#include "ggt/geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ggt/errors.hpp"

namespace ggt {

std::vector<int> bfs_distances(const TwoComplexBall& X, int from) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(X.num_vertices));
  for (auto [u, v] : X.edges) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  std::vector<int> dist(static_cast<size_t>(X.num_vertices), -1);
  std::deque<int> q{from};
  dist[static_cast<size_t>(from)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : adj[static_cast<size_t>(u)])
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

namespace {

bool word_less(const AmalgamWord& a, const AmalgamWord& b) {
  if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

// Canonical label of the coset w * F: the (length, lex)-least canonical form
// of w * g over g in the factor F.
AmalgamWord coset_label(const AmalgamContext& ctx, const AmalgamWord& w, Factor f) {
  AmalgamWord best;
  bool have = false;
  for (int g = 0; g < ctx.factor(f).order; ++g) {
    AmalgamWord u = w;
    u.letters.push_back(Letter{f, g});
    AmalgamWord c = normal_form(ctx, u);
    if (!have || word_less(c, best)) {
      best = std::move(c);
      have = true;
    }
  }
  return best;
}

void finish_graph(GraphBall& ball, std::vector<std::pair<int, int>> edges) {
  ball.graph = make_two_complex(static_cast<int>(ball.labels.size()), std::move(edges), {});
  for (int v = 0; v < ball.graph.num_vertices; ++v)
    ball.graph.vertex_frontier[static_cast<size_t>(v)] =
        ball.dist[static_cast<size_t>(v)] >= ball.radius;
  for (int e = 0; e < ball.graph.num_edges(); ++e) {
    auto [u, v] = ball.graph.edges[static_cast<size_t>(e)];
    ball.graph.edge_frontier[static_cast<size_t>(e)] =
        ball.graph.vertex_frontier[static_cast<size_t>(u)] ||
        ball.graph.vertex_frontier[static_cast<size_t>(v)];
  }
}

}  // namespace

GraphBall bass_serre_ball(const AmalgamContext& ctx, int radius, size_t vertex_budget) {
  if (radius < 0) throw Error("radius must be nonnegative");
  GraphBall ball;
  ball.radius = radius;
  ball.base = 0;

  std::map<std::pair<Factor, AmalgamWord>, int> index;
  std::vector<std::pair<int, int>> edges;
  AmalgamWord empty;
  AmalgamWord base_label = coset_label(ctx, empty, Factor::A);
  index[{Factor::A, base_label}] = 0;
  ball.labels.push_back(base_label);
  ball.coset_type.push_back(Factor::A);
  ball.dist.push_back(0);

  for (size_t head = 0; head < ball.labels.size(); ++head) {
    if (ball.dist[head] >= radius) continue;
    Factor f = ball.coset_type[head];
    Factor g = other(f);
    // one neighbor per C-coset inside this vertex's factor coset
    for (int t : ctx.transversal(f)) {
      AmalgamWord w = ball.labels[head];
      w.letters.push_back(Letter{f, t});
      AmalgamWord nb = coset_label(ctx, normal_form(ctx, w), g);
      auto [it, fresh] = index.try_emplace({g, nb}, static_cast<int>(ball.labels.size()));
      if (fresh) {
        if (ball.labels.size() >= vertex_budget) throw BudgetExceeded("vertex budget exhausted");
        ball.labels.push_back(nb);
        ball.coset_type.push_back(g);
        ball.dist.push_back(ball.dist[head] + 1);
      }
      int to = it->second;
      int lo = std::min(static_cast<int>(head), to);
      int hi = std::max(static_cast<int>(head), to);
      if (lo != hi &&
          std::find(edges.begin(), edges.end(), std::pair<int, int>(lo, hi)) == edges.end())
        edges.push_back({lo, hi});
    }
  }
  finish_graph(ball, std::move(edges));
  return ball;
}

namespace {

// Decides wA == w'A (resp. B) in the quotient G/N: some a in the factor has
// w' * a * w^{-1} in N. Words short relative to the relators cannot lie in N
// (Greendlinger), which keeps the scan cheap inside small balls.
bool cosets_equal_mod_n(const AmalgamContext& ctx, const SymmetrizedSet& R, Factor f,
                        const AmalgamWord& w, const AmalgamWord& wp) {
  AmalgamWord winv = invert(ctx, w);
  for (int g = 0; g < ctx.factor(f).order; ++g) {
    AmalgamWord u = wp;
    u.letters.push_back(Letter{f, g});
    u.letters.insert(u.letters.end(), winv.letters.begin(), winv.letters.end());
    AmalgamWord nf = normal_form(ctx, u);
    if (nf.empty()) return true;
    if (R.empty() || 2 * nf.letters.size() <= R.min_length) continue;
    if (is_trivial_in_quotient(R, nf)) return true;
  }
  return false;
}

struct QuotientBall {
  GraphBall ball;
  // quotient vertex index of the coset w * F, resolved through the merge map
  std::map<std::pair<Factor, AmalgamWord>, int> tree_index;
  std::vector<int> merged_to;  // tree vertex -> quotient vertex
};

QuotientBall build_quotient_ball(const AmalgamContext& ctx, const SymmetrizedSet& R, int radius,
                                 size_t vertex_budget) {
  if (!R.empty() && !R.cprime_one_sixth)
    throw SmallCancellationViolated("quotient construction requires a C'(1/6) set");
  GraphBall tree = bass_serre_ball(ctx, radius, vertex_budget);
  int n = tree.graph.num_vertices;

  // union-find over tree vertices
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  if (!R.empty()) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (tree.coset_type[static_cast<size_t>(i)] != tree.coset_type[static_cast<size_t>(j)])
          continue;
        if (find(i) == find(j)) continue;
        if (cosets_equal_mod_n(ctx, R, tree.coset_type[static_cast<size_t>(i)],
                               tree.labels[static_cast<size_t>(i)],
                               tree.labels[static_cast<size_t>(j)]))
          parent[static_cast<size_t>(std::max(find(i), find(j)))] = std::min(find(i), find(j));
      }
  }

  // compress to quotient vertices, keeping the least label per class
  std::vector<int> cls(static_cast<size_t>(n), -1);
  QuotientBall q;
  q.merged_to.assign(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (cls[static_cast<size_t>(r)] < 0) {
      cls[static_cast<size_t>(r)] = static_cast<int>(q.ball.labels.size());
      q.ball.labels.push_back(tree.labels[static_cast<size_t>(r)]);
      q.ball.coset_type.push_back(tree.coset_type[static_cast<size_t>(r)]);
    }
    q.merged_to[static_cast<size_t>(i)] = cls[static_cast<size_t>(r)];
    if (word_less(tree.labels[static_cast<size_t>(i)],
                  q.ball.labels[static_cast<size_t>(cls[static_cast<size_t>(r)])]))
      q.ball.labels[static_cast<size_t>(cls[static_cast<size_t>(r)])] =
          tree.labels[static_cast<size_t>(i)];
  }

  std::set<std::pair<int, int>> edges;
  for (auto [u, v] : tree.graph.edges) {
    int a = q.merged_to[static_cast<size_t>(u)];
    int b = q.merged_to[static_cast<size_t>(v)];
    if (a != b) edges.insert(std::minmax(a, b));
  }

  q.ball.radius = radius;
  q.ball.base = q.merged_to[static_cast<size_t>(tree.base)];
  q.ball.dist.assign(q.ball.labels.size(), 0);
  finish_graph(q.ball, {edges.begin(), edges.end()});
  q.ball.dist = bfs_distances(q.ball.graph, q.ball.base);
  for (int v = 0; v < q.ball.graph.num_vertices; ++v)
    q.ball.graph.vertex_frontier[static_cast<size_t>(v)] =
        q.ball.dist[static_cast<size_t>(v)] >= radius || q.ball.dist[static_cast<size_t>(v)] < 0;
  for (int e = 0; e < q.ball.graph.num_edges(); ++e) {
    auto [u, v] = q.ball.graph.edges[static_cast<size_t>(e)];
    q.ball.graph.edge_frontier[static_cast<size_t>(e)] =
        q.ball.graph.vertex_frontier[static_cast<size_t>(u)] ||
        q.ball.graph.vertex_frontier[static_cast<size_t>(v)];
  }

  // coset label -> quotient vertex, for face tracing
  for (int i = 0; i < n; ++i)
    q.tree_index[{tree.coset_type[static_cast<size_t>(i)], tree.labels[static_cast<size_t>(i)]}] =
        q.merged_to[static_cast<size_t>(i)];
  return q;
}

}  // namespace

GraphBall cayley_abels_ball(const AmalgamContext& ctx, const SymmetrizedSet& R, int radius,
                            size_t vertex_budget) {
  return build_quotient_ball(ctx, R, radius, vertex_budget).ball;
}

namespace {

// Canonical key of an unbased face cycle: least rotation of the signed edge
// sequence and of its reversal.
std::vector<SignedEdge> face_key(const std::vector<SignedEdge>& cycle) {
  auto least_rotation = [](std::vector<SignedEdge> v) {
    std::vector<SignedEdge> best = v;
    for (size_t i = 1; i < v.size(); ++i) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      if (v < best) best = v;
    }
    return best;
  };
  std::vector<SignedEdge> rev(cycle.rbegin(), cycle.rend());
  for (SignedEdge& s : rev) s.sign = -s.sign;
  return std::min(least_rotation(cycle), least_rotation(rev));
}

}  // namespace

PresentationComplexBall presentation_complex_ball(const AmalgamContext& ctx,
                                                  const SymmetrizedSet& R, int radius,
                                                  size_t vertex_budget) {
  QuotientBall q = build_quotient_ball(ctx, R, radius, vertex_budget);
  const GraphBall& g = q.ball;

  std::vector<std::vector<SignedEdge>> faces;
  std::vector<int> relator_class;
  std::vector<char> face_frontier;
  std::map<std::vector<SignedEdge>, int> seen;

  auto vertex_of = [&](const AmalgamWord& w, Factor f) -> int {
    auto it = q.tree_index.find({f, coset_label(ctx, w, f)});
    return it == q.tree_index.end() ? -1 : it->second;
  };

  for (int v0 = 0; v0 < g.graph.num_vertices; ++v0) {
    for (int r = 0; r < static_cast<int>(R.relators.size()); ++r) {
      const AmalgamWord& rel = R.relators[static_cast<size_t>(r)];
      if (rel.letters.size() < 3) continue;  // too short to bound a simple 2-cell
      if (rel.letters.front().factor != g.coset_type[static_cast<size_t>(v0)]) continue;
      // trace v0 -> v0 reading rel; vertices alternate coset types
      AmalgamWord w = g.labels[static_cast<size_t>(v0)];
      std::vector<SignedEdge> cycle;
      int prev = v0;
      bool ok = true;
      for (size_t i = 0; i + 1 < rel.letters.size() && ok; ++i) {
        w.letters.push_back(rel.letters[i]);
        w = normal_form(ctx, w);
        int nxt = vertex_of(w, rel.letters[i + 1].factor);
        ok = nxt >= 0 && nxt != prev;
        if (ok) {
          int e = g.graph.edge_between(prev, nxt);
          ok = e >= 0;
          if (ok) {
            auto [eu, ev] = g.graph.edges[static_cast<size_t>(e)];
            cycle.push_back(SignedEdge{e, eu == prev ? 1 : -1});
            prev = nxt;
          }
        }
      }
      if (!ok || prev == v0) continue;
      int e = g.graph.edge_between(prev, v0);
      if (e < 0) continue;
      auto [eu, ev] = g.graph.edges[static_cast<size_t>(e)];
      cycle.push_back(SignedEdge{e, eu == prev ? 1 : -1});

      std::vector<SignedEdge> key = face_key(cycle);
      if (seen.try_emplace(std::move(key), static_cast<int>(faces.size())).second) {
        bool frontier = false;
        for (const SignedEdge& s : cycle)
          frontier = frontier || g.graph.edge_frontier[static_cast<size_t>(s.edge)];
        faces.push_back(std::move(cycle));
        relator_class.push_back(r);
        face_frontier.push_back(frontier);
      }
    }
  }

  PresentationComplexBall out;
  out.complex = make_two_complex(g.graph.num_vertices, g.graph.edges, std::move(faces));
  out.complex.vertex_frontier = g.graph.vertex_frontier;
  out.complex.edge_frontier = g.graph.edge_frontier;
  out.complex.face_frontier = std::move(face_frontier);
  out.relator_class = std::move(relator_class);
  out.labels = g.labels;
  out.coset_type = g.coset_type;
  out.dist = g.dist;
  out.radius = g.radius;
  out.base = g.base;
  return out;
}

namespace {

int common_arc_length(const std::vector<SignedEdge>& f1, const std::vector<SignedEdge>& f2) {
  // longest run of consecutive shared edges between the two boundary cycles,
  // in either relative direction; runs are capped at the cycle lengths
  int best = 0;
  int n1 = static_cast<int>(f1.size());
  int n2 = static_cast<int>(f2.size());
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<SignedEdge> g2 = f2;
    if (dir == 1) {
      std::reverse(g2.begin(), g2.end());
      for (SignedEdge& s : g2) s.sign = -s.sign;
    }
    for (int o1 = 0; o1 < n1; ++o1)
      for (int o2 = 0; o2 < n2; ++o2) {
        int run = 0;
        int cap = std::min(n1, n2);
        while (run < cap &&
               f1[static_cast<size_t>((o1 + run) % n1)].edge ==
                   g2[static_cast<size_t>((o2 + run) % n2)].edge)
          ++run;
        best = std::max(best, run);
      }
  }
  return best;
}

bool boundary_embedded(const TwoComplexBall& X, const std::vector<SignedEdge>& f) {
  std::set<int> verts;
  for (const SignedEdge& s : f) {
    auto [u, v] = X.edges[static_cast<size_t>(s.edge)];
    int from = s.sign > 0 ? u : v;
    if (!verts.insert(from).second) return false;
  }
  return true;
}

}  // namespace

C6Report check_c6_complex(const PresentationComplexBall& Xb) {
  C6Report rep;
  const TwoComplexBall& X = Xb.complex;
  if (X.faces.empty()) {
    rep.vacuous = true;
    rep.satisfied = true;
    rep.boundaries_embedded = true;
    return rep;
  }
  rep.boundaries_embedded = true;
  for (const auto& f : X.faces)
    rep.boundaries_embedded = rep.boundaries_embedded && boundary_embedded(X, f);

  bool arcs_ok = true;
  for (int i = 0; i < X.num_faces(); ++i)
    for (int j = i + 1; j < X.num_faces(); ++j) {
      int arc = common_arc_length(X.faces[static_cast<size_t>(i)], X.faces[static_cast<size_t>(j)]);
      bool ok = 6 * arc < static_cast<int>(X.faces[static_cast<size_t>(i)].size()) &&
                6 * arc < static_cast<int>(X.faces[static_cast<size_t>(j)].size());
      if (arc > rep.max_arc_len || (!ok && arcs_ok)) rep.witness = ArcWitness{i, j, arc};
      rep.max_arc_len = std::max(rep.max_arc_len, arc);
      arcs_ok = arcs_ok && ok;
    }
  rep.satisfied = arcs_ok && rep.boundaries_embedded;
  return rep;
}

Rational four_point_delta(const GraphBall& Gb) {
  int n = Gb.graph.num_vertices;
  if (n == 0) throw Disconnected("empty graph");
  std::vector<std::vector<int>> d(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    d[static_cast<size_t>(v)] = bfs_distances(Gb.graph, v);
    for (int w : d[static_cast<size_t>(v)])
      if (w < 0) throw Disconnected("graph ball is not connected");
  }
  long best = 0;  // defect doubled, to stay integral
  for (int w = 0; w < n; ++w)
    for (int x = w; x < n; ++x)
      for (int y = x; y < n; ++y)
        for (int z = y; z < n; ++z) {
          long s1 = d[static_cast<size_t>(w)][static_cast<size_t>(x)] +
                    d[static_cast<size_t>(y)][static_cast<size_t>(z)];
          long s2 = d[static_cast<size_t>(w)][static_cast<size_t>(y)] +
                    d[static_cast<size_t>(x)][static_cast<size_t>(z)];
          long s3 = d[static_cast<size_t>(w)][static_cast<size_t>(z)] +
                    d[static_cast<size_t>(x)][static_cast<size_t>(y)];
          long hi = std::max({s1, s2, s3});
          long mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
          best = std::max(best, hi - mid);
        }
  return Rational(best, 2);
}

}  // namespace ggt
