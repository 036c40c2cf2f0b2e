#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ggt/rational.hpp"

namespace ggt {

/// Signed reference to an oriented edge; sign -1 means traversal against the
/// chosen orientation.
struct SignedEdge {
  int edge = 0;
  int sign = 1;

  bool operator==(const SignedEdge&) const = default;
  auto operator<=>(const SignedEdge&) const = default;
};

/// A finite cellular 2-complex (or a truncated ball of one). The 1-skeleton
/// is a simple graph: no loops, no multi-edges. Frontier flags mark cells on
/// the truncation boundary so norm computations can exclude them.
struct TwoComplexBall {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // oriented (u, v), u != v
  std::vector<std::vector<SignedEdge>> faces;
  std::vector<char> vertex_frontier;
  std::vector<char> edge_frontier;
  std::vector<char> face_frontier;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  /// Index of the edge joining u and v in either orientation, or -1.
  int edge_between(int u, int v) const;
};

/// Validates all structural invariants (simple graph, closed face boundaries,
/// d1 after d2 = 0) and populates default frontier flags; throws Error.
TwoComplexBall make_two_complex(int num_vertices, std::vector<std::pair<int, int>> edges,
                                std::vector<std::vector<SignedEdge>> faces);

struct RationalChain {
  int degree = 0;
  std::map<int, Rational> coeffs;  // cell index -> nonzero coefficient

  bool is_zero() const { return coeffs.empty(); }
  Rational get(int i) const;
  void add(int i, const Rational& v);  // drops entries that become zero
};

bool chain_is_integral(const RationalChain& a);

/// Sparse exact-rational matrix stored column-major.
struct SparseRationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::map<int, Rational>> col;  // col[j]: row -> nonzero entry

  SparseRationalMatrix() = default;
  SparseRationalMatrix(int r, int c) : rows(r), cols(c), col(static_cast<size_t>(c)) {}
  Rational get(int i, int j) const;
  void set(int i, int j, const Rational& v);
  SparseRationalMatrix multiply(const SparseRationalMatrix& rhs) const;
  RationalChain apply(const RationalChain& x) const;  // degree kept by caller
  bool operator==(const SparseRationalMatrix&) const = default;
};

SparseRationalMatrix identity_matrix(int n);

/// Boundary matrix of X in degree d (1 or 2): columns indexed by d-cells.
SparseRationalMatrix boundary_matrix(const TwoComplexBall& X, int degree);

/// Linear extension of cell boundaries; degree drops by one. Throws
/// DegreeZero for degree-0 input.
RationalChain boundary(const TwoComplexBall& X, const RationalChain& alpha);

Rational l1_norm(const RationalChain& alpha);

/// Tight l1 -> l1 operator norm: maximum column mass.
Rational l1_operator_norm(const SparseRationalMatrix& M);

/// Graded data for a chain-homotopy verification between complexes
/// Csrc and Cdst in degrees 0..n:
///   f[i]: Csrc_i -> Cdst_i,  g[i]: Cdst_i -> Csrc_i,  h[i]: Csrc_i -> Csrc_{i+1},
///   Dsrc[i]: Csrc_i -> Csrc_{i-1} for i >= 1 (same shape for Ddst).
struct HomotopyData {
  std::vector<SparseRationalMatrix> f, g, h;
  std::vector<SparseRationalMatrix> Dsrc, Ddst;  // Dsrc[0], Ddst[0] unused
};

/// Verifies that f and g are chain maps and that
/// Dsrc_{i+1} h_i + h_{i-1} Dsrc_i = g_i f_i - Id holds exactly in every
/// degree; returns the homotopy constant max_i of the operator norms of
/// f_i, g_i, h_i. Throws NotChainMap or HomotopyIdentityFails.
Rational chain_homotopy_check(const HomotopyData& d);

struct CombinatorialLoop {
  int base = 0;
  std::vector<SignedEdge> steps;  // closed edge path from base

  size_t length() const { return steps.size(); }
};

/// Checks the loop is a valid closed path in X; throws NotClosed.
void validate_loop(const TwoComplexBall& X, const CombinatorialLoop& c);

/// Induced 1-chain (signed edge traversal counts); backtracking cancels.
RationalChain loop_to_chain(const TwoComplexBall& X, const CombinatorialLoop& c);

/// nu preceq mu: t_e^2 <= t_e * s_e for every cell e.
bool preceq(const RationalChain& nu, const RationalChain& mu);

/// Given integral mu with boundary m(v - u), extracts a vertex-injective
/// directed path chain nu from u to v with entries in {-1, 0, 1},
/// boundary(nu) = v - u, nu preceq mu and norm additivity
/// l1(mu) = l1(mu - nu) + l1(nu). Throws NotIntegral, BoundaryMismatch.
RationalChain extract_path_chain(const TwoComplexBall& X, const RationalChain& mu, int u, int v,
                                 int m);

/// Norm-additive decomposition of an integral 1-cycle into combinatorial
/// loops: z = sum of induced chains, l1-additively. Throws NotACycle,
/// NotIntegral.
std::vector<CombinatorialLoop> decompose_cycle(const TwoComplexBall& X, const RationalChain& z);

}  // namespace ggt
