#pragma once

#include <optional>
#include <vector>

#include "ggt/amalgam.hpp"
#include "ggt/complex.hpp"
#include "ggt/smallcancel.hpp"

namespace ggt {

/// A radius-r ball of a coset graph (Bass-Serre tree or its quotient).
/// Vertices carry canonical shortest coset representatives; vertices at
/// distance exactly r from the base are flagged as frontier in the graph.
struct GraphBall {
  TwoComplexBall graph;  // no faces
  std::vector<AmalgamWord> labels;
  std::vector<Factor> coset_type;  // A-vertex or B-vertex
  std::vector<int> dist;           // graph distance from base
  int radius = 0;
  int base = 0;
};

struct PresentationComplexBall {
  TwoComplexBall complex;
  std::vector<int> relator_class;  // per face: index into the relator set
  std::vector<AmalgamWord> labels;
  std::vector<Factor> coset_type;
  std::vector<int> dist;
  int radius = 0;
  int base = 0;
};

/// Ball of the Bass-Serre tree of A *_C B around the base vertex (the coset
/// A). Vertices are cosets wA and wB; edges join cosets sharing a C-coset.
/// Throws BudgetExceeded when the vertex cap is hit.
GraphBall bass_serre_ball(const AmalgamContext& ctx, int radius, size_t vertex_budget = 200000);

/// Ball of the quotient graph T/N: tree vertices are identified when their
/// coset labels agree modulo the normal closure N of R, decided by Dehn's
/// algorithm. Requires check_cprime(R, 1/6); empty R returns the tree ball.
GraphBall cayley_abels_ball(const AmalgamContext& ctx, const SymmetrizedSet& R, int radius,
                            size_t vertex_budget = 200000);

/// Attaches one 2-cell per distinct unbased relator cycle that stays inside
/// the ball of the quotient graph. Faces with a frontier vertex on their
/// boundary are flagged as frontier faces.
PresentationComplexBall presentation_complex_ball(const AmalgamContext& ctx,
                                                  const SymmetrizedSet& R, int radius,
                                                  size_t vertex_budget = 200000);

struct ArcWitness {
  int face1 = -1;
  int face2 = -1;
  int arc_len = 0;
};

struct C6Report {
  bool satisfied = false;
  bool vacuous = false;  // no faces: nothing to violate
  bool boundaries_embedded = false;
  int max_arc_len = 0;
  std::optional<ArcWitness> witness;  // longest arc, or the first violation
};

/// For every pair of distinct faces, the longest common boundary arc must be
/// shorter than 1/6 of both boundary lengths, and every face boundary must
/// be an embedded cycle.
C6Report check_c6_complex(const PresentationComplexBall& Xb);

/// Gromov four-point condition over all vertex quadruples using BFS
/// distances; returns the maximal defect (a half-integer). Throws
/// Disconnected.
Rational four_point_delta(const GraphBall& Gb);

/// All-vertex BFS distances inside a TwoComplexBall's 1-skeleton; -1 marks
/// unreachable vertices.
std::vector<int> bfs_distances(const TwoComplexBall& X, int from);

}  // namespace ggt
