#pragma once

#include <optional>
#include <vector>

#include "ggt/complex.hpp"
#include "ggt/geometry.hpp"
#include "ggt/rational.hpp"

namespace ggt {

/// Optimality certificate for a filling-norm computation. `fixings` replays
/// the presolve propagation (each step fixes the unique free column of a
/// row); `dual` is a feasible dual vector for the reduced program with
/// objective value matching the reduced part of the optimum.
struct LpCertificate {
  struct Fixing {
    int row = 0;  // d-cell whose equation forces the value
    int col = 0;  // (d+1)-cell being fixed
    Rational value;
  };
  std::vector<Fixing> fixings;
  std::vector<int> reduced_rows;  // d-cells of the reduced program
  std::vector<int> reduced_cols;  // (d+1)-cells still free after presolve
  std::vector<Rational> dual;     // parallel to reduced_rows
  Rational reduced_value;         // optimum of the reduced program
};

struct FillingResult {
  Rational value;
  RationalChain witness;  // degree d+1, boundary(witness) = input
  LpCertificate certificate;
};

/// Exact minimizer of ||x||_1 subject to boundary(x) = c, fills in degree
/// c.degree + 1. With interior_only, frontier (d+1)-cells are excluded.
/// Throws Infeasible when c is not a boundary, DegreeMismatch otherwise.
FillingResult filling_norm(const TwoComplexBall& X, const RationalChain& c,
                           bool interior_only = false);

/// Independent re-verification of a filling certificate using only matrix
/// arithmetic; returns false on any discrepancy.
bool verify_filling_certificate(const TwoComplexBall& X, const RationalChain& c,
                                const FillingResult& res, bool interior_only = false);

struct IsoperimetricScanReport {
  struct Row {
    int length = 0;
    Rational worst_ratio;
    CombinatorialLoop witness;
  };
  Rational max_ratio;  // over loops fillable with interior faces
  size_t loop_count = 0;
  std::vector<Row> per_length;
  // loops whose fill needs frontier faces (feasible only with them)
  std::vector<CombinatorialLoop> infeasible_at_radius;
  // loops that bound nothing even with frontier faces (H1 != 0 witnesses)
  std::vector<CombinatorialLoop> nonbounding;
};

/// Enumerates simple (vertex-injective) combinatorial loops of length 3..max_len
/// up to rotation, reversal and the supplied vertex automorphisms, fills each
/// with interior faces, and tabulates the worst value / ||loop||_1 ratio per
/// length. Backtracking loops are redundant: their chains cancel.
IsoperimetricScanReport isoperimetric_scan(const TwoComplexBall& X, int max_len,
                                           const std::vector<std::vector<int>>& automorphisms = {});

struct DistortionRow {
  int vertex = 0;
  int distance = 0;
  Rational value;  // filling norm of (vertex - v0) in degree 1
};

/// Filling norm of v - v0 for every vertex v, next to the BFS distance.
/// Throws Disconnected.
std::vector<DistortionRow> zero_dim_distortion(const GraphBall& Gb, int v0);

/// w x h grid of unit square faces: the flat control complex.
TwoComplexBall make_grid_complex(int w, int h);

}  // namespace ggt
