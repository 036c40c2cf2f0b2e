#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ggt/amalgam.hpp"
#include "ggt/rational.hpp"

namespace ggt {

/// Finite relator set closed under inversion and weakly cyclically reduced
/// conjugation, with a prefix index used by the Dehn-algorithm reducer.
/// Immutable after symmetrize().
struct SymmetrizedSet {
  const AmalgamContext* ctx = nullptr;
  // canonical forms, sorted by (length, letters)
  std::vector<AmalgamWord> relators;
  std::vector<NormalForm> nfs;  // parallel to relators
  size_t min_length = 0;
  size_t max_length = 0;

  // tseq hash of prefixes of length L > |r|/2 -> (relator index, L); sorted
  // by hash for binary search
  std::vector<std::pair<std::uint64_t, std::pair<int, int>>> half_prefix_index;
  bool cprime_one_sixth = true;  // cached check_cprime(R, 1/6).satisfied

  bool empty() const { return relators.empty(); }
};

struct PieceWitness {
  AmalgamWord piece;
  int relator1 = -1;  // indices into relators
  int relator2 = -1;
};

struct CancellationReport {
  Rational lambda;
  int max_piece_len = 0;
  size_t min_relator_len = 0;
  bool satisfied = false;
  // offending piece and the relator whose C'(lambda) bound it breaks; or the
  // too-short relator when the |r| > 1/lambda clause fails (piece empty then)
  std::optional<PieceWitness> witness;
};

SymmetrizedSet symmetrize(const AmalgamContext& ctx, const std::vector<AmalgamWord>& r0);

struct PieceQueryResult {
  bool piece = false;
  int witness1 = -1;
  int witness2 = -1;
};

/// True iff b is a common prefix, up to right multiplication by the embedded
/// C, of two distinct relators. b must be nonempty and canonical.
PieceQueryResult is_piece(const SymmetrizedSet& R, const AmalgamWord& b);

/// Exhaustive C'(lambda) verdict: every piece prefix b of a relator r must
/// satisfy |b| < lambda*|r|, and |r| > 1/lambda for all r.
CancellationReport check_cprime(const SymmetrizedSet& R, const Rational& lambda);

/// Length of the longest common prefix class of relators i and j (exact,
/// letter-by-letter; used by check_cprime witnesses and test oracles).
int common_prefix_class_length(const SymmetrizedSet& R, int i, int j);

/// Canonical form of (length-k prefix of r) * iota(h).
NormalForm prefix_variant(const AmalgamContext& ctx, const NormalForm& r, int k, int h);

/// Dehn's algorithm: repeatedly replaces a subword matching more than half of
/// a relator by the inverse of the relator's complement, until no such
/// subword exists. Requires check_cprime(R, 1/6) to be satisfied.
AmalgamWord dehn_reduce(const SymmetrizedSet& R, const AmalgamWord& w, int step_budget = 100000);

bool is_trivial_in_quotient(const SymmetrizedSet& R, const AmalgamWord& w,
                            int step_budget = 100000);

/// Search harness: random weakly cyclically reduced words of length `len`
/// until the symmetrized closure satisfies C'(lambda). Deterministic in seed.
/// Returns the seed word; throws Error when attempts are exhausted.
AmalgamWord search_cprime_relator(const AmalgamContext& ctx, int len, const Rational& lambda,
                                  std::uint64_t seed, int max_attempts = 64);

}  // namespace ggt
