#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ggt/group.hpp"

namespace ggt {

enum class Factor : std::uint8_t { A = 0, B = 1 };

inline Factor other(Factor f) { return f == Factor::A ? Factor::B : Factor::A; }

struct Letter {
  Factor factor = Factor::A;
  int elem = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Word over the factors of A *_C B. Canonical (normal-form) words fold the
/// C-part into the first letter and use the fixed coset representatives for
/// every following letter; see normal_form().
struct AmalgamWord {
  std::vector<Letter> letters;

  size_t length() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const AmalgamWord&, const AmalgamWord&) = default;
  friend auto operator<=>(const AmalgamWord&, const AmalgamWord&) = default;
};

struct AmalgamWordHash {
  size_t operator()(const AmalgamWord& w) const noexcept;
};

/// The amalgam A *_C B given by the two factor groups, the edge group C, and
/// the embeddings iotaA: C -> A, iotaB: C -> B. Construction validates the
/// embeddings and precomputes coset decomposition tables for both factors:
/// every g decomposes uniquely as g = iota(c) * rep(g) with rep(g) the
/// canonical representative (identity on iota(C), minimal element index
/// otherwise).
class AmalgamContext {
 public:
  AmalgamContext(FiniteGroup A, FiniteGroup B, FiniteGroup C, std::vector<int> iotaA,
                 std::vector<int> iotaB);

  AmalgamContext(const AmalgamContext&) = delete;
  AmalgamContext& operator=(const AmalgamContext&) = delete;

  const FiniteGroup& A() const { return A_; }
  const FiniteGroup& B() const { return B_; }
  const FiniteGroup& C() const { return C_; }
  const FiniteGroup& factor(Factor f) const { return f == Factor::A ? A_ : B_; }
  const std::vector<int>& iota(Factor f) const { return f == Factor::A ? iotaA_ : iotaB_; }

  bool in_edge_subgroup(Factor f, int g) const { return tables(f).in_h[static_cast<size_t>(g)]; }
  /// Preimage under iota; only valid when in_edge_subgroup(f, g).
  int iota_inverse(Factor f, int g) const { return tables(f).inv_iota[static_cast<size_t>(g)]; }
  int coset_rep(Factor f, int g) const { return tables(f).rep[static_cast<size_t>(g)]; }
  int coset_cpart(Factor f, int g) const { return tables(f).cpart[static_cast<size_t>(g)]; }
  const std::vector<int>& transversal(Factor f) const { return tables(f).transversal; }
  int factor_index(Factor f) const { return static_cast<int>(tables(f).transversal.size()); }

 private:
  struct FactorTables {
    std::vector<char> in_h;
    std::vector<int> inv_iota;
    std::vector<int> rep;    // canonical representative of the coset iota(C)*g
    std::vector<int> cpart;  // c with g = iota(c) * rep(g)
    std::vector<int> transversal;
  };

  const FactorTables& tables(Factor f) const { return f == Factor::A ? tabA_ : tabB_; }

  FiniteGroup A_, B_, C_;
  std::vector<int> iotaA_, iotaB_;
  FactorTables tabA_, tabB_;
};

/// Canonical form c * t1 * ... * tn: global C-part plus alternating coset
/// representatives, none of which lies in iota(C).
struct NormalForm {
  int c = 0;  // element index in C
  std::vector<Letter> reps;

  size_t length() const { return reps.empty() ? (size_t)0 : reps.size(); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

NormalForm to_normal_form(const AmalgamContext& ctx, const AmalgamWord& w);
/// Left-multiplies nf in place by the single letter (factor, g). O(1) group ops.
void nf_left_multiply(const AmalgamContext& ctx, NormalForm& nf, Factor f, int g);
AmalgamWord from_normal_form(const AmalgamContext& ctx, const NormalForm& nf);

AmalgamWord normal_form(const AmalgamContext& ctx, const AmalgamWord& w);

bool is_reduced(const AmalgamContext& ctx, const AmalgamWord& w);
bool is_cyclically_reduced(const AmalgamContext& ctx, const AmalgamWord& w);
bool is_weakly_cyclically_reduced(const AmalgamContext& ctx, const AmalgamWord& w);

AmalgamWord multiply(const AmalgamContext& ctx, const AmalgamWord& u, const AmalgamWord& v);
AmalgamWord invert(const AmalgamContext& ctx, const AmalgamWord& u);
AmalgamWord conjugate(const AmalgamContext& ctx, const AmalgamWord& u, const AmalgamWord& g);

/// All weakly cyclically reduced words obtained from w by cyclic permutation
/// and conjugation by elements of the embedded C, in canonical form, sorted.
/// Throws NotWeaklyCyclicallyReduced when w is not weakly cyclically reduced.
std::vector<AmalgamWord> weakly_cyclic_conjugates(const AmalgamContext& ctx,
                                                  const AmalgamWord& w);

/// Parses "A3 B1 A2"; tokens are a factor tag followed by an element name or
/// index. Throws ParseError with the offending token position.
AmalgamWord parse_word(const AmalgamContext& ctx, const std::string& text);
std::string format_word(const AmalgamContext& ctx, const AmalgamWord& w);

}  // namespace ggt
