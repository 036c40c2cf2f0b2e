#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ggt {

/// Finite group given by its multiplication table. Identity and inverses are
/// computed and validated on construction; see make_group().
struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> mult;
  int identity = 0;
  std::vector<int> inv;
  std::vector<std::string> element_names;  // optional, may be empty

  int mul(int a, int b) const { return mult[a][b]; }
  int inverse(int a) const { return inv[a]; }

  std::string name_of(int g) const;
  std::optional<int> index_of_name(const std::string& name) const;
};

/// Subgroup of `parent` as an explicit element set plus a canonical left
/// transversal (smallest element index per coset, identity first).
struct SubgroupHandle {
  const FiniteGroup* parent = nullptr;
  std::vector<int> elements;          // sorted
  std::vector<int> left_transversal;  // representative per left coset tH
  std::vector<char> member;           // membership bitmap, size parent->order

  bool contains(int g) const { return member[static_cast<size_t>(g)] != 0; }
};

struct GroupHom {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<int> image;  // image[g] in target, size source->order

  int apply(int g) const { return image[static_cast<size_t>(g)]; }
};

struct HomCheckResult {
  bool multiplicative = false;
  bool injective = false;
  // witness pair (g, h) with image[g*h] != image[g]*image[h], valid when
  // multiplicative == false
  int witness_g = -1;
  int witness_h = -1;
};

// Associativity is checked exhaustively up to this order, by sampled triples
// above it.
struct GroupValidationConfig {
  int exhaustive_assoc_threshold = 64;
  int sampled_triples = 10000;
  std::uint64_t seed = 0x5eed;
};

/// Validates the table and computes identity and inverses.
/// Throws NotAGroup with the witnessing element/triple on failure.
FiniteGroup make_group(const std::vector<std::vector<int>>& table,
                       const std::vector<std::string>& names = {},
                       const GroupValidationConfig& cfg = {});

/// Smallest subgroup of G containing gens, with the canonical transversal.
SubgroupHandle subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens);

HomCheckResult check_hom(const GroupHom& f);

/// Cyclic group of order n (convenience constructor used by tests and tools).
FiniteGroup make_cyclic_group(int n);

}  // namespace ggt
