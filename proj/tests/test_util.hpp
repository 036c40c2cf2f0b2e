#pragma once

#include <memory>
#include <random>

#include "ggt/amalgam.hpp"
#include "ggt/group.hpp"

namespace ggt::testutil {

// Z/4 *_{Z/2} Z/6, the standard example (isomorphic to SL(2,Z)).
inline std::unique_ptr<AmalgamContext> make_z4_z6_context() {
  auto A = make_cyclic_group(4);
  auto B = make_cyclic_group(6);
  auto C = make_cyclic_group(2);
  std::vector<int> iotaA = {0, 2};
  std::vector<int> iotaB = {0, 3};
  return std::make_unique<AmalgamContext>(std::move(A), std::move(B), std::move(C),
                                          std::move(iotaA), std::move(iotaB));
}

// Random reduced word: alternating factors, every letter outside iota(C).
inline AmalgamWord random_reduced_word(const AmalgamContext& ctx, std::mt19937_64& rng,
                                       int length) {
  AmalgamWord w;
  Factor f = (rng() & 1) ? Factor::A : Factor::B;
  for (int i = 0; i < length; ++i) {
    const auto& G = ctx.factor(f);
    int g;
    do {
      g = static_cast<int>(rng() % static_cast<std::uint64_t>(G.order));
    } while (ctx.in_edge_subgroup(f, g));
    w.letters.push_back({f, g});
    f = other(f);
  }
  return w;
}

// Random word with no reducedness guarantee (letters may lie in iota(C),
// factors may repeat).
inline AmalgamWord random_raw_word(const AmalgamContext& ctx, std::mt19937_64& rng, int length) {
  AmalgamWord w;
  for (int i = 0; i < length; ++i) {
    Factor f = (rng() & 1) ? Factor::A : Factor::B;
    const auto& G = ctx.factor(f);
    w.letters.push_back({f, static_cast<int>(rng() % static_cast<std::uint64_t>(G.order))});
  }
  return w;
}

}  // namespace ggt::testutil
