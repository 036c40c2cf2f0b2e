#include <doctest.h>

#include <algorithm>
#include <array>

#include "ggt/errors.hpp"
#include "ggt/group.hpp"

using namespace ggt;

namespace {

// Symmetric group S3 as permutations of {0,1,2}; element i encodes the i-th
// permutation in the list below, table computed by composition.
std::vector<std::vector<int>> s3_table() {
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(c);
    }
  return t;
}

}  // namespace

TEST_CASE("cyclic group construction") {
  auto G = make_cyclic_group(6);
  CHECK(G.order == 6);
  CHECK(G.identity == 0);
  for (int a = 0; a < 6; ++a) {
    CHECK(G.mul(a, G.inverse(a)) == G.identity);
    for (int b = 0; b < 6; ++b) CHECK(G.mul(a, b) == (a + b) % 6);
  }
}

TEST_CASE("S3 validates and has the right structure") {
  auto G = make_group(s3_table());
  CHECK(G.order == 6);
  CHECK(G.identity == 0);
  int nontrivial_involutions = 0;
  for (int a = 1; a < 6; ++a)
    if (G.mul(a, a) == 0) ++nontrivial_involutions;
  CHECK(nontrivial_involutions == 3);
}

TEST_CASE("make_group rejects non-groups") {
  SUBCASE("not a latin square") {
    std::vector<std::vector<int>> t = {{0, 0}, {1, 1}};
    CHECK_THROWS_AS(make_group(t), NotAGroup);
  }
  SUBCASE("out of range entry") {
    std::vector<std::vector<int>> t = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(make_group(t), NotAGroup);
  }
  SUBCASE("non-associative loop") {
    // Smallest nonassociative loop (order 5); it is a latin square with
    // two-sided identity 0 but (1*1)*2 != 1*(1*2).
    std::vector<std::vector<int>> t = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(make_group(t), NotAGroup);
  }
  SUBCASE("ragged table") {
    std::vector<std::vector<int>> t = {{0, 1}, {1}};
    CHECK_THROWS_AS(make_group(t), NotAGroup);
  }
}

TEST_CASE("subgroup closure in cyclic groups") {
  auto G = make_cyclic_group(12);
  SUBCASE("single generator") {
    auto H = subgroup_closure(G, {4});
    CHECK(H.elements == std::vector<int>{0, 4, 8});
    CHECK(H.left_transversal.size() == 4);
    CHECK(H.left_transversal[0] == 0);
    // transversal meets every coset exactly once
    std::vector<char> hit(12, 0);
    for (int t : H.left_transversal)
      for (int h : H.elements) {
        int g = G.mul(t, h);
        CHECK(!hit[g]);
        hit[g] = 1;
      }
    CHECK(std::count(hit.begin(), hit.end(), 1) == 12);
  }
  SUBCASE("two generators span everything") {
    auto H = subgroup_closure(G, {4, 6});
    CHECK(H.elements.size() == 6);  // gcd(4,6)=2
    CHECK(subgroup_closure(G, {4, 3}).elements.size() == 12);
  }
  SUBCASE("empty generating set") {
    auto H = subgroup_closure(G, {});
    CHECK(H.elements == std::vector<int>{0});
  }
}

TEST_CASE("subgroup closure in S3") {
  auto G = make_group(s3_table());
  auto H = subgroup_closure(G, {1});  // a 3-cycle
  CHECK(H.elements.size() == 3);
  CHECK(H.left_transversal.size() == 2);
  CHECK(subgroup_closure(G, {3}).elements.size() == 2);
  CHECK(subgroup_closure(G, {1, 3}).elements.size() == 6);
}

TEST_CASE("hom checking") {
  auto Z2 = make_cyclic_group(2);
  auto Z4 = make_cyclic_group(4);
  SUBCASE("good injective hom Z2 -> Z4") {
    GroupHom f{&Z2, &Z4, {0, 2}};
    auto r = check_hom(f);
    CHECK(r.multiplicative);
    CHECK(r.injective);
  }
  SUBCASE("non-multiplicative map") {
    GroupHom f{&Z2, &Z4, {0, 1}};  // 1+1=0 but 1*1=2 != 0
    auto r = check_hom(f);
    CHECK(!r.multiplicative);
    CHECK(f.apply(r.witness_g) != -1);  // witness indices are populated
    int lhs = Z4.mul(f.apply(r.witness_g), f.apply(r.witness_h));
    int rhs = f.apply(Z2.mul(r.witness_g, r.witness_h));
    CHECK(lhs != rhs);
  }
  SUBCASE("non-injective hom") {
    GroupHom f{&Z4, &Z2, {0, 1, 0, 1}};
    auto r = check_hom(f);
    CHECK(r.multiplicative);
    CHECK(!r.injective);
  }
}

TEST_CASE("element names resolve") {
  auto t = std::vector<std::vector<int>>{{0, 1}, {1, 0}};
  auto G = make_group(t, {"e", "s"});
  CHECK(G.name_of(1) == "s");
  CHECK(G.index_of_name("s") == 1);
  CHECK(!G.index_of_name("missing").has_value());
}
