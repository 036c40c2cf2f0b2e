#include <doctest.h>

#include <algorithm>

#include "ggt/errors.hpp"
#include "ggt/json_io.hpp"
#include "test_util.hpp"

using namespace ggt;
using testutil::make_z4_z6_context;

TEST_CASE("group json round trip") {
  auto G = make_cyclic_group(6);
  G.element_names = {"e", "a", "a2", "a3", "a4", "a5"};
  auto j = group_to_json(G);
  auto G2 = group_from_json(j);
  CHECK(G2.order == 6);
  CHECK(G2.mult == G.mult);
  CHECK(G2.element_names == G.element_names);
  SUBCASE("rejects inconsistent order") {
    j["order"] = 5;
    CHECK_THROWS_AS(group_from_json(j), ParseError);
  }
  SUBCASE("rejects non-group tables") {
    auto bad = group_to_json(G);
    bad["mult"][0][0] = 1;
    CHECK_THROWS_AS(group_from_json(bad), Error);
  }
}

TEST_CASE("word json round trip") {
  auto ctx = make_z4_z6_context();
  auto w = parse_word(*ctx, "A1 B2 A3 B4");
  auto j = word_to_json(w);
  CHECK(word_from_json(*ctx, j) == w);
  CHECK(j.is_array());
  CHECK(j[0]["factor"] == "A");
  CHECK(j[0]["elem"] == 1);
  SUBCASE("rejects out-of-range elements") {
    j[0]["elem"] = 11;
    CHECK_THROWS_AS(word_from_json(*ctx, j), ParseError);
  }
  SUBCASE("rejects unknown factors") {
    j[0]["factor"] = "Q";
    CHECK_THROWS_AS(word_from_json(*ctx, j), ParseError);
  }
}

TEST_CASE("complex json round trip with signed 1-based face edges") {
  auto X = make_two_complex(3, {{0, 1}, {1, 2}, {0, 2}}, {{{0, 1}, {1, 1}, {2, -1}}});
  auto j = complex_to_json(X);
  // edge 0 traversed forward serializes as +1, edge 2 backward as -3
  CHECK(j["faces"][0][0] == 1);
  CHECK(j["faces"][0][2] == -3);
  auto X2 = complex_from_json(j);
  CHECK(X2.edges == X.edges);
  CHECK(X2.faces == X.faces);
  CHECK(X2.num_vertices == 3);
  SUBCASE("index 0 in a face is rejected") {
    j["faces"][0][0] = 0;
    CHECK_THROWS_AS(complex_from_json(j), ParseError);
  }
  SUBCASE("structural validation still runs") {
    auto bad = complex_to_json(X);
    bad["edges"][0] = Json::array({0, 0});
    CHECK_THROWS_AS(complex_from_json(bad), Error);
  }
}

TEST_CASE("chain json uses exact rational strings") {
  RationalChain c;
  c.degree = 1;
  c.add(0, Rational(1, 3));
  c.add(5, Rational(-7, 2));
  auto j = chain_to_json(c);
  CHECK(j["deg"] == 1);
  CHECK(j["coeffs"]["0"] == "1/3");
  CHECK(j["coeffs"]["5"] == "-7/2");
  auto c2 = chain_from_json(j);
  CHECK(c2.degree == 1);
  CHECK(c2.coeffs == c.coeffs);
  SUBCASE("malformed rationals are rejected") {
    j["coeffs"]["0"] = "1/0";
    CHECK_THROWS_AS(chain_from_json(j), ParseError);
  }
}

TEST_CASE("matrix json round trip") {
  SparseRationalMatrix m(3, 2);
  m.set(0, 0, Rational(2, 5));
  m.set(2, 1, Rational(-4));
  auto j = matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  auto m2 = matrix_from_json(j);
  CHECK(m2 == m);
}

TEST_CASE("homotopy data json") {
  SparseRationalMatrix id1 = identity_matrix(1);
  Json j;
  j["f"] = Json::array({matrix_to_json(id1)});
  j["g"] = Json::array({matrix_to_json(id1)});
  j["h"] = Json::array({matrix_to_json(SparseRationalMatrix(0, 1))});
  j["Dsrc"] = Json::array({matrix_to_json(SparseRationalMatrix())});
  j["Ddst"] = Json::array({matrix_to_json(SparseRationalMatrix())});
  auto d = homotopy_data_from_json(j);
  CHECK(d.f.size() == 1);
  CHECK(chain_homotopy_check(d) == Rational(1));
}

TEST_CASE("report serialization smoke checks") {
  auto ctx = make_z4_z6_context();
  auto R = symmetrize(*ctx, {parse_word(*ctx, "A1 B1 A1 B1 A1 B1 A1 B1 A1 B1 A1 B1")});
  auto rep = check_cprime(R, Rational(1, 6));
  auto j = cancellation_report_to_json(*ctx, R, rep);
  CHECK(j["satisfied"] == true);
  CHECK(j["lambda"] == "1/6");
  CHECK(j["max_piece_len"] == 1);

  auto T = bass_serre_ball(*ctx, 3);
  auto jt = graph_ball_to_json(*ctx, T);
  CHECK(jt["vertices"] == T.graph.num_vertices);
  CHECK(jt["vertex_info"].size() == static_cast<size_t>(T.graph.num_vertices));
  auto txt = edge_list_text(T.graph);
  CHECK(std::count(txt.begin(), txt.end(), '\n') == T.graph.num_edges());

  auto X = make_grid_complex(2, 2);
  RationalChain s;
  s.degree = 2;
  s.add(0, Rational(1));
  auto c = boundary(X, s);
  auto res = filling_norm(X, c);
  auto jf = filling_result_to_json(res);
  CHECK(jf["value"] == "1");
  CHECK(jf.contains("certificate"));

  auto scan = isoperimetric_scan(X, 6);
  auto js = scan_report_to_json(scan);
  CHECK(js.contains("per_length"));
  auto csv = scan_report_to_csv(scan);
  CHECK(csv.find("length") != std::string::npos);
}
