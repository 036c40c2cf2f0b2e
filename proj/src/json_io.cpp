#include "ggt/json_io.hpp"

#include <sstream>

#include "ggt/errors.hpp"

namespace ggt {

namespace {

Json rat_json(const Rational& r) { return rat_to_string(r); }

Rational rat_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw ParseError("expected a rational as integer or \"p/q\" string");
}

}  // namespace

FiniteGroup group_from_json(const Json& j) {
  if (!j.contains("order") || !j.contains("mult"))
    throw ParseError("group JSON needs \"order\" and \"mult\"");
  int n = j.at("order").get<int>();
  std::vector<std::vector<int>> mult = j.at("mult").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(mult.size()) != n)
    throw ParseError("group order does not match the multiplication table");
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  return make_group(mult, names);
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order;
  j["mult"] = g.mult;
  j["names"] = g.element_names;
  return j;
}

AmalgamWord word_from_json(const AmalgamContext& ctx, const Json& j) {
  AmalgamWord w;
  for (const Json& l : j) {
    std::string f = l.at("factor").get<std::string>();
    if (f != "A" && f != "B") throw ParseError("letter factor must be \"A\" or \"B\"");
    Factor fac = f == "A" ? Factor::A : Factor::B;
    int e = l.at("elem").get<int>();
    if (e < 0 || e >= ctx.factor(fac).order) throw ParseError("letter element out of range");
    w.letters.push_back(Letter{fac, e});
  }
  return w;
}

Json word_to_json(const AmalgamWord& w) {
  Json j = Json::array();
  for (const Letter& l : w.letters)
    j.push_back({{"factor", l.factor == Factor::A ? "A" : "B"}, {"elem", l.elem}});
  return j;
}

std::vector<AmalgamWord> relators_from_json(const AmalgamContext& ctx, const Json& j) {
  std::vector<AmalgamWord> out;
  for (const Json& r : j.at("relators")) out.push_back(word_from_json(ctx, r));
  return out;
}

Json cancellation_report_to_json(const AmalgamContext& ctx, const SymmetrizedSet& R,
                                 const CancellationReport& rep) {
  Json j;
  j["lambda"] = rat_json(rep.lambda);
  j["satisfied"] = rep.satisfied;
  j["max_piece_len"] = rep.max_piece_len;
  j["min_relator_len"] = rep.min_relator_len;
  j["relator_count"] = R.relators.size();
  if (rep.witness) {
    Json w;
    w["piece"] = word_to_json(rep.witness->piece);
    w["piece_text"] = format_word(ctx, rep.witness->piece);
    w["relator1"] = rep.witness->relator1;
    w["relator2"] = rep.witness->relator2;
    j["witness"] = w;
  }
  return j;
}

TwoComplexBall complex_from_json(const Json& j) {
  int n = j.at("vertices").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const Json& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  std::vector<std::vector<SignedEdge>> faces;
  if (j.contains("faces"))
    for (const Json& f : j.at("faces")) {
      std::vector<SignedEdge> face;
      for (const Json& s : f) {
        int v = s.get<int>();
        if (v == 0) throw ParseError("face edge indices are signed and 1-based; 0 is invalid");
        face.push_back(SignedEdge{std::abs(v) - 1, v > 0 ? 1 : -1});
      }
      faces.push_back(std::move(face));
    }
  return make_two_complex(n, std::move(edges), std::move(faces));
}

Json complex_to_json(const TwoComplexBall& X) {
  Json j;
  j["vertices"] = X.num_vertices;
  Json edges = Json::array();
  for (auto [u, v] : X.edges) edges.push_back({u, v});
  j["edges"] = edges;
  Json faces = Json::array();
  for (const auto& f : X.faces) {
    Json face = Json::array();
    for (const SignedEdge& s : f) face.push_back(s.sign * (s.edge + 1));
    faces.push_back(face);
  }
  j["faces"] = faces;
  return j;
}

RationalChain chain_from_json(const Json& j) {
  RationalChain c;
  c.degree = j.at("deg").get<int>();
  if (c.degree < 0 || c.degree > 2) throw ParseError("chain degree must be 0, 1 or 2");
  if (j.contains("coeffs"))
    for (const auto& [k, v] : j.at("coeffs").items()) {
      size_t pos = 0;
      int idx = std::stoi(k, &pos);
      if (pos != k.size() || idx < 0) throw ParseError("chain index must be a nonnegative integer");
      c.add(idx, rat_from(v));
    }
  return c;
}

Json chain_to_json(const RationalChain& c) {
  Json j;
  j["deg"] = c.degree;
  Json coeffs = Json::object();
  for (const auto& [i, v] : c.coeffs) coeffs[std::to_string(i)] = rat_json(v);
  j["coeffs"] = coeffs;
  return j;
}

Json graph_ball_to_json(const AmalgamContext& ctx, const GraphBall& b) {
  Json j = complex_to_json(b.graph);
  j["radius"] = b.radius;
  j["base"] = b.base;
  Json verts = Json::array();
  for (int v = 0; v < b.graph.num_vertices; ++v)
    verts.push_back({{"label", format_word(ctx, b.labels[static_cast<size_t>(v)])},
                     {"type", b.coset_type[static_cast<size_t>(v)] == Factor::A ? "A" : "B"},
                     {"dist", b.dist[static_cast<size_t>(v)]},
                     {"frontier", static_cast<bool>(b.graph.vertex_frontier[static_cast<size_t>(v)])}});
  j["vertex_info"] = verts;
  return j;
}

Json presentation_ball_to_json(const AmalgamContext& ctx, const PresentationComplexBall& b) {
  Json j = complex_to_json(b.complex);
  j["radius"] = b.radius;
  j["base"] = b.base;
  j["relator_class"] = b.relator_class;
  Json verts = Json::array();
  for (int v = 0; v < b.complex.num_vertices; ++v)
    verts.push_back({{"label", format_word(ctx, b.labels[static_cast<size_t>(v)])},
                     {"type", b.coset_type[static_cast<size_t>(v)] == Factor::A ? "A" : "B"},
                     {"dist", b.dist[static_cast<size_t>(v)]}});
  j["vertex_info"] = verts;
  Json fr = Json::array();
  for (char f : b.complex.face_frontier) fr.push_back(static_cast<bool>(f));
  j["face_frontier"] = fr;
  return j;
}

std::string edge_list_text(const TwoComplexBall& X) {
  std::ostringstream os;
  for (auto [u, v] : X.edges) os << u << " " << v << "\n";
  return os.str();
}

Json c6_report_to_json(const C6Report& rep) {
  Json j;
  j["satisfied"] = rep.satisfied;
  j["vacuous"] = rep.vacuous;
  j["boundaries_embedded"] = rep.boundaries_embedded;
  j["max_arc_len"] = rep.max_arc_len;
  if (rep.witness)
    j["witness"] = {{"face1", rep.witness->face1},
                    {"face2", rep.witness->face2},
                    {"arc_len", rep.witness->arc_len}};
  return j;
}

Json filling_result_to_json(const FillingResult& res) {
  Json j;
  j["value"] = rat_json(res.value);
  j["witness"] = chain_to_json(res.witness);
  Json cert;
  Json fixings = Json::array();
  for (const auto& f : res.certificate.fixings)
    fixings.push_back({{"row", f.row}, {"col", f.col}, {"value", rat_json(f.value)}});
  cert["fixings"] = fixings;
  cert["reduced_rows"] = res.certificate.reduced_rows;
  cert["reduced_cols"] = res.certificate.reduced_cols;
  Json dual = Json::array();
  for (const Rational& y : res.certificate.dual) dual.push_back(rat_json(y));
  cert["dual"] = dual;
  cert["reduced_value"] = rat_json(res.certificate.reduced_value);
  j["certificate"] = cert;
  return j;
}

namespace {

Json loop_to_json(const CombinatorialLoop& l) {
  Json j;
  j["base"] = l.base;
  Json steps = Json::array();
  for (const SignedEdge& s : l.steps) steps.push_back(s.sign * (s.edge + 1));
  j["steps"] = steps;
  return j;
}

}  // namespace

Json scan_report_to_json(const IsoperimetricScanReport& rep) {
  Json j;
  j["max_ratio"] = rat_json(rep.max_ratio);
  j["loop_count"] = rep.loop_count;
  Json table = Json::array();
  for (const auto& row : rep.per_length)
    table.push_back({{"length", row.length},
                     {"worst_ratio", rat_json(row.worst_ratio)},
                     {"witness", loop_to_json(row.witness)}});
  j["per_length"] = table;
  Json infeas = Json::array();
  for (const auto& l : rep.infeasible_at_radius) infeas.push_back(loop_to_json(l));
  j["infeasible_at_radius"] = infeas;
  Json nb = Json::array();
  for (const auto& l : rep.nonbounding) nb.push_back(loop_to_json(l));
  j["nonbounding"] = nb;
  return j;
}

std::string scan_report_to_csv(const IsoperimetricScanReport& rep) {
  std::ostringstream os;
  os << "length,worst_ratio\n";
  for (const auto& row : rep.per_length)
    os << row.length << "," << rat_to_string(row.worst_ratio) << "\n";
  return os.str();
}

Json distortion_table_to_json(const std::vector<DistortionRow>& rows) {
  Json j = Json::array();
  for (const auto& r : rows)
    j.push_back({{"vertex", r.vertex}, {"distance", r.distance}, {"value", rat_json(r.value)}});
  return j;
}

SparseRationalMatrix matrix_from_json(const Json& j) {
  SparseRationalMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  if (j.contains("entries"))
    for (const Json& e : j.at("entries"))
      m.set(e.at(0).get<int>(), e.at(1).get<int>(), rat_from(e.at(2)));
  return m;
}

Json matrix_to_json(const SparseRationalMatrix& m) {
  Json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  Json entries = Json::array();
  for (int c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.col[static_cast<size_t>(c)])
      entries.push_back({r, c, rat_json(v)});
  j["entries"] = entries;
  return j;
}

HomotopyData homotopy_data_from_json(const Json& j) {
  HomotopyData d;
  auto fill = [&](const char* key, std::vector<SparseRationalMatrix>& out) {
    for (const Json& m : j.at(key)) out.push_back(matrix_from_json(m));
  };
  fill("f", d.f);
  fill("g", d.g);
  fill("h", d.h);
  fill("Dsrc", d.Dsrc);
  fill("Ddst", d.Ddst);
  return d;
}

}  // namespace ggt
