#pragma once

#include <string>

#include <json.hpp>

#include "ggt/amalgam.hpp"
#include "ggt/complex.hpp"
#include "ggt/filling.hpp"
#include "ggt/geometry.hpp"
#include "ggt/group.hpp"
#include "ggt/smallcancel.hpp"

namespace ggt {

using Json = nlohmann::json;

// groups: {"order": n, "mult": [[...]], "names": [...]} (indices 0-based)
FiniteGroup group_from_json(const Json& j);
Json group_to_json(const FiniteGroup& g);

// words: arrays of {"factor": "A"|"B", "elem": i}
AmalgamWord word_from_json(const AmalgamContext& ctx, const Json& j);
Json word_to_json(const AmalgamWord& w);

// relator sets: {"relators": [[letter...], ...]}
std::vector<AmalgamWord> relators_from_json(const AmalgamContext& ctx, const Json& j);

Json cancellation_report_to_json(const AmalgamContext& ctx, const SymmetrizedSet& R,
                                 const CancellationReport& rep);

// complexes: {"vertices": n, "edges": [[u,v],...], "faces": [[±e,...],...]}
// with signed 1-based edge indices in faces (so orientation of edge 0 is
// expressible)
TwoComplexBall complex_from_json(const Json& j);
Json complex_to_json(const TwoComplexBall& X);

// chains: {"deg": d, "coeffs": {"i": "p/q"}}
RationalChain chain_from_json(const Json& j);
Json chain_to_json(const RationalChain& c);

Json graph_ball_to_json(const AmalgamContext& ctx, const GraphBall& b);
Json presentation_ball_to_json(const AmalgamContext& ctx, const PresentationComplexBall& b);
std::string edge_list_text(const TwoComplexBall& X);

Json c6_report_to_json(const C6Report& rep);
Json filling_result_to_json(const FillingResult& res);
Json scan_report_to_json(const IsoperimetricScanReport& rep);
std::string scan_report_to_csv(const IsoperimetricScanReport& rep);
Json distortion_table_to_json(const std::vector<DistortionRow>& rows);

// graded matrix families for the homotopy checker:
// {"f": [matrix...], "g": [...], "h": [...], "Dsrc": [...], "Ddst": [...]}
// with matrix {"rows": r, "cols": c, "entries": [[i, j, "p/q"], ...]}
SparseRationalMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const SparseRationalMatrix& m);
HomotopyData homotopy_data_from_json(const Json& j);

}  // namespace ggt
