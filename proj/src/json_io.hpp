#ifndef VFL_JSON_IO_HPP
#define VFL_JSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "catalog.hpp"
#include "georank.hpp"
#include "modsearch.hpp"
#include "presentation.hpp"

namespace vfl {

// Keys keep insertion order so output is stable byte for byte.
using Json = nlohmann::ordered_json;

// Field indices in JSON are 1-based.
Json to_json(const Scalar& s);
Json to_json(const Vec& v);
Json to_json(const Matrix& m);
Json to_json(const std::vector<VectorField>& fs);
Json to_json(const LiePresentation& p);

Json closure_json(const ClosureResult& r);
Json flags_json(const LieAlgebra& L);
Json killing_json(const LieAlgebra& L);
Json radical_json(const LiePresentation& p);
Json levi_json(const LeviReport& r);
Json cartan_json(const LiePresentation& p, const CartanData& c, std::uint64_t seed);
Json roots_json(const LiePresentation& p, const RootData& r);
Json type_json(const TypeLabel& t);
Json georank_json(const LiePresentation& p, const GeometricRank& g, const std::optional<Witness>& w);
Json rank_equality_json(const RankEqualityReport& r);
Json ansatz_json(const AnsatzSpace& a);
Json weight_vectors_json(const std::vector<WeightVector>& ws, const AnsatzSpace& a);
Json infeasibility_json(const InfeasibilityReport& r);
Json staged_json(const StagedResult& r, const AnsatzSpace& a);
Json chevalley_constants_json(const ChevalleyAlgebra& c);
Json chevalley_basis_json(const LiePresentation& p, const ChevalleyNormalization& n);
Json fixture_json(const Fixture& f);
Json fixture_report_json(const FixtureReport& r);

// "h1", "e(1,0)", "e(-1,0)"
std::string chevalley_name(const ChevalleyAlgebra& c, std::size_t k);

// "0;1,-1" style frequency list for N coordinates; empty text means {0}.
std::vector<Vec> parse_freqs(const std::string& text, std::size_t dim);
// Embedding list [{"root": [..], "e": "..", "f": ".."}].
std::vector<RootEmbedding> parse_embedding(const std::string& json_text, std::size_t dim);

}  // namespace vfl

#endif
