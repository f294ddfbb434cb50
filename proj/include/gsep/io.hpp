#pragma once

// JSON and CSV encodings of terms, groupoids, op sums and results.

#include <string>

#include <json.hpp>

#include "gsep/cayley.hpp"
#include "gsep/census.hpp"
#include "gsep/synthesis.hpp"
#include "gsep/unify.hpp"
#include "gsep/vec_groupoid.hpp"

namespace gsep {

using Json = nlohmann::ordered_json;

// A variable is a string, a product a two-element array: ["x1", ["x2", "x3"]].
Json term_to_json(const Term& t);
Term term_from_json(const Json& j);

// First line the order n, then n comma-separated rows.
std::string cayley_to_csv(const CayleyGroupoid& g);
CayleyGroupoid cayley_from_csv(const std::string& text);
// {"n": n, "table": [[row], ...]}
Json cayley_to_json(const CayleyGroupoid& g);
CayleyGroupoid cayley_from_json(const Json& j);

// {"indices": [...], "A": [[0/1 rows]], "B": [...], "c": [...]}
Json vec_groupoid_to_json(const VecGroupoid& g);
VecGroupoid vec_groupoid_from_json(const Json& j);

// [{"m": 1, "p": "l", "n": 0, "tweaked": false}, ...]
Json opsum_to_json(const OpSum& sum);
std::vector<OpSpec> opspecs_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json cover_to_json(const CoverWitness& w);
Json cycle_to_json(const CycleWitness& w);
Json substitution_to_json(const Substitution& s);
Json unify_to_json(const UnifyOutcome& u);
Json separability_to_json(const FiniteSeparability& r);
Json census_to_json(const CensusReport& r);

Json antiassoc_to_json(const AntiassocBuild& b);
AntiassocBuild antiassoc_from_json(const Json& j);

}  // namespace gsep
