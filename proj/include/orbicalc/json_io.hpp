#pragma once

// JSON formats for groups, G-sets, cocycles, algebras and computed results.
// Exact scalars are decimal strings; cyclotomic numbers are
// {"conductor": N, "coeffs": [...]} in the power basis of Q(zeta_N).
// Parsers throw InputError on malformed input.

#include "orbicalc/algebra.hpp"
#include "orbicalc/blocks.hpp"
#include "orbicalc/character_table.hpp"
#include "orbicalc/gset.hpp"

#include "json.hpp"

namespace orbicalc {

using Json = nlohmann::json;

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const Cyclotomic& x);
Json to_json(const RatMat& m);  // row-major
Json to_json(const IntMat& m);
Json to_json(const RatVec& v);

Rational rational_from_json(const Json& j);  // number or decimal string "p/q"
Cyclotomic cyclotomic_from_json(const Json& j);

// {"order": n, "mul": [[...]]}, {"degree": d, "perm_gens": [[...]]} or a catalog name
FiniteGroup group_from_json(const Json& j);
Json group_to_json(const FiniteGroup& g);

// {"group": <group>, "size": m, "act": [[...]]}; act[g][x] = g.x
GSet gset_from_json(const Json& j);
// as above, with the group already fixed (a "group" field must then agree)
GSet gset_from_json(const Json& j, std::shared_ptr<const FiniteGroup> g);
Json gset_to_json(const GSet& x);

// {"root_order": N, "table": [[c(g,h)]]}
CocycleTable cocycle_from_json(const Json& j, std::shared_ptr<const FiniteGroup> g);
Json cocycle_to_json(const CocycleTable& c);

// {"dim": d, "unit": idx | [coeff per basis element], "sc": [[i, j, k, coeff]...],
//  "labels": [...], "grading": [...], "support": [...],
//  "action": {"<g>": [[i, k, coeff]...]}}  (g(b_i) = sum coeff b_k; identity may be omitted)
// grading and action need a group, passed here or given as "group".
FinDimAlgebra algebra_from_json(const Json& j, std::shared_ptr<const FiniteGroup> g = nullptr);
Json algebra_to_json(const FinDimAlgebra& a);

Json character_table_to_json(const CharacterTable& t);
Json vistoli_to_json(const VistoliDecomposition& v);
Json orbifold_to_json(const OrbifoldDecomposition& d);
Json inertia_to_json(const InertiaDecomposition& d);
Json blocks_to_json(const BlockCountReport& r);

}  // namespace orbicalc
