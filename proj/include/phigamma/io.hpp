#pragma once

#include "json.hpp"
#include "phigamma/colmez.hpp"
#include "phigamma/herr.hpp"

namespace phigamma {

using json = nlohmann::json;

// All readers throw KernelError(SchemaViolation) on malformed input.

// {"val": v | null, "digits": [d_0, ...] base p little-endian, "prec": N}.  A null val is a
// zero known to absolute precision prec (null prec: exact zero).
json to_json(const Padic& x);
Padic scalar_from_json(const json& j, int p);
// A scalar given as a JSON object or as a plain integer.
Padic scalar_or_int(const json& j, int p, long rel);

// {"p", "prec", "dmin", "dmax", "coeffs": {"d": scalar}, "loss"}; optional "exact_top", "tail".
json to_json(const LaurentWindow& f);
LaurentWindow laurent_from_json(const json& j);

// {"p", "level", "coords": [scalar]}.
json to_json(const CycloElement& x);
CycloElement cyclo_from_json(const json& j);

// {"p", "level", "tshift", "tprec", "tcoeffs": [cyclo], "certified_digits"}.
json to_json(const DifElement& x);
DifElement dif_from_json(const json& j);

// {"alpha", "weight", "tshift", "f"} for one part; several parts go to "parts": [{"tshift", "f"}].
json to_json(const RankOneElement& x);
RankOneElement rank1_from_json(const json& j);

// {"flavor": "phi" | "psi", "degree", "entries": [rank-one]}.
json to_json(const Cochain& z);
Cochain cochain_from_json(const json& j);

// {"p", "prec", "h", "taylorprec", "cosets": {"a": [scalar]}}.
json to_json(const LocAnFunction& f);
LocAnFunction la_from_json(const json& j);

json to_json(const Agreement& a);

// kInf as null.
json bound_json(long v);

}  // namespace phigamma
