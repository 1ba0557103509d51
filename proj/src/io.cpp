#include "phigamma/io.hpp"

#include <string>

namespace phigamma {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::SchemaViolation, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

long get_long(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<long>();
}

int get_prime(const json& j) {
  long p = get_long(j, "p");
  if (p < 2) bad("p must be a prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) bad("p must be a prime");
  return static_cast<int>(p);
}

long parse_index(const std::string& s) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) bad("bad index \"" + s + "\"");
    return v;
  } catch (const std::logic_error&) {
    bad("bad index \"" + s + "\"");
  }
}

}  // namespace

json bound_json(long v) { return v >= kInf ? json(nullptr) : json(v); }

json to_json(const Padic& x) {
  json j;
  if (x.is_zero()) {
    j["val"] = nullptr;
    j["digits"] = json::array();
    j["prec"] = bound_json(x.abs());
    return j;
  }
  j["val"] = x.val();
  j["digits"] = x.digits();
  j["prec"] = x.rel();
  return j;
}

Padic scalar_from_json(const json& j, int p) {
  const json& v = field(j, "val");
  const json& pr = field(j, "prec");
  if (!pr.is_null() && !pr.is_number_integer()) bad("scalar prec must be an integer or null");
  if (v.is_null()) return Padic::zero(p, pr.is_null() ? kInf : pr.get<long>());
  if (!v.is_number_integer()) bad("scalar val must be an integer or null");
  if (pr.is_null()) bad("a nonzero scalar needs a finite prec");
  const json& d = field(j, "digits");
  if (!d.is_array()) bad("scalar digits must be an array");
  long N = pr.get<long>();
  if (N < 1 || static_cast<long>(d.size()) > N) bad("scalar needs 1 <= len(digits) <= prec");
  mpz_class u = 0;
  for (size_t i = d.size(); i-- > 0;) {
    if (!d[i].is_number_integer() || d[i].get<long>() < 0 || d[i].get<long>() >= p) bad("digit out of range");
    u = u * p + d[i].get<long>();
  }
  long val = v.get<long>();
  if (u == 0) return Padic::zero(p, val + N);
  long s = vp(p, u);
  u /= ppow(p, s);
  return Padic::from_parts(p, val + s, u, N - s);
}

Padic scalar_or_int(const json& j, int p, long rel) {
  if (j.is_number_integer()) return Padic::from_int(p, j.get<long>(), rel);
  return scalar_from_json(j, p);
}

json to_json(const LaurentWindow& f) {
  json j;
  j["p"] = f.prime();
  j["prec"] = f.prec();
  j["dmin"] = f.dmin();
  j["dmax"] = f.dmax();
  json c = json::object();
  for (long d = f.dmin(); d <= f.dmax(); ++d) {
    Padic x = f.coeff(d);
    if (!x.is_exact_zero()) c[std::to_string(d)] = to_json(x);
  }
  j["coeffs"] = c;
  j["loss"] = f.loss();
  j["exact_top"] = f.exact_top();
  j["tail"] = bound_json(f.tail());
  return j;
}

LaurentWindow laurent_from_json(const json& j) {
  int p = get_prime(j);
  long prec = get_long(j, "prec");
  long dmin = get_long(j, "dmin"), dmax = get_long(j, "dmax");
  if (prec < 1) bad("prec must be positive");
  if (dmax < dmin) bad("dmax < dmin");
  if (dmax - dmin > 100000) bad("degree window too large");
  std::vector<Padic> c(static_cast<size_t>(dmax - dmin + 1), Padic::zero(p));
  const json& cs = field(j, "coeffs");
  if (!cs.is_object()) bad("coeffs must be an object keyed by degree");
  for (const auto& [k, v] : cs.items()) {
    long d = parse_index(k);
    if (d < dmin || d > dmax) bad("coefficient at degree " + k + " outside [dmin, dmax]");
    c[static_cast<size_t>(d - dmin)] = scalar_from_json(v, p);
  }
  bool exact_top = true;
  long tail = kInf;
  if (j.contains("exact_top")) {
    if (!j["exact_top"].is_boolean()) bad("exact_top must be a boolean");
    exact_top = j["exact_top"].get<bool>();
  }
  if (j.contains("tail") && !j["tail"].is_null()) tail = get_long(j, "tail");
  return LaurentWindow(p, prec, dmin, std::move(c), exact_top, tail);
}

json to_json(const CycloElement& x) {
  json j;
  j["p"] = x.prime();
  j["level"] = x.level();
  json c = json::array();
  for (const auto& a : x.coords()) c.push_back(to_json(a));
  j["coords"] = c;
  return j;
}

CycloElement cyclo_from_json(const json& j) {
  int p = get_prime(j);
  long n = get_long(j, "level");
  if (n < 0 || n > 6) bad("level out of range");
  FieldPtr F = cyclo_field(p, static_cast<int>(n));
  const json& cs = field(j, "coords");
  if (!cs.is_array() || static_cast<long>(cs.size()) != F->degree()) bad("coords must list one scalar per basis element");
  std::vector<Padic> c;
  for (const auto& v : cs) c.push_back(scalar_from_json(v, p));
  return CycloElement(F, std::move(c));
}

json to_json(const DifElement& x) {
  json j;
  j["p"] = x.field()->prime();
  j["level"] = x.level();
  j["tshift"] = x.tshift();
  j["tprec"] = x.tprec();
  json c = json::array();
  for (const auto& a : x.coeffs()) c.push_back(to_json(a));
  j["tcoeffs"] = c;
  j["certified_digits"] = bound_json(x.certified_digits());
  return j;
}

DifElement dif_from_json(const json& j) {
  int p = get_prime(j);
  long n = get_long(j, "level");
  if (n < 1 || n > 6) bad("level out of range");
  FieldPtr F = cyclo_field(p, static_cast<int>(n));
  long tshift = get_long(j, "tshift");
  long tprec = get_long(j, "tprec");
  const json& cs = field(j, "tcoeffs");
  if (!cs.is_array() || static_cast<long>(cs.size()) != tprec + 1) bad("tcoeffs must hold tprec + 1 entries");
  std::vector<CycloElement> c;
  for (const auto& v : cs) {
    CycloElement e = cyclo_from_json(v);
    if (e.prime() != p || e.level() != n) bad("tcoeffs live in another field");
    c.push_back(e);
  }
  return DifElement(F, tshift, std::move(c));
}

json to_json(const RankOneElement& x) {
  json j;
  j["alpha"] = to_json(x.character().alpha);
  j["weight"] = x.weight();
  if (x.parts().size() == 1) {
    j["tshift"] = x.parts().begin()->first;
    j["f"] = to_json(x.parts().begin()->second);
    return j;
  }
  json parts = json::array();
  for (const auto& [s, f] : x.parts()) parts.push_back({{"tshift", s}, {"f", to_json(f)}});
  j["parts"] = parts;
  j["p"] = x.prime();
  j["prec"] = x.prec();
  return j;
}

RankOneElement rank1_from_json(const json& j) {
  long k = get_long(j, "weight");
  std::vector<std::pair<long, LaurentWindow>> parts;
  if (j.contains("parts")) {
    if (!j["parts"].is_array()) bad("parts must be an array");
    for (const auto& e : j["parts"]) parts.emplace_back(get_long(e, "tshift"), laurent_from_json(field(e, "f")));
  } else {
    parts.emplace_back(get_long(j, "tshift"), laurent_from_json(field(j, "f")));
  }
  int p = 0;
  long prec = 0;
  if (parts.empty()) {
    p = get_prime(j);
    prec = get_long(j, "prec");
  } else {
    p = parts[0].second.prime();
    prec = parts[0].second.prec();
  }
  for (const auto& [s, f] : parts)
    if (f.prime() != p) bad("parts over different primes");
  Padic alpha = scalar_from_json(field(j, "alpha"), p);
  if (alpha.is_zero() || alpha.val() != 0) bad("alpha must be a unit");
  RankOneElement x({alpha, k}, p, prec);
  for (const auto& [s, f] : parts) x.add(s, f);
  return x;
}

json to_json(const Cochain& z) {
  json j;
  j["flavor"] = z.flavor == Flavor::Phi ? "phi" : "psi";
  j["degree"] = z.degree;
  json e = json::array();
  for (const auto& x : z.entries) e.push_back(to_json(x));
  j["entries"] = e;
  return j;
}

Cochain cochain_from_json(const json& j) {
  Cochain z;
  const json& fl = field(j, "flavor");
  if (fl == "phi") z.flavor = Flavor::Phi;
  else if (fl == "psi") z.flavor = Flavor::Psi;
  else bad("flavor must be \"phi\" or \"psi\"");
  long d = get_long(j, "degree");
  if (d < 0 || d > 2) bad("degree must be 0, 1 or 2");
  z.degree = static_cast<int>(d);
  const json& es = field(j, "entries");
  if (!es.is_array() || es.size() != (d == 1 ? 2u : 1u)) bad("wrong number of entries for the degree");
  for (const auto& e : es) z.entries.push_back(rank1_from_json(e));
  return z;
}

json to_json(const LocAnFunction& f) {
  json j;
  j["p"] = f.prime();
  j["prec"] = f.prec();
  j["h"] = f.level();
  j["taylorprec"] = f.taylor_length();
  json cs = json::object();
  for (long a = 0; a < f.coset_count(); ++a) {
    json jet = json::array();
    for (const auto& c : f.jet(a)) jet.push_back(to_json(c));
    cs[std::to_string(a)] = jet;
  }
  j["cosets"] = cs;
  return j;
}

LocAnFunction la_from_json(const json& j) {
  int p = get_prime(j);
  long prec = get_long(j, "prec");
  long h = get_long(j, "h");
  long L = get_long(j, "taylorprec");
  if (h < 0 || h > 8 || L < 1 || L > 1000) bad("h or taylorprec out of range");
  LocAnFunction f(p, static_cast<int>(h), L, prec);
  const json& cs = field(j, "cosets");
  if (!cs.is_object() || static_cast<long>(cs.size()) != f.coset_count()) bad("cosets must list every class mod p^h");
  for (const auto& [k, v] : cs.items()) {
    long a = parse_index(k);
    if (a < 0 || a >= f.coset_count()) bad("coset " + k + " out of range");
    if (!v.is_array() || static_cast<long>(v.size()) != L) bad("each jet needs taylorprec scalars");
    for (long n = 0; n < L; ++n) f.jet(a)[static_cast<size_t>(n)] = scalar_from_json(v[static_cast<size_t>(n)], p);
  }
  return f;
}

json to_json(const Agreement& a) {
  return {{"ok", a.ok}, {"worst_discrepancy", bound_json(a.worst_disc)}, {"certified_digits", bound_json(a.certified)}};
}

}  // namespace phigamma
