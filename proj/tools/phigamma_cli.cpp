#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "phigamma/suites.hpp"

using namespace phigamma;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kSchema = 2, kKernel = 3, kNotPsiFixed = 4 };

json read_json(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::SchemaViolation, "cannot read " + path);
    ss << in.rdbuf();
  }
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaViolation, std::string("invalid JSON: ") + e.what());
  }
}

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::SchemaViolation, "cannot write " + path);
  out << j.dump(2) << "\n";
}

// A unit given as an integer or as a JSON scalar.
Padic parse_unit(const std::string& s, int p, long prec) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception&) {
    fail(ErrorCode::SchemaViolation, "cannot parse scalar \"" + s + "\"");
  }
  Padic a = scalar_or_int(j, p, const_rel(prec));
  if (a.is_zero() || a.val() != 0) fail(ErrorCode::SchemaViolation, "expected a p-adic unit, got " + s);
  return a;
}

struct OpArgs {
  std::string op, in, out, a;
  long i = 0;
  int level = 1;
  long L = 8;
  int h = 2;
  long taylorprec = 6;
};

json run_op(const OpArgs& o) {
  LaurentWindow f = laurent_from_json(read_json(o.in));
  const int p = f.prime();
  if (o.op == "phi") return to_json(phi(f));
  if (o.op == "psi") return to_json(psi(f));
  if (o.op == "gamma") {
    if (o.a.empty()) fail(ErrorCode::SchemaViolation, "gamma needs --a");
    return to_json(gamma(f, parse_unit(o.a, p, f.prec())));
  }
  if (o.op == "partial") return to_json(partial(f));
  if (o.op == "nabla") return to_json(nabla(f, o.i));
  if (o.op == "res") return to_json(res(f));
  if (o.op == "reslog") return to_json(reslog(f));
  if (o.op == "iota") return to_json(iota(f, o.level, o.L));
  if (o.op == "colmez") return to_json(colmez(f, o.h, o.taylorprec));
  fail(ErrorCode::SchemaViolation, "unknown op " + o.op);
}

struct VerifyArgs {
  std::string suite, config, report;
  bool strict = false;
  std::optional<long> p, N, dmin, dmax, L, n_max, trials, seed, slack;
};

int run_verify(const VerifyArgs& v) {
  json overrides = v.config.empty() ? json::object() : read_json(v.config);
  auto put = [&](const char* k, const std::optional<long>& x) {
    if (x) overrides[k] = *x;
  };
  put("p", v.p);
  put("N", v.N);
  put("dmin", v.dmin);
  put("dmax", v.dmax);
  put("L", v.L);
  put("n_max", v.n_max);
  put("trials", v.trials);
  put("seed", v.seed);
  put("slack", v.slack);
  SuiteConfig cfg = config_from_json(overrides);
  Report rep = run_suite(v.suite, cfg);
  json j = to_json(rep);
  j["strict"] = v.strict;
  write_json(j, v.report);
  for (const auto& c : rep.cases) {
    if (c.status == Status::Pass) continue;
    std::cerr << status_name(c.status) << ": " << c.name << ": " << c.message << "\n";
  }
  if (!rep.pass()) return kVerifyFailed;
  if (rep.any_inconclusive()) {
    if (v.strict) return kVerifyFailed;
    std::cerr << "warning: inconclusive cases (solver window too small); rerun with a wider window\n";
  }
  return kOk;
}

struct ExpArgs {
  std::string alpha = "1", in, report;
  std::optional<long> weight;
  long h = 1;
  int level = 2;
  long L = 8;
};

int run_exp(const ExpArgs& e) {
  json in = read_json(e.in);
  RankOneElement x;
  if (in.contains("coeffs")) {
    LaurentWindow f = laurent_from_json(in);
    x = RankOneElement::single({parse_unit(e.alpha, f.prime(), f.prec()), e.weight.value_or(0)}, 0, f);
  } else {
    x = rank1_from_json(in);
    RankOneCharacter c = x.character();
    if (e.weight) c.k = *e.weight;
    if (e.alpha != "1" || e.weight) c.alpha = parse_unit(e.alpha, x.prime(), x.prec());
    x = x.with_character(c);
  }
  if (e.level < 1) fail(ErrorCode::SchemaViolation, "--level must be at least 1");
  if (!nrig_check(x, e.level, e.L)) fail(ErrorCode::NotInNrig, "input is not in N_rig");
  IwasawaClass c = big_exp(x, e.h);
  json rep;
  rep["input"] = to_json(x);
  rep["h"] = e.h;
  rep["nabla_chain"] = to_json(c.y);
  rep["exp_tower_check"] = to_json(rank1_compare(big_exp(x, e.h + 1).y, nabla_i(c.y, e.h)));
  json tl = json::array();
  for (int m = 1; m <= e.level; ++m) tl.push_back({{"level", m}, {"value", to_json(T_L_project(x, m, 0, e.L))}});
  rep["T_L"] = tl;
  if (x.weight() == 0) {
    json ii = json::array();
    for (int n = 1; n <= e.level; ++n) {
      InterpolationReport r = interpolation_identity_check(x, e.h, n, e.L, 120 * n);
      ii.push_back({{"level", n},
                    {"lhs", to_json(r.lhs)},
                    {"rhs", to_json(r.rhs)},
                    {"discrepancy", bound_json(r.discrepancy)},
                    {"certified_digits", bound_json(r.certified)},
                    {"low_terms", bound_json(r.low_terms)},
                    {"phi_discrepancy", bound_json(r.phi_disc)},
                    {"phi_certified", bound_json(r.phi_certified)},
                    {"series_terms", r.terms}});
    }
    rep["interpolation"] = ii;
  } else {
    rep["interpolation"] = nullptr;  // the constant-term identity is stated for weight 0
  }
  write_json(rep, e.report);
  return kOk;
}

struct ColArgs {
  std::string in, out;
  bool preimage = false;
  int h = 2;
  long taylorprec = 6;
};

json run_col(const ColArgs& c) {
  json in = read_json(c.in);
  if (!c.preimage) return to_json(colmez(laurent_from_json(in), c.h, c.taylorprec));
  // {"p", "prec", "coeffs": [scalar]}: the polynomial sum_n coeffs[n] x^n
  if (!in.is_object() || !in.contains("p") || !in.contains("prec") || !in.contains("coeffs") || !in["coeffs"].is_array() ||
      !in["p"].is_number_integer() || !in["prec"].is_number_integer())
    fail(ErrorCode::SchemaViolation, "preimage input needs p, prec and a coeffs array");
  int p = in["p"].get<int>();
  std::vector<Padic> poly;
  for (const auto& s : in["coeffs"]) poly.push_back(scalar_from_json(s, p));
  if (poly.empty()) fail(ErrorCode::SchemaViolation, "empty polynomial");
  return to_json(colmez_preimage(poly, in["prec"].get<long>()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(phi, Gamma)-module kernels: operators, verification suites, big exponential reports"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  OpArgs op;
  auto* cop = app.add_subcommand("op", "apply one operator to a Laurent series");
  cop->add_option("--op", op.op, "phi, psi, gamma, partial, nabla, res, reslog, iota, colmez")
      ->required()
      ->check(CLI::IsMember({"phi", "psi", "gamma", "partial", "nabla", "res", "reslog", "iota", "colmez"}));
  cop->add_option("--in", op.in, "input series (JSON, - for stdin)")->required();
  cop->add_option("--out", op.out, "output file (default stdout)");
  cop->add_option("--a", op.a, "unit for gamma: integer or JSON scalar");
  cop->add_option("--i", op.i, "index of nabla_i");
  cop->add_option("--level", op.level, "level n of iota")->check(CLI::Range(1, 4));
  cop->add_option("--L", op.L, "t-adic precision of iota")->check(CLI::Range(0, 200));
  cop->add_option("--h", op.h, "analyticity level for colmez")->check(CLI::Range(0, 6));
  cop->add_option("--taylorprec", op.taylorprec, "jet length for colmez")->check(CLI::Range(1, 100));

  VerifyArgs ver;
  auto* cver = app.add_subcommand("verify", "run a verification suite and write a JSON report");
  cver->add_option("--suite", ver.suite)
      ->required()
      ->check(CLI::IsMember({"padic", "cyclo", "robba", "dif", "herr", "bigexp", "fourier", "all"}));
  cver->add_option("--config", ver.config, "JSON config with any of p, N, dmin, dmax, L, n_max, trials, seed, slack");
  cver->add_option("--report", ver.report, "report file (default stdout)");
  cver->add_flag("--strict", ver.strict, "treat inconclusive cases as failures");
  cver->add_option("--p", ver.p);
  cver->add_option("--N", ver.N);
  cver->add_option("--dmin", ver.dmin);
  cver->add_option("--dmax", ver.dmax);
  cver->add_option("--L", ver.L);
  cver->add_option("--n-max", ver.n_max);
  cver->add_option("--trials", ver.trials);
  cver->add_option("--seed", ver.seed);
  cver->add_option("--slack", ver.slack);

  ExpArgs ex;
  auto* cexp = app.add_subcommand("exp", "big exponential report for a psi-fixed element");
  cexp->add_option("--alpha", ex.alpha, "alpha: integer or JSON scalar");
  cexp->add_option("--weight", ex.weight, "Hodge-Tate weight k");
  cexp->add_option("--h", ex.h)->check(CLI::Range(1, 10));
  cexp->add_option("--in", ex.in, "Laurent series or rank-one element (JSON)")->required();
  cexp->add_option("--level", ex.level)->check(CLI::Range(1, 3));
  cexp->add_option("--L", ex.L)->check(CLI::Range(1, 100));
  cexp->add_option("--report", ex.report, "report file (default stdout)");

  ColArgs col;
  auto* ccol = app.add_subcommand("col", "Colmez transform, or a polynomial preimage with --preimage");
  ccol->add_option("--in", col.in)->required();
  ccol->add_option("--out", col.out);
  ccol->add_flag("--preimage", col.preimage);
  ccol->add_option("--h", col.h)->check(CLI::Range(0, 6));
  ccol->add_option("--taylorprec", col.taylorprec)->check(CLI::Range(1, 100));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchema;
  }

  try {
    if (*cop) write_json(run_op(op), op.out);
    if (*cver) return run_verify(ver);
    if (*cexp) return run_exp(ex);
    if (*ccol) write_json(run_col(col), col.out);
  } catch (const KernelError& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == ErrorCode::SchemaViolation) return kSchema;
    std::cout << json{{"error", error_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return e.code() == ErrorCode::NotPsiFixed ? kNotPsiFixed : kKernel;
  } catch (const json::exception& e) {
    std::cerr << "schema violation: " << e.what() << "\n";
    return kSchema;
  }
  return kOk;
}
