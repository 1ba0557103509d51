#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "phigamma/suites.hpp"

using namespace phigamma;

namespace {

struct Part {
  std::string suite, name;
  std::vector<int> primes;
  long dmax = SuiteConfig{}.dmax;
};

struct Criterion {
  int id;
  std::string what;
  std::vector<Part> parts;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "psi o phi = id on 100 random series", {{"robba", "psi_phi_identity", {3, 5}}}},
      {2, "iota o phi = embed o iota, iota o psi = (1/p) trace o iota",
       {{"dif", "iota_phi", {3, 5}}, {"dif", "iota_psi", {3, 5}}}},
      {3, "operator algebra of partial, phi, gamma and nabla_i", {{"robba", "operator_algebra", {3, 5}}}},
      {4, "nabla_0 series mode = closed mode on 20 inputs", {{"robba", "nabla_series", {3, 5}}}},
      {5, "cyclotomic-unit fixture: psi-fixed, in N_rig, nabla chain constant 1/2",
       {{"robba", "cyclotomic_unit", {3, 5}}, {"bigexp", "cyclotomic_fixture", {3, 5}}}},
      {6, "Exp_{h+1} = nabla_h Exp_h and the tilde-partial square", {{"bigexp", "exp_tower", {3, 5}}}},
      {7, "weight-0 constant-term identity, h and n in {1, 2}", {{"bigexp", "interpolation", {3}}}},
      {8, "Herr complex: d2 d1 = 0, exp cocycles, lift independence, Fil0",
       {{"herr", "d2_d1", {3, 5}}, {"herr", "exp_class", {3}},
        // 2 k p^2 lift equations outgrow the default window at p = 5
        {"herr", "exp_class", {5}, 60}}},
      {9, "residue functional kills (psi - 1), (gamma - 1) and detects T^-1",
       {{"robba", "reslog_invariance", {3, 5}}, {"herr", "h2_functional", {3, 5}}}},
      {10, "Colmez transform: kernel, equivariance, eigenrelations",
       {{"fourier", "kernel", {3, 5}},
        {"fourier", "equivariance", {3, 5}},
        {"fourier", "eigenrelations", {3, 5}},
        {"fourier", "psi_phi", {3, 5}}}},
      {11, "one constant relates the two pairings over 20 pairs", {{"herr", "adjointness", {3}}}},
  };
  return c;
}

}  // namespace

int main() {
  bool all = true;
  for (const auto& cr : criteria()) {
    bool ok = true;
    long certified = kInf;
    std::string detail;
    for (const auto& part : cr.parts)
      for (int p : part.primes) {
        SuiteConfig cfg;
        cfg.p = p;
        cfg.dmax = part.dmax;
        CaseRecord r = run_case(part.suite, part.name, cfg);
        certified = std::min(certified, r.certified);
        if (r.status != Status::Pass) {
          ok = false;
          detail += " [" + part.suite + "/" + part.name + " p=" + std::to_string(p) + " " + status_name(r.status) + ": " +
                    r.message + "]";
        }
      }
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << cr.id << ". " << cr.what;
    if (certified < kInf) std::cout << " (min certified digits " << certified << ")";
    std::cout << detail << std::endl;
  }
  return all ? 0 : 1;
}
