#include <doctest.h>

#include <map>

#include "rigid/suite.hpp"

using namespace rigid;
using nlohmann::json;

namespace {

VerificationJob job(ClaimId c, const std::string &type, int rank, std::vector<Rational> lambdas = {}) {
  VerificationJob j;
  j.claim = c;
  j.type = type;
  j.rank = rank;
  j.lambdas = std::move(lambdas);
  return j;
}

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("claim names round trip") {
  for (ClaimId c : all_claims()) CHECK(parse_claim(claim_name(c)) == c);
  CHECK(all_claims().size() == 9);
  CHECK_THROWS_AS(parse_claim("no_such_claim"), Error);
}

TEST_CASE("every claim expands to jobs with its parameters") {
  SuiteConfig cfg = default_config();
  cfg.sl2_max = 2;
  std::map<ClaimId, int> count;
  for (const auto &j : expand_jobs(cfg)) {
    ++count[j.claim];
    auto p = j.parameters();
    if (j.claim == ClaimId::sl2_weyl_freeness) {
      CHECK(p.contains("highest_weight"));
      CHECK_FALSE(p.contains("type"));
      continue;
    }
    CHECK(p.contains("type"));
    CHECK(p.contains("rank"));
    if (j.claim == ClaimId::fg_local_structure || j.claim == ClaimId::oper_route) CHECK(p.at("lambda").size() == 1);
    if (j.claim == ClaimId::lambda_separation) CHECK(p.at("lambda").size() == 2);
    if (j.claim == ClaimId::iota_isomorphism) CHECK(p.contains("z"));
  }
  CHECK(count[ClaimId::fg_local_structure] == 18);
  CHECK(count[ClaimId::lambda_separation] == 36);
  CHECK(count[ClaimId::sl2_weyl_freeness] == 3);
  CHECK(count[ClaimId::hitchin_line] == 6);
}

TEST_CASE("local structure reports") {
  auto a1 = run_job(job(ClaimId::fg_local_structure, "A", 1, {q(1)}));
  CHECK(a1.pass);
  CHECK(a1.witness.at("slopes_at_infinity") == json::array({"1/2"}));
  CHECK(a1.witness.at("monodromy_at_zero") == "unipotent_regular");

  auto g2job = job(ClaimId::fg_local_structure, "G", 2, {q(1)});
  g2job.rep = RepKind::adjoint;
  auto g2 = run_job(g2job);
  CHECK(g2.pass);
  CHECK(g2.witness.at("slope") == "1/6");
  CHECK(g2.witness.at("adjoint_irregularity") == "2");

  auto zero = run_job(job(ClaimId::fg_local_structure, "A", 1, {q(0)}));
  CHECK_FALSE(zero.pass);
  REQUIRE(zero.error);
  CHECK(zero.error->find("invalid-argument") != std::string::npos);
}

TEST_CASE("irreducibility ingredients") {
  auto a1 = run_job(job(ClaimId::irreducibility_at_infinity, "A", 1));
  CHECK(a1.pass);
  CHECK(a1.witness.at("label") == "proof-ingredient verification");
  CHECK(a1.witness.at("coxeter_matrix").dump() == R"([[[-1,1]]])");
  CHECK(run_job(job(ClaimId::irreducibility_at_infinity, "A", 2)).pass);
  CHECK(run_job(job(ClaimId::irreducibility_at_infinity, "B", 2)).pass);
}

TEST_CASE("oper route reports") {
  auto a1 = run_job(job(ClaimId::oper_route, "A", 1, {q(1)}));
  CHECK(a1.pass);
  CHECK(a1.witness.at("a1_canonical_form_matches").get<bool>());
  CHECK(a1.witness.at("integral_weight_at_zero") == json::array({-1}));
  // recorded, not required: the residue class at 0 is that of 0, not of -rho
  CHECK_FALSE(a1.witness.at("residue_class_is_minus_rho").get<bool>());

  auto a2 = run_job(job(ClaimId::oper_route, "A", 2, {q(1)}));
  CHECK(a2.pass);
  CHECK(a2.witness.at("ord_v_l") == "-4");

  // the leading coefficient at infinity is linear in lambda
  for (int l = 1; l <= 5; ++l) {
    auto r = run_job(job(ClaimId::oper_route, "A", 1, {q(l)}));
    CHECK(r.pass);
    CHECK(r.witness.at("v_l_h") == std::to_string(l));
  }
}

TEST_CASE("lambda separation reports") {
  auto diff = run_job(job(ClaimId::lambda_separation, "A", 1, {q(1), q(4)}));
  CHECK(diff.pass);
  CHECK_FALSE(diff.witness.at("invariants_equal").get<bool>());
  auto same = run_job(job(ClaimId::lambda_separation, "A", 1, {q(3), q(3)}));
  CHECK(same.pass);
  CHECK(same.witness.at("invariants_equal").get<bool>());
  CHECK(run_job(job(ClaimId::lambda_separation, "A", 2, {q(1), q(8)})).pass);
  CHECK(run_job(job(ClaimId::lambda_separation, "G", 2, {q(1), q(-1)})).pass);
}

TEST_CASE("sl2 and Hitchin reports") {
  for (int n : {0, 1, 10}) {
    VerificationJob j;
    j.claim = ClaimId::sl2_weyl_freeness;
    j.highest_weight = n;
    auto r = run_job(j);
    CHECK(r.pass);
    CHECK(r.witness.at("dim_image") == n + 1);
  }
  VerificationJob big;
  big.claim = ClaimId::sl2_weyl_freeness;
  big.highest_weight = 41;
  CHECK(run_job(big).error);

  auto line = run_job(job(ClaimId::hitchin_line, "B", 2));
  CHECK(line.pass);
  CHECK(line.witness.at("total") == 1);

  auto iota = job(ClaimId::iota_isomorphism, "A", 2);
  iota.zs = {q(1), q(-2, 3)};
  auto r = run_job(iota);
  CHECK(r.pass);
  CHECK(r.witness.at("rank_report").at("rank") == 10);
  iota.zs = {q(0)};
  CHECK(run_job(iota).error);
  iota.zs.clear();
  CHECK(run_job(iota).error);
}

TEST_CASE("default suite passes and is lambda independent") {
  auto reports = run_suite(default_config());
  CHECK(all_pass(reports));
  // fg outcomes do not depend on lambda; the two slope computations agree
  std::map<std::string, std::vector<bool>> outcome;
  std::map<std::string, std::string> fg_slope, oper_slope;
  for (const auto &r : reports) {
    if (r.claim != ClaimId::fg_local_structure && r.claim != ClaimId::oper_route) continue;
    const std::string key = r.parameters.at("type").get<std::string>() + std::to_string(r.parameters.at("rank").get<int>()) +
                            "/" + r.parameters.at("lambda").dump();
    if (r.claim == ClaimId::fg_local_structure) {
      outcome[key.substr(0, key.find('/'))].push_back(r.pass);
      fg_slope[key] = r.witness.at("slope");
    } else {
      oper_slope[key] = r.witness.at("oper_slope");
      CHECK(r.witness.at("polygon_slope") == r.witness.at("oper_slope"));
    }
  }
  CHECK(outcome.size() == 6);
  for (const auto &[k, v] : outcome) {
    CAPTURE(k);
    CHECK(v.size() == 3);
    CHECK(std::all_of(v.begin(), v.end(), [&](bool b) { return b == v[0]; }));
  }
  CHECK(fg_slope == oper_slope);
}

TEST_CASE("suite is deterministic across thread counts") {
  SuiteConfig cfg = default_config();
  cfg.algebras = {{"A", 1}, {"B", 2}};
  cfg.sl2_max = 6;
  auto a = suite_to_json(run_suite(cfg, 1)).dump();
  auto b = suite_to_json(run_suite(cfg, 3)).dump();
  CHECK(a == b);
  CHECK(a == suite_to_json(run_suite(cfg, 2)).dump());
}

TEST_CASE("empty and unsupported configurations") {
  SuiteConfig empty = default_config();
  empty.claims.clear();
  auto none = run_suite(empty);
  CHECK(none.empty());
  CHECK(suite_to_json(none).at("reports").empty());
  CHECK(suite_to_json(none).at("schema") == 1);

  SuiteConfig e8;
  e8.claims = {ClaimId::irreducibility_at_infinity};
  e8.algebras = {{"A", 1}, {"E", 8}};
  auto reports = run_suite(e8);
  REQUIRE(reports.size() == 2);
  int errors = 0;
  for (const auto &r : reports) {
    if (r.parameters.at("type") == "E") {
      CHECK(r.error);
      CHECK_FALSE(r.pass);
      ++errors;
    } else {
      CHECK(r.pass);
    }
  }
  CHECK(errors == 1);
  CHECK_FALSE(all_pass(reports));
}

TEST_CASE("report JSON shape") {
  auto r = run_job(job(ClaimId::hitchin_line, "A", 1)).to_json();
  for (const char *k : {"claim", "parameters", "pass", "anchor", "ledger_flags", "witness"}) CHECK(r.contains(k));
  CHECK_FALSE(r.contains("error"));
  CHECK(r.at("claim") == "hitchin_line");
}
