#pragma once

// Verification jobs over the Frenkel-Gross connection, opers, Hitchin bases and
// sl2 modules, with JSON reports.

#include <json.hpp>
#include <optional>

#include "rigid/chevalley.hpp"
#include "rigid/laurent.hpp"

namespace rigid {

enum class ClaimId {
  fg_local_structure,
  irreducibility_at_infinity,
  oper_route,
  lambda_separation,
  sl2_weyl_freeness,
  iota_isomorphism,
  direct_sum_decomposition,
  block_diagonal_correction,
  hitchin_line,
};

std::string claim_name(ClaimId c);
ClaimId parse_claim(const std::string &s);
const std::vector<ClaimId> &all_claims();

struct VerificationJob {
  ClaimId claim = ClaimId::fg_local_structure;
  // kept as text so an unsupported algebra becomes an error report
  std::string type = "A";
  int rank = 1;
  /// lambda, or the pair (lambda_1, lambda_2) for separation
  std::vector<Rational> lambdas;
  std::optional<RepKind> rep;
  std::vector<Rational> zs;
  int highest_weight = 0;
  int trunc = LaurentSeries::kDefaultOrder;

  nlohmann::json parameters() const;
};

struct VerificationReport {
  ClaimId claim = ClaimId::fg_local_structure;
  nlohmann::json parameters;
  bool pass = false;
  nlohmann::json witness = nlohmann::json::object();
  std::string anchor;
  std::vector<std::string> ledger_flags;
  std::optional<std::string> error;

  nlohmann::json to_json() const;
};

/// Never throws: failures of the job itself land in `error` with pass = false.
VerificationReport run_job(const VerificationJob &job);

struct SuiteConfig {
  std::vector<ClaimId> claims;
  std::vector<std::pair<std::string, int>> algebras;
  std::vector<Rational> lambdas;
  std::vector<Rational> zs;
  int sl2_max = 40;
  int trunc = LaurentSeries::kDefaultOrder;
  std::optional<RepKind> rep;
};

/// All claims over A1, A2, A3, B2, C2, G2 with lambda in {1, 2, 1/3} and z = 1.
SuiteConfig default_config();
/// Jobs sorted by claim, then parameters.
std::vector<VerificationJob> expand_jobs(const SuiteConfig &config);
/// Runs the jobs on up to `threads` workers; output order is the job order.
std::vector<VerificationReport> run_suite(const SuiteConfig &config, unsigned threads = 0);
bool all_pass(const std::vector<VerificationReport> &reports);
/// {"schema": 1, "pass": ..., "reports": [...]}
nlohmann::json suite_to_json(const std::vector<VerificationReport> &reports);

}  // namespace rigid
