#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "rigid/newton.hpp"
#include "rigid/oper.hpp"
#include "rigid/serialize.hpp"
#include "rigid/suite.hpp"

using namespace rigid;
using nlohmann::json;

namespace {

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_argument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    fail(ErrorKind::parse_error, path + ": " + e.what());
  }
}

void write_json(const json &j, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorKind::invalid_argument, "cannot write " + path);
  out << j.dump(2) << "\n";
}

PolygonMethod pick_method(const std::string &m, const FormalConnection &c) {
  if (m == "companion") return PolygonMethod::companion;
  if (m == "matrix") return PolygonMethod::matrix;
  return c.A.rows() <= 16 ? PolygonMethod::companion : PolygonMethod::matrix;
}

json local_invariants(const FormalConnection &c, const std::string &method_opt) {
  const PolygonMethod m = pick_method(method_opt, c);
  json j{{"coord", coord_name(c.coord)}, {"method", m == PolygonMethod::companion ? "companion" : "matrix"}};
  try {
    j["residue"] = matrix_to_json(residue(c));
    j["monodromy"] = monodromy_type_name(monodromy_type(c));
  } catch (const Error &e) {
    j["residue"] = nullptr;
    j["monodromy"] = std::string("n/a (") + e.what() + ")";
  }
  auto poly = newton_polygon(c, m);
  j["slope"] = to_string(slope(poly));
  j["irregularity"] = to_string(irregularity(poly));
  auto adj = adjoint_connection(c);
  j["adjoint_irregularity"] = to_string(adjoint_irregularity(c, pick_method(method_opt, adj)));
  j["exponents"] = exponents_to_json(irregular_exponents(characteristic_coefficients(c, m)));
  j["newton_polygon"] = polygon_to_json(poly);
  return j;
}

void print_text(const FormalConnection &c, const std::string &method_opt) {
  const PolygonMethod m = pick_method(method_opt, c);
  std::cout << (c.coord == Coord::s ? "at infinity (s = 1/t)" : "at 0") << "\n";
  try {
    const std::string res = to_string(residue(c)), mono = monodromy_type_name(monodromy_type(c));
    std::cout << "  residue: " << res << "\n  monodromy: " << mono << "\n";
  } catch (const Error &e) {
    std::cout << "  residue: n/a (" << e.what() << ")\n";
  }
  auto poly = newton_polygon(c, m);
  auto adj = adjoint_connection(c);
  std::cout << "  slope: " << to_string(slope(poly)) << "\n";
  std::cout << "  irregularity: " << to_string(irregularity(poly)) << "\n";
  std::cout << "  adjoint irregularity: " << to_string(adjoint_irregularity(c, pick_method(method_opt, adj))) << "\n";
  for (const auto &e : irregular_exponents(characteristic_coefficients(c, m))) {
    std::cout << "  exponent " << to_string(e.exponent) << " x" << e.multiplicity << ": psi = " << e.psi.to_string();
    if (!e.leading_coefficients.empty()) {
      std::cout << ", leading";
      for (const auto &a : e.leading_coefficients) std::cout << " " << a.to_string();
    }
    std::cout << "\n";
  }
}

FormalConnection localize(const FormalConnection &c, const std::string &at) {
  if (c.coord != Coord::global) return c;
  if (at == "0") return at_zero(c);
  if (at == "inf") return change_to_infinity(c);
  fail(ErrorKind::invalid_argument, "--at must be 0 or inf");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact local invariants, oper canonical forms and claim verification for formal connections"};
  app.require_subcommand(1);

  // verify
  auto *verify = app.add_subcommand("verify", "run verification jobs and write a JSON report");
  std::string claim = "all", type, rep, out, lambda_mode = "grid";
  int rank = 0, trunc = LaurentSeries::kDefaultOrder, sl2_max = 40;
  unsigned threads = 0;
  std::vector<std::string> lambdas, zs;
  verify->add_option("--claim", claim, "claim id or 'all'");
  verify->add_option("--type", type, "Cartan type A|B|C|D|G (default: the six standard algebras)");
  verify->add_option("--rank", rank, "rank, required with --type");
  verify->add_option("--lambda", lambdas, "extra lambda values p/q (repeatable)");
  verify->add_option("--lambda-mode", lambda_mode, "grid: add to {1, 2, 1/3}; only: use just the given values")
      ->check(CLI::IsMember({"grid", "only"}));
  verify->add_option("--rep", rep, "representation for connection claims")->check(CLI::IsMember({"adjoint", "defining"}));
  verify->add_option("--z", zs, "marked points for the Hitchin claims (default 1)");
  verify->add_option("--trunc", trunc, "series precision for canonicalization")->check(CLI::PositiveNumber);
  verify->add_option("--sl2-max", sl2_max, "largest sl2 highest weight")->check(CLI::Range(0, 40));
  verify->add_option("--threads", threads, "worker threads (0: hardware)");
  verify->add_option("--out", out, "report path (default stdout)");

  // canonicalize
  auto *canon = app.add_subcommand("canonicalize", "reduce a connection to oper canonical form");
  std::string canon_in, canon_out, canon_at = "0";
  canon->add_option("--in", canon_in, "connection JSON")->required();
  canon->add_option("--out", canon_out, "oper JSON (default stdout)");
  canon->add_option("--at", canon_at, "point for global connections: 0 or inf");
  canon->add_option("--trunc", trunc, "series precision")->check(CLI::PositiveNumber);

  // invariants
  auto *inv = app.add_subcommand("invariants", "print residue, slope, irregularity and exponents");
  std::string inv_in, method = "auto", format = "json";
  inv->add_option("--in", inv_in, "connection JSON")->required();
  inv->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  inv->add_option("--method", method, "Newton polygon engine")->check(CLI::IsMember({"auto", "companion", "matrix"}));

  // fg
  auto *fg = app.add_subcommand("fg", "write the Frenkel-Gross connection as JSON");
  std::string fg_type, fg_lambda = "1", fg_rep, fg_out;
  int fg_rank = 0;
  fg->add_option("--type", fg_type, "Cartan type")->required();
  fg->add_option("--rank", fg_rank, "rank")->required();
  fg->add_option("--lambda", fg_lambda, "nonzero rational p/q");
  fg->add_option("--rep", fg_rep, "representation (default: defining, adjoint for G)")
      ->check(CLI::IsMember({"adjoint", "defining"}));
  fg->add_option("--out", fg_out, "connection JSON (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      SuiteConfig cfg = default_config();
      if (claim != "all") cfg.claims = {parse_claim(claim)};
      if (!type.empty()) {
        if (rank <= 0) fail(ErrorKind::invalid_argument, "--type needs --rank");
        cfg.algebras = {{type, rank}};
      }
      if (lambda_mode == "only") {
        if (lambdas.empty()) fail(ErrorKind::invalid_argument, "--lambda-mode only needs --lambda");
        cfg.lambdas.clear();
      }
      for (const auto &l : lambdas) {
        Rational q = parse_rational(l);
        if (std::find(cfg.lambdas.begin(), cfg.lambdas.end(), q) == cfg.lambdas.end()) cfg.lambdas.push_back(q);
      }
      if (!zs.empty()) {
        cfg.zs.clear();
        for (const auto &z : zs) cfg.zs.push_back(parse_rational(z));
      }
      if (!rep.empty()) cfg.rep = parse_rep_kind(rep);
      cfg.trunc = trunc;
      cfg.sl2_max = sl2_max;
      auto reports = run_suite(cfg, threads);
      write_json(suite_to_json(reports), out);
      std::size_t passed = 0;
      for (const auto &r : reports) passed += r.pass;
      std::cerr << passed << "/" << reports.size() << " checks passed\n";
      return all_pass(reports) ? 0 : 1;
    }
    if (fg->parsed()) {
      const CartanType t = parse_cartan_type(fg_type);
      require_supported(t, fg_rank);
      auto alg = ChevalleyAlgebra::build(t, fg_rank);
      const Rational l = parse_rational(fg_lambda);
      if (l == 0) fail(ErrorKind::invalid_argument, "lambda must be nonzero");
      const RepKind k = fg_rep.empty() ? (t == CartanType::G ? RepKind::adjoint : RepKind::defining) : parse_rep_kind(fg_rep);
      write_json(connection_to_json(frenkel_gross(alg, k, Scalar(l))), fg_out);
      return 0;
    }
    if (canon->parsed()) {
      auto c = localize(connection_from_json(read_json(canon_in)), canon_at);
      auto oper = canonicalize(c, trunc);
      json j = oper_to_json(oper);
      j["schema"] = 1;
      write_json(j, canon_out);
      return 0;
    }
    if (inv->parsed()) {
      auto c = connection_from_json(read_json(inv_in));
      if (format == "text") {
        if (c.coord != Coord::s) print_text(c.coord == Coord::global ? at_zero(c) : c, method);
        if (c.coord != Coord::t) print_text(c.coord == Coord::global ? change_to_infinity(c) : c, method);
        return 0;
      }
      json j{{"schema", 1}};
      if (c.coord == Coord::global) {
        j["at_zero"] = local_invariants(at_zero(c), method);
        j["at_infinity"] = local_invariants(change_to_infinity(c), method);
      } else {
        j[c.coord == Coord::t ? "at_zero" : "at_infinity"] = local_invariants(c, method);
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const Error &e) {
    std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return 2;
  }
  return 0;
}
