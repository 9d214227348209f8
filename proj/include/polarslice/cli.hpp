#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polarslice/catalog.hpp"
#include "polarslice/polarity.hpp"
#include "polarslice/rep.hpp"
#include "polarslice/transfer.hpp"

namespace polarslice::cli {

// Exit codes: 0 ok, 2 invalid input, 3 numeric failure, 4 expectation
// mismatch.
struct CommandResult {
  int exit_code = 0;
  nlohmann::json payload;
};

namespace detail_cli {

inline std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw invalid_problem("empty entry in number list '" + s + "'");
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw invalid_problem("bad number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw invalid_problem("empty number list");
  return out;
}

inline Eigen::MatrixXd load_float_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_problem("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_problem("JSON parse error in '" + path + "': " + std::string(e.what()));
  }
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw invalid_problem("matrix file must be an array of rows of numbers");
  std::size_t rows = j.size(), cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw invalid_problem("ragged rows in matrix file");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw invalid_problem("matrix entries must be numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

inline nlohmann::json float_matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json point_set_to_json(const CriticalPointSet& cps) {
  nlohmann::json j;
  j["count"] = cps.points.size();
  j["ed_degree_expected"] = cps.ed_degree_expected;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : cps.points) pts.push_back(float_matrix_to_json(p));
  j["points"] = std::move(pts);
  j["distances_squared"] = cps.distances;
  j["residuals"] = cps.residuals;
  return j;
}

inline nlohmann::json report_to_json(const PolarityReport& r, std::uint64_t seed,
                                     int trials) {
  nlohmann::json j;
  j["verdict"] = r.verdict == Verdict::Polar ? "POLAR" : "NOT_POLAR";
  j["orbit_dim"] = r.orbit_dim;
  j["cohomogeneity"] = r.cohomogeneity;
  j["seed"] = seed;
  j["trials"] = trials;
  j["trials_used"] = r.trials_used;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples) {
    nlohmann::json sj;
    sj["seed"] = s.seed;
    sj["rank"] = s.rank;
    sj["nondegenerate"] = s.nondegenerate;
    sj["membership"] = s.membership;
    samples.push_back(std::move(sj));
  }
  j["samples"] = std::move(samples);
  if (r.witness) {
    nlohmann::json w;
    nlohmann::json v = nlohmann::json::array();
    for (const auto& e : r.witness->v) v.push_back(rational_to_string(e));
    w["v"] = std::move(v);
    w["generator_index"] = r.witness->generator_index;
    j["witness"] = std::move(w);
  }
  return j;
}

inline void emit(const CommandResult& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.payload.dump(2) << "\n";
    return;
  }
  // Text mode: one "key: value" line per top-level field, arrays elided.
  for (auto it = r.payload.begin(); it != r.payload.end(); ++it) {
    if (it.value().is_structured())
      out << it.key() << ": [" << it.value().size() << " entries]\n";
    else
      out << it.key() << ": " << it.value().dump() << "\n";
  }
}

}  // namespace detail_cli

/// Routes one command line. Output goes to `out`, usage/errors to `err`.
inline CommandResult dispatch(const std::vector<std::string>& args, std::ostream& out,
                              std::ostream& err) {
  CLI::App app{"polar-slice toolkit: polarity testing and prescribed-spectrum "
               "nearest-matrix solvers"};
  app.require_subcommand(1);
  app.fallthrough();  // global options like --format may trail the subcommand
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "built-in representation families");
  auto* catalog_list_cmd = catalog_cmd->add_subcommand("list", "list family templates");
  auto* catalog_export_cmd = catalog_cmd->add_subcommand("export", "write a family to a file");
  std::string family_id, out_path;
  int param_n = 0, param_m = 0;
  catalog_export_cmd->add_option("family_id", family_id)->required();
  catalog_export_cmd->add_option("--n", param_n, "family parameter n");
  catalog_export_cmd->add_option("--m", param_m, "family parameter m");
  catalog_export_cmd->add_option("--out", out_path, "output path")->required();

  // polarity
  auto* polarity_cmd = app.add_subcommand("polarity", "slice existence testing");
  auto* polarity_test_cmd = polarity_cmd->add_subcommand("test", "decide polarity");
  auto* polarity_slice_cmd = polarity_cmd->add_subcommand("slice", "extract a slice basis");
  std::string rep_path, slice_rep_path, expect, slice_out;
  std::uint64_t seed = kDefaultSeed;
  int trials = kDefaultTrials;
  polarity_test_cmd->add_option("rep", rep_path)->required();
  polarity_test_cmd->add_option("--seed", seed);
  polarity_test_cmd->add_option("--trials", trials);
  polarity_test_cmd->add_option("--expect", expect)
      ->check(CLI::IsMember({"polar", "not-polar"}));
  polarity_slice_cmd->add_option("rep", slice_rep_path)->required();
  polarity_slice_cmd->add_option("--seed", seed);
  polarity_slice_cmd->add_option("--trials", trials);
  polarity_slice_cmd->add_option("--out", slice_out)->required();

  // nearest / critical / eddeg
  double tol = kOnVarietyTol;
  std::string data_path, lambda_str, sigma_str;
  auto* nearest_cmd = app.add_subcommand("nearest", "nearest matrix on the variety");
  auto* nearest_spectrum_cmd = nearest_cmd->add_subcommand("spectrum", "prescribed eigenvalues");
  nearest_spectrum_cmd->add_option("--data", data_path)->required();
  nearest_spectrum_cmd->add_option("--lambda", lambda_str)->required();
  nearest_spectrum_cmd->add_option("--tol", tol);
  auto* nearest_singular_cmd = nearest_cmd->add_subcommand("singular", "prescribed singular values");
  nearest_singular_cmd->add_option("--data", data_path)->required();
  nearest_singular_cmd->add_option("--sigma", sigma_str)->required();
  nearest_singular_cmd->add_option("--tol", tol);

  auto* critical_cmd = app.add_subcommand("critical", "critical point enumeration");
  auto* critical_enum_cmd = critical_cmd->add_subcommand("enumerate", "list all critical points");
  auto* critical_spectrum_cmd = critical_enum_cmd->add_subcommand("spectrum", "");
  critical_spectrum_cmd->add_option("--data", data_path)->required();
  critical_spectrum_cmd->add_option("--lambda", lambda_str)->required();
  critical_spectrum_cmd->add_option("--tol", tol);
  auto* critical_singular_cmd = critical_enum_cmd->add_subcommand("singular", "");
  critical_singular_cmd->add_option("--data", data_path)->required();
  critical_singular_cmd->add_option("--sigma", sigma_str)->required();
  critical_singular_cmd->add_option("--tol", tol);

  auto* eddeg_cmd = app.add_subcommand("eddeg", "critical point counts");
  auto* eddeg_spectrum_cmd = eddeg_cmd->add_subcommand("spectrum", "");
  eddeg_spectrum_cmd->add_option("--lambda", lambda_str)->required();
  int adjoint_n = 0;
  auto* eddeg_adjoint_cmd = eddeg_cmd->add_subcommand("adjoint", "");
  eddeg_adjoint_cmd->add_option("--n", adjoint_n)->required();

  std::vector<std::string> argv_copy(args.rbegin(), args.rend());
  try {
    app.parse(argv_copy);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return {2, {}};
  }

  CommandResult result;
  try {
    if (catalog_list_cmd->parsed()) {
      nlohmann::json families = nlohmann::json::array();
      for (const auto& t : catalog_list())
        families.push_back({{"family_id", t.family_id},
                            {"description", t.description},
                            {"params", t.params}});
      result.payload["command"] = "catalog list";
      result.payload["families"] = std::move(families);
    } else if (catalog_export_cmd->parsed()) {
      FamilySpec spec{family_id, std::nullopt, std::nullopt};
      if (catalog_export_cmd->count("--n")) spec.n = param_n;
      if (catalog_export_cmd->count("--m")) spec.m = param_m;
      CatalogEntry entry = catalog_build(spec);
      save_rep(entry.rep, out_path, entry.slice);
      result.payload["command"] = "catalog export";
      result.payload["name"] = entry.rep.name;
      result.payload["dim"] = entry.rep.dim;
      result.payload["generators"] = entry.rep.generators.size();
      result.payload["out"] = out_path;
    } else if (polarity_test_cmd->parsed()) {
      LoadedRep loaded = load_rep(rep_path);
      PolarityReport report = polarity_test(loaded.rep, seed, trials);
      result.payload = detail_cli::report_to_json(report, seed, trials);
      result.payload["command"] = "polarity test";
      result.payload["name"] = loaded.rep.name;
      if (!expect.empty()) {
        bool want_polar = expect == "polar";
        bool is_polar = report.verdict == Verdict::Polar;
        result.payload["expect"] = expect;
        if (want_polar != is_polar) result.exit_code = 4;
      }
    } else if (polarity_slice_cmd->parsed()) {
      LoadedRep loaded = load_rep(slice_rep_path);
      // Find a usable sample, then extract and certify.
      std::optional<RationalVector> v;
      std::size_t max_rank = generic_orbit_dimension(loaded.rep, seed, trials);
      for (int k = 0; k < 4 * trials && !v; ++k) {
        OrbitSample s = probe_orbit(loaded.rep, seed + static_cast<std::uint64_t>(k));
        if (s.rank == max_rank && s.nondegenerate) v = s.v;
      }
      if (!v)
        throw degeneracy_error("no non-degenerate maximal sample found; retry with another seed");
      SliceBasis slice = extract_slice(loaded.rep, *v, seed, trials);
      VerifySliceResult vr = verify_slice(loaded.rep, slice, seed, trials);
      if (vr.certified) slice.status = SliceStatus::Certified;
      nlohmann::json vecs = nlohmann::json::array();
      for (const auto& row : slice.vectors) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& e : row) jr.push_back(rational_to_string(e));
        vecs.push_back(std::move(jr));
      }
      nlohmann::json doc;
      doc["name"] = loaded.rep.name;
      doc["dim"] = loaded.rep.dim;
      doc["vectors"] = vecs;
      doc["status"] = vr.certified ? "CERTIFIED" : "CLAIMED";
      std::ofstream f(slice_out);
      if (!f) throw invalid_problem("cannot write '" + slice_out + "'");
      f << doc.dump(2) << "\n";
      result.payload["command"] = "polarity slice";
      result.payload["name"] = loaded.rep.name;
      result.payload["seed"] = seed;
      result.payload["slice_dim"] = slice.vectors.size();
      result.payload["status"] = doc["status"];
      result.payload["out"] = slice_out;
    } else if (nearest_spectrum_cmd->parsed()) {
      SpectrumProblem p{detail_cli::load_float_matrix(data_path),
                        detail_cli::parse_number_list(lambda_str)};
      Eigen::MatrixXd b = nearest_with_spectrum(p, tol);
      result.payload["command"] = "nearest spectrum";
      result.payload["matrix"] = detail_cli::float_matrix_to_json(b);
      result.payload["distance_squared"] = (p.data - b).squaredNorm();
      result.payload["residual"] = verify_criticality(p, b, tol);
    } else if (nearest_singular_cmd->parsed()) {
      SingularValueProblem p{detail_cli::load_float_matrix(data_path),
                             detail_cli::parse_number_list(sigma_str)};
      Eigen::MatrixXd b = nearest_with_singular_values(p, tol);
      result.payload["command"] = "nearest singular";
      result.payload["matrix"] = detail_cli::float_matrix_to_json(b);
      result.payload["distance_squared"] = (p.data - b).squaredNorm();
      result.payload["residual"] = verify_criticality(p, b, tol);
    } else if (critical_spectrum_cmd->parsed()) {
      SpectrumProblem p{detail_cli::load_float_matrix(data_path),
                        detail_cli::parse_number_list(lambda_str)};
      result.payload = detail_cli::point_set_to_json(critical_points_spectrum(p, tol));
      result.payload["command"] = "critical enumerate spectrum";
    } else if (critical_singular_cmd->parsed()) {
      SingularValueProblem p{detail_cli::load_float_matrix(data_path),
                             detail_cli::parse_number_list(sigma_str)};
      result.payload = detail_cli::point_set_to_json(critical_points_singular_values(p, tol));
      result.payload["command"] = "critical enumerate singular";
    } else if (eddeg_spectrum_cmd->parsed()) {
      std::vector<double> lambda = detail_cli::parse_number_list(lambda_str);
      std::sort(lambda.begin(), lambda.end());
      result.payload["command"] = "eddeg spectrum";
      result.payload["lambda"] = lambda;
      result.payload["ed_degree"] = ed_degree_spectrum(lambda);
    } else if (eddeg_adjoint_cmd->parsed()) {
      result.payload["command"] = "eddeg adjoint";
      result.payload["n"] = adjoint_n;
      result.payload["ed_degree"] = ed_degree_adjoint_orbit(static_cast<std::size_t>(adjoint_n));
    }
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return {2, {}};
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return {2, {}};
  } catch (const family_error& e) {
    err << "error: " << e.what() << "\n";
    return {2, {}};
  } catch (const invalid_problem& e) {
    err << "error: " << e.what() << "\n";
    return {2, {}};
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return {2, {}};
  } catch (const numeric_error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return {3, {}};
  } catch (const nongeneric_error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return {3, {}};
  } catch (const degeneracy_error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return {3, {}};
  } catch (const mixed_verdict_error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return {3, {}};
  }
  detail_cli::emit(result, format, out);
  return result;
}

}  // namespace polarslice::cli
