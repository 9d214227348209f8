#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "polarslice/exact_matrix.hpp"

namespace polarslice {

/// An orthogonal representation as exact data: the space dimension, the Gram
/// matrix of the invariant bilinear form, and the images in End(V) of a
/// basis of the acting Lie algebra. Only the Lie algebra acts; no group
/// elements appear anywhere.
struct OrthogonalRep {
  std::string name;
  std::size_t dim = 0;
  ExactMatrix gram;                    // dim x dim, symmetric, invertible
  std::vector<ExactMatrix> generators; // each dim x dim, skew-adjoint wrt gram
  nlohmann::json metadata = nlohmann::json::object();
};

enum class SliceStatus { Claimed, Certified };

struct SliceBasis {
  std::vector<RationalVector> vectors;
  SliceStatus status = SliceStatus::Claimed;
};

struct ValidationReport {
  bool ok = true;
  std::string violation;               // first violated invariant, empty if ok
  std::optional<std::size_t> generator_index;
};

struct validation_error : std::runtime_error {
  ValidationReport report;
  explicit validation_error(ValidationReport r)
      : std::runtime_error("invalid representation: " + r.violation), report(std::move(r)) {}
};

/// Checks the structural invariants: gram symmetric and invertible, every
/// generator A exactly skew-adjoint (A^T gram + gram A == 0).
inline ValidationReport validate(const OrthogonalRep& rep) {
  if (rep.gram.rows() != rep.dim || rep.gram.cols() != rep.dim)
    return {false, "gram has wrong shape", std::nullopt};
  if (!rep.gram.is_symmetric()) return {false, "gram not symmetric", std::nullopt};
  if (rank(rep.gram) != rep.dim) return {false, "gram singular", std::nullopt};
  for (std::size_t k = 0; k < rep.generators.size(); ++k) {
    const ExactMatrix& a = rep.generators[k];
    if (a.rows() != rep.dim || a.cols() != rep.dim)
      return {false, "generator has wrong shape", k};
    if (!(a.transpose() * rep.gram + rep.gram * a).is_zero())
      return {false, "generator not skew-adjoint for gram", k};
  }
  return {};
}

// ---- JSON (de)serialization; rationals travel as strings "p" or "p/q" ----

inline nlohmann::json matrix_to_json(const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(rational_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ExactMatrix matrix_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw parse_error("field '" + field + "': expected array of rows");
  std::vector<RationalVector> rows;
  for (const auto& jr : j) {
    if (!jr.is_array()) throw parse_error("field '" + field + "': expected array row");
    RationalVector row;
    for (const auto& e : jr) {
      if (!e.is_string())
        throw parse_error("field '" + field + "': entries must be rational strings");
      row.push_back(parse_rational(e.get<std::string>()));
    }
    if (!rows.empty() && row.size() != rows[0].size())
      throw parse_error("field '" + field + "': ragged rows");
    rows.push_back(std::move(row));
  }
  return ExactMatrix::from_rows(rows);
}

inline nlohmann::json rep_to_json(const OrthogonalRep& rep,
                                  const std::optional<SliceBasis>& slice = std::nullopt) {
  nlohmann::json j;
  j["name"] = rep.name;
  j["dim"] = rep.dim;
  j["gram"] = matrix_to_json(rep.gram);
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : rep.generators) gens.push_back(matrix_to_json(g));
  j["generators"] = std::move(gens);
  if (slice) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& v : slice->vectors) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& e : v) row.push_back(rational_to_string(e));
      rows.push_back(std::move(row));
    }
    j["slice"] = std::move(rows);
  }
  j["metadata"] = rep.metadata;
  return j;
}

struct LoadedRep {
  OrthogonalRep rep;
  std::optional<SliceBasis> slice;  // status Claimed when present
};

/// Parses a representation document and validates it; refuses invalid input.
inline LoadedRep rep_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("representation file: expected JSON object");
  LoadedRep out;
  if (!j.contains("name") || !j["name"].is_string())
    throw parse_error("field 'name': missing or not a string");
  out.rep.name = j["name"].get<std::string>();
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    throw parse_error("field 'dim': missing or not a non-negative integer");
  out.rep.dim = j["dim"].get<std::size_t>();
  if (!j.contains("gram")) throw parse_error("field 'gram': missing");
  out.rep.gram = matrix_from_json(j["gram"], "gram");
  if (out.rep.gram.rows() != out.rep.dim || out.rep.gram.cols() != out.rep.dim)
    throw parse_error("field 'gram': shape does not match dim");
  if (!j.contains("generators") || !j["generators"].is_array())
    throw parse_error("field 'generators': missing or not an array");
  for (const auto& jg : j["generators"])
    out.rep.generators.push_back(matrix_from_json(jg, "generators"));
  if (j.contains("metadata")) out.rep.metadata = j["metadata"];
  if (j.contains("slice")) {
    ExactMatrix s = matrix_from_json(j["slice"], "slice");
    if (s.cols() != out.rep.dim && s.rows() > 0)
      throw parse_error("field 'slice': vector length does not match dim");
    SliceBasis sb;
    for (std::size_t i = 0; i < s.rows(); ++i) sb.vectors.push_back(s.row(i));
    out.slice = std::move(sb);
  }
  ValidationReport vr = validate(out.rep);
  if (!vr.ok) throw validation_error(vr);
  return out;
}

inline LoadedRep load_rep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error("JSON parse error in '" + path + "': " + e.what());
  }
  return rep_from_json(j);
}

inline void save_rep(const OrthogonalRep& rep, const std::string& path,
                     const std::optional<SliceBasis>& slice = std::nullopt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << rep_to_json(rep, slice).dump(2) << "\n";
}

}  // namespace polarslice
