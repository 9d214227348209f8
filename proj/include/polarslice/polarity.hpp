#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polarslice/rep.hpp"

namespace polarslice {

/// Default seed for all randomized verdicts; printed by the CLI so runs are
/// reproducible by default.
inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr int kDefaultTrials = 3;
inline constexpr int kMaxTrials = 12;

struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct mixed_verdict_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic pseudo-random integer vector, entries uniform in
/// [-10^6, 10^6]. Depends only on (dim, seed); the engine output is mapped
/// by explicit modulus so the stream does not depend on library internals.
inline RationalVector generic_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 eng(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL * (dim + 1));
  RationalVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::int64_t r = static_cast<std::int64_t>(eng() % 2000001ULL) - 1000000;
    v[i] = Rational(static_cast<long long>(r));
  }
  return v;
}

inline RationalVector generic_vector(const OrthogonalRep& rep, std::uint64_t seed) {
  return generic_vector(rep.dim, seed);
}

/// Spanning set {A_1 v, ..., A_n v} of the orbit tangent space at v.
inline std::vector<RationalVector> orbit_tangent(const OrthogonalRep& rep,
                                                 const RationalVector& v) {
  std::vector<RationalVector> t;
  t.reserve(rep.generators.size());
  for (const auto& a : rep.generators) t.push_back(a * v);
  return t;
}

struct OrbitSample {
  std::uint64_t seed = 0;
  RationalVector v;
  std::size_t rank = 0;
  bool nondegenerate = false;  // form restricted to the tangent space
};

inline OrbitSample probe_orbit(const OrthogonalRep& rep, std::uint64_t seed) {
  OrbitSample s;
  s.seed = seed;
  s.v = generic_vector(rep, seed);
  auto tangent = orbit_tangent(rep, s.v);
  s.rank = rank_of_vectors(tangent);
  s.nondegenerate = restricted_form_nondegenerate(rep.gram, tangent);
  return s;
}

struct OrbitScan {
  std::size_t max_rank = 0;
  std::vector<OrbitSample> samples;
  /// true iff some sample attains max_rank with a non-degenerate tangent
  bool has_good_sample = false;
};

inline OrbitScan orbit_scan(const OrthogonalRep& rep, std::uint64_t seed, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  OrbitScan scan;
  for (int k = 0; k < trials; ++k) {
    scan.samples.push_back(probe_orbit(rep, seed + static_cast<std::uint64_t>(k)));
    scan.max_rank = std::max(scan.max_rank, scan.samples.back().rank);
  }
  for (const auto& s : scan.samples)
    if (s.rank == scan.max_rank && s.nondegenerate) scan.has_good_sample = true;
  return scan;
}

/// Generic orbit dimension: maximum tangent rank over sampled points.
inline std::size_t generic_orbit_dimension(const OrthogonalRep& rep,
                                           std::uint64_t seed = kDefaultSeed,
                                           int trials = kDefaultTrials) {
  return orbit_scan(rep, seed, trials).max_rank;
}

/// Basis (columns as vectors) of {u : <u | A_i v> = 0 for all i}, i.e. the
/// orthogonal complement of the orbit tangent space at v.
inline std::vector<RationalVector> tangent_complement(const OrthogonalRep& rep,
                                                      const RationalVector& v) {
  std::vector<RationalVector> rows;
  for (const auto& a : rep.generators) rows.push_back(rep.gram * (a * v));
  ExactMatrix b = nullspace_basis(ExactMatrix::from_rows(rows));
  std::vector<RationalVector> basis;
  for (std::size_t j = 0; j < b.cols(); ++j) basis.push_back(b.column(j));
  return basis;
}

// ---------------------------------------------------------------------------
// The criterion. At a generic point v with maximal non-degenerate tangent,
// the representation admits a slice iff for every generator index j the
// quadratic q_j(u, w) = <u | A_j w> lies in the degree-2 part of the ideal
// generated by the 2n linear forms <u | A_i v>, <w | A_i v>. A quadratic
// lies in that ideal part iff it vanishes on the joint kernel of the linear
// forms, which here splits as N x N with N the orthogonal complement of the
// tangent space. So the test is: B^T (gram A_j) B == 0 for a basis matrix B
// of N. The explicit coefficient-space route over the symmetrized monomial
// basis is kept below (membership_in_quadratic_span) and must agree.
// ---------------------------------------------------------------------------

inline std::vector<bool> criterion_membership(const OrthogonalRep& rep,
                                              const RationalVector& v) {
  std::vector<RationalVector> comp = tangent_complement(rep, v);
  if (comp.empty()) return std::vector<bool>(rep.generators.size(), true);
  ExactMatrix b = ExactMatrix::from_columns(comp);
  std::vector<bool> member;
  member.reserve(rep.generators.size());
  ExactMatrix bt = b.transpose();
  for (const auto& a : rep.generators)
    member.push_back((bt * (rep.gram * (a * b))).is_zero());
  return member;
}

// ---- explicit quadratic coefficient vectors (test cross-check route) ----
//
// Degree-2 monomials in the 2d variables z_0..z_{2d-1} (u-coordinates first,
// then w-coordinates) are ordered as pairs (a, b) with a <= b, lexicographic:
// z_0^2, z_0 z_1, ..., z_0 z_{2d-1}, z_1^2, ... The coefficient space has
// dimension (2d)(2d+1)/2.

inline std::size_t monomial_index(std::size_t a, std::size_t b, std::size_t nvars) {
  if (a > b) std::swap(a, b);
  return a * nvars - a * (a + 1) / 2 + b;
}

/// Coefficient vector of z_k * l for a linear form l (coefficients over z).
inline RationalVector coordinate_times_linear(std::size_t k, const RationalVector& linear) {
  std::size_t nvars = linear.size();
  RationalVector q(nvars * (nvars + 1) / 2, Rational(0));
  for (std::size_t l = 0; l < nvars; ++l)
    if (linear[l] != 0) q[monomial_index(k, l, nvars)] += linear[l];
  return q;
}

/// Coefficient vector of q_j(u, w) = <u | A_j w> = u^T (gram A_j) w.
inline RationalVector pairing_quadratic(const OrthogonalRep& rep, std::size_t j) {
  std::size_t d = rep.dim;
  std::size_t nvars = 2 * d;
  ExactMatrix m = rep.gram * rep.generators[j];
  RationalVector q(nvars * (nvars + 1) / 2, Rational(0));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (m(a, b) != 0) q[monomial_index(a, d + b, nvars)] += m(a, b);
  return q;
}

/// Literal criterion route: q_j against span{ z_k * l : k coordinate,
/// l one of the 2n sampled linear forms }, decided by exact rank.
inline bool membership_in_quadratic_span(const OrthogonalRep& rep,
                                         const RationalVector& v, std::size_t j) {
  std::size_t d = rep.dim;
  std::size_t nvars = 2 * d;
  std::vector<RationalVector> linear_forms;
  for (const auto& a : rep.generators) {
    RationalVector gav = rep.gram * (a * v);
    RationalVector lu(nvars, Rational(0)), lw(nvars, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      lu[i] = gav[i];
      lw[d + i] = gav[i];
    }
    linear_forms.push_back(std::move(lu));
    linear_forms.push_back(std::move(lw));
  }
  std::vector<RationalVector> spanners;
  for (std::size_t k = 0; k < nvars; ++k)
    for (const auto& l : linear_forms) spanners.push_back(coordinate_times_linear(k, l));
  return in_span(pairing_quadratic(rep, j), spanners).member;
}

// ---------------------------------------------------------------------------

enum class Verdict { Polar, NotPolar };

struct SampleRecord {
  std::uint64_t seed = 0;
  std::size_t rank = 0;
  bool nondegenerate = false;
  /// Per-generator-index membership results; empty when the sample was
  /// skipped for not attaining the maximal non-degenerate tangent.
  std::vector<bool> membership;
};

struct Witness {
  RationalVector v;
  std::size_t generator_index = 0;
};

struct PolarityReport {
  Verdict verdict = Verdict::Polar;
  std::size_t orbit_dim = 0;
  std::size_t cohomogeneity = 0;
  std::vector<SampleRecord> samples;
  std::optional<Witness> witness;  // set on NotPolar
  int trials_used = 0;
};

/// Monte-Carlo polarity verdict. Samples `trials` generic points; every
/// sample attaining the maximal non-degenerate tangent must agree. On
/// disagreement the trial count doubles up to kMaxTrials, after which the
/// operation errors rather than guesses.
inline PolarityReport polarity_test(const OrthogonalRep& rep,
                                    std::uint64_t seed = kDefaultSeed,
                                    int trials = kDefaultTrials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  int trials_now = trials;
  while (true) {
    PolarityReport report;
    report.trials_used = trials_now;
    OrbitScan scan = orbit_scan(rep, seed, trials_now);
    report.orbit_dim = scan.max_rank;
    report.cohomogeneity = rep.dim - scan.max_rank;
    if (!scan.has_good_sample)
      throw degeneracy_error(
          "no sample attained a non-degenerate maximal orbit tangent within " +
          std::to_string(trials_now) + " trials");
    int polar_votes = 0, nonpolar_votes = 0;
    std::optional<Witness> witness;
    for (const auto& s : scan.samples) {
      SampleRecord rec{s.seed, s.rank, s.nondegenerate, {}};
      if (s.rank == scan.max_rank && s.nondegenerate) {
        rec.membership = criterion_membership(rep, s.v);
        bool all = true;
        for (std::size_t j = 0; j < rec.membership.size(); ++j) {
          if (!rec.membership[j]) {
            all = false;
            if (!witness) witness = Witness{s.v, j};
            break;
          }
        }
        (all ? polar_votes : nonpolar_votes)++;
      }
      report.samples.push_back(std::move(rec));
    }
    if (nonpolar_votes == 0) {
      report.verdict = Verdict::Polar;
      return report;
    }
    if (polar_votes == 0) {
      report.verdict = Verdict::NotPolar;
      report.witness = witness;
      return report;
    }
    if (trials_now >= kMaxTrials)
      throw mixed_verdict_error("samples disagree on polarity after " +
                                std::to_string(trials_now) + " trials");
    trials_now = std::min(2 * trials_now, kMaxTrials);
  }
}

/// Orthogonal complement of the orbit tangent at a certified-generic v.
/// Requires the tangent at v to be maximal-dimensional and non-degenerate.
inline SliceBasis extract_slice(const OrthogonalRep& rep, const RationalVector& v,
                                std::uint64_t seed = kDefaultSeed,
                                int trials = kDefaultTrials) {
  std::size_t max_rank = generic_orbit_dimension(rep, seed, trials);
  auto tangent = orbit_tangent(rep, v);
  if (rank_of_vectors(tangent) != max_rank)
    throw degeneracy_error("orbit tangent at v is not maximal-dimensional; resample v");
  if (!restricted_form_nondegenerate(rep.gram, tangent))
    throw degeneracy_error("form degenerates on the orbit tangent at v; resample v");
  SliceBasis slice;
  slice.vectors = tangent_complement(rep, v);
  slice.status = SliceStatus::Claimed;
  return slice;
}

struct VerifySliceResult {
  bool certified = false;
  std::string reason;  // "a", "b" or "c" on rejection
  std::optional<RationalVector> witness_v0;
};

/// Certifies a claimed slice: samples generic points v0 in its span and
/// checks (a) rank of the tangent at v0 is dim V - dim slice (at some
/// sample), (b) the slice is exactly orthogonal to the tangent at v0 (at
/// all samples), (c) the form restricted to the slice is non-degenerate.
inline VerifySliceResult verify_slice(const OrthogonalRep& rep, const SliceBasis& slice,
                                      std::uint64_t seed = kDefaultSeed,
                                      int trials = kDefaultTrials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::size_t k = slice.vectors.size();
  for (const auto& s : slice.vectors)
    if (s.size() != rep.dim) throw std::invalid_argument("slice vector length mismatch");
  if (rank_of_vectors(slice.vectors) != k)
    throw std::invalid_argument("slice vectors are linearly dependent");
  if (!restricted_form_nondegenerate(rep.gram, slice.vectors))
    return {false, "c", std::nullopt};
  bool rank_attained = false;
  for (int t = 0; t < trials; ++t) {
    RationalVector coeffs = generic_vector(k, seed + static_cast<std::uint64_t>(t));
    RationalVector v0(rep.dim, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t d = 0; d < rep.dim; ++d) v0[d] += coeffs[i] * slice.vectors[i][d];
    auto tangent = orbit_tangent(rep, v0);
    for (const auto& t_vec : tangent)
      for (const auto& s : slice.vectors)
        if (dot(s, rep.gram * t_vec) != 0) return {false, "b", v0};
    if (rank_of_vectors(tangent) == rep.dim - k) rank_attained = true;
  }
  if (!rank_attained) return {false, "a", std::nullopt};
  return {true, "", std::nullopt};
}

}  // namespace polarslice
