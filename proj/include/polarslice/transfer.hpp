#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarslice {

// Default tolerances: double-precision eigensolvers deliver ~1e-13; two
// orders of safety margin per composition level.
inline constexpr double kOnVarietyTol = 1e-8;
inline constexpr double kCriticalityTol = 1e-8;
inline constexpr double kMatchingTol = 1e-7;

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct nongeneric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_problem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Closest-matrix problem: symmetric data A and a prescribed spectrum
/// lambda (non-decreasing, multiplicities allowed).
struct SpectrumProblem {
  Eigen::MatrixXd data;
  std::vector<double> lambda;

  void check() const {
    if (data.rows() != data.cols()) throw invalid_problem("data must be square");
    if (static_cast<Eigen::Index>(lambda.size()) != data.rows())
      throw invalid_problem("lambda length must equal matrix size");
    double scale = std::max(1.0, data.norm());
    if ((data - data.transpose()).norm() > 1e-12 * scale)
      throw invalid_problem("data must be symmetric");
    if (!std::is_sorted(lambda.begin(), lambda.end()))
      throw invalid_problem("lambda must be non-decreasing");
  }
};

/// Nearest-matrix problem with prescribed singular values: n x m data
/// (n <= m) and non-increasing non-negative sigma of length n.
struct SingularValueProblem {
  Eigen::MatrixXd data;
  std::vector<double> sigma;

  void check() const {
    if (data.rows() > data.cols()) throw invalid_problem("data must have rows <= cols");
    if (static_cast<Eigen::Index>(sigma.size()) != data.rows())
      throw invalid_problem("sigma length must equal row count");
    if (!std::is_sorted(sigma.rbegin(), sigma.rend()))
      throw invalid_problem("sigma must be non-increasing");
    for (double s : sigma)
      if (s < 0) throw invalid_problem("sigma must be non-negative");
  }
};

struct CriticalPointSet {
  std::vector<Eigen::MatrixXd> points;
  std::vector<double> distances;  // squared Frobenius distances to data
  std::vector<double> residuals;
  std::size_t ed_degree_expected = 0;
};

// ---- counting ----

inline std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

/// n! / (n_1! ... n_k!) for the multiplicity pattern of the sorted list.
inline std::size_t ed_degree_spectrum(const std::vector<double>& lambda) {
  if (!std::is_sorted(lambda.begin(), lambda.end()))
    throw invalid_problem("lambda must be sorted");
  std::size_t result = factorial(lambda.size());
  std::size_t run = 1;
  for (std::size_t i = 1; i <= lambda.size(); ++i) {
    if (i < lambda.size() && lambda[i] == lambda[i - 1]) {
      ++run;
    } else {
      result /= factorial(run);
      run = 1;
    }
  }
  return result;
}

/// Closed orbit of a generic traceless diagonal under conjugation: the
/// count equals the order of the permutation group on n letters.
inline std::size_t ed_degree_adjoint_orbit(std::size_t n) {
  if (n < 2) throw invalid_problem("n must be >= 2");
  return factorial(n);
}

// ---- spectrum family ----

namespace detail_transfer {

struct EigDecomp {
  Eigen::MatrixXd g;       // columns: eigenvectors, eigenvalues ascending
  Eigen::VectorXd mu;
};

inline EigDecomp eigendecompose(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw numeric_error("eigendecomposition failed to converge");
  return {es.eigenvectors(), es.eigenvalues()};
}

inline void require_distinct(const Eigen::VectorXd& mu, double scale) {
  for (Eigen::Index i = 0; i + 1 < mu.size(); ++i)
    if (std::abs(mu[i + 1] - mu[i]) <= 1e-8 * std::max(1.0, scale))
      throw nongeneric_error("non-generic data: eigenvalues " + std::to_string(i) +
                             " and " + std::to_string(i + 1) + " collide");
}

/// Distinct rearrangements of a sorted list, lexicographic.
inline std::vector<std::vector<double>> multiset_permutations(std::vector<double> sorted) {
  std::vector<std::vector<double>> out;
  do {
    out.push_back(sorted);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return out;
}

inline std::vector<Eigen::MatrixXd> skew_basis_dense(Eigen::Index n) {
  std::vector<Eigen::MatrixXd> b;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
      s(i, j) = 1;
      s(j, i) = -1;
      b.push_back(std::move(s));
    }
  return b;
}

}  // namespace detail_transfer

/// Criticality residual for the prescribed-spectrum variety: the maximal
/// normalized pairing of data - point against the tangent spanning set
/// {S B - B S : S skew}. Throws if the point is off the variety.
inline double verify_criticality(const SpectrumProblem& p, const Eigen::MatrixXd& b,
                                 double tol = kOnVarietyTol) {
  p.check();
  auto eig = detail_transfer::eigendecompose(b);
  double scale = std::max(1.0, b.norm());
  for (Eigen::Index i = 0; i < eig.mu.size(); ++i)
    if (std::abs(eig.mu[i] - p.lambda[static_cast<std::size_t>(i)]) > tol * scale)
      throw numeric_error("point is off the variety: spectrum mismatch");
  Eigen::MatrixXd r = p.data - b;
  double rn = r.norm();
  double worst = 0;
  for (const auto& s : detail_transfer::skew_basis_dense(b.rows())) {
    Eigen::MatrixXd t = s * b - b * s;
    double tn = t.norm();
    // directions along which the variety has no extent (e.g. repeated
    // eigenvalues) leave only rounding noise in t; skip them
    if (tn <= 1e-12 * scale) continue;
    double pairing = std::abs((r.array() * t.array()).sum());
    worst = std::max(worst, pairing / (rn * tn + 1e-300));
  }
  return worst;
}

/// All ED critical points for generic data: one per distinct rearrangement
/// of lambda over the data's eigenbasis, ordered lexicographically in the
/// assignment.
inline CriticalPointSet critical_points_spectrum(const SpectrumProblem& p,
                                                 double tol = kOnVarietyTol) {
  p.check();
  auto eig = detail_transfer::eigendecompose(p.data);
  detail_transfer::require_distinct(eig.mu, p.data.norm());
  CriticalPointSet out;
  out.ed_degree_expected = ed_degree_spectrum(p.lambda);
  for (const auto& perm : detail_transfer::multiset_permutations(p.lambda)) {
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(perm.data(), perm.size());
    Eigen::MatrixXd b = eig.g * d.asDiagonal() * eig.g.transpose();
    out.points.push_back(b);
    out.distances.push_back((p.data - b).squaredNorm());
    out.residuals.push_back(verify_criticality(p, b, tol));
  }
  return out;
}

/// The minimizer: arrange lambda in the same order as the data's
/// eigenvalues (both ascending here). Valid for repeated eigenvalues too;
/// only the enumeration insists on generic data.
inline Eigen::MatrixXd nearest_with_spectrum(const SpectrumProblem& p,
                                             double /*tol*/ = kOnVarietyTol) {
  p.check();
  auto eig = detail_transfer::eigendecompose(p.data);
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(p.lambda.data(), p.lambda.size());
  return eig.g * d.asDiagonal() * eig.g.transpose();
}

// ---- singular-value family ----

namespace detail_transfer {

struct SvdDecomp {
  Eigen::MatrixXd u;  // n x n
  Eigen::MatrixXd v;  // m x m
  Eigen::VectorXd sv; // length n, non-increasing
};

/// Full SVD with deterministic signs: the first row of U is made
/// non-negative column by column (compensated in V).
inline SvdDecomp svd_decompose(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdDecomp d{svd.matrixU(), svd.matrixV(), svd.singularValues()};
  for (Eigen::Index k = 0; k < d.u.cols(); ++k)
    if (d.u(0, k) < 0) {
      d.u.col(k) *= -1;
      d.v.col(k) *= -1;
    }
  return d;
}

inline void require_distinct_nonzero(const Eigen::VectorXd& sv, double scale,
                                     const char* what) {
  double s = std::max(1.0, scale);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (std::abs(sv[i]) <= 1e-8 * s)
      throw nongeneric_error(std::string("non-generic ") + what + ": value " +
                             std::to_string(i) + " is zero");
  for (Eigen::Index i = 0; i + 1 < sv.size(); ++i)
    if (std::abs(sv[i] - sv[i + 1]) <= 1e-8 * s)
      throw nongeneric_error(std::string("non-generic ") + what + ": values " +
                             std::to_string(i) + " and " + std::to_string(i + 1) +
                             " collide");
}

inline Eigen::MatrixXd rect_diagonal(const std::vector<double>& d, Eigen::Index n,
                                     Eigen::Index m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = d[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace detail_transfer

/// Criticality residual for the prescribed-singular-value variety; the
/// tangent spanning set is {S M' - M' T : S, T skew}.
inline double verify_criticality(const SingularValueProblem& p, const Eigen::MatrixXd& b,
                                 double tol = kOnVarietyTol) {
  p.check();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  double scale = std::max(1.0, b.norm());
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    if (std::abs(svd.singularValues()[i] - p.sigma[static_cast<std::size_t>(i)]) > tol * scale)
      throw numeric_error("point is off the variety: singular value mismatch");
  Eigen::MatrixXd r = p.data - b;
  double rn = r.norm();
  double worst = 0;
  for (const auto& s : detail_transfer::skew_basis_dense(b.rows())) {
    Eigen::MatrixXd t = s * b;
    if (t.norm() <= 1e-12 * scale) continue;
    double pairing = std::abs((r.array() * t.array()).sum());
    worst = std::max(worst, pairing / (rn * t.norm() + 1e-300));
  }
  for (const auto& s : detail_transfer::skew_basis_dense(b.cols())) {
    Eigen::MatrixXd t = -b * s;
    if (t.norm() <= 1e-12 * scale) continue;
    double pairing = std::abs((r.array() * t.array()).sum());
    worst = std::max(worst, pairing / (rn * t.norm() + 1e-300));
  }
  return worst;
}

/// Enumerates all critical points for generic rectangular data (n < m):
/// the diagonal slice carries one point per signed rearrangement of sigma,
/// 2^n n! in total, conjugated back through the data's SVD. Ordering is
/// lexicographic in (assignment, sign pattern), positive signs first.
inline CriticalPointSet critical_points_singular_values(const SingularValueProblem& p,
                                                        double tol = kOnVarietyTol) {
  p.check();
  const Eigen::Index n = p.data.rows(), m = p.data.cols();
  if (n == m)
    throw invalid_problem("unsupported: square case parity");
  auto svd = detail_transfer::svd_decompose(p.data);
  detail_transfer::require_distinct_nonzero(svd.sv, p.data.norm(), "data singular values");
  Eigen::VectorXd sig = Eigen::Map<const Eigen::VectorXd>(p.sigma.data(), p.sigma.size());
  detail_transfer::require_distinct_nonzero(sig, sig.norm(), "prescribed sigma");
  std::vector<double> ascending = p.sigma;
  std::sort(ascending.begin(), ascending.end());
  CriticalPointSet out;
  out.ed_degree_expected = (std::size_t{1} << n) * factorial(static_cast<std::size_t>(n));
  for (const auto& perm : detail_transfer::multiset_permutations(ascending)) {
    for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
      std::vector<double> d = perm;
      for (Eigen::Index i = 0; i < n; ++i)
        if (signs & (std::size_t{1} << i)) d[static_cast<std::size_t>(i)] *= -1;
      Eigen::MatrixXd b =
          svd.u * detail_transfer::rect_diagonal(d, n, m) * svd.v.transpose();
      out.points.push_back(b);
      out.distances.push_back((p.data - b).squaredNorm());
      out.residuals.push_back(verify_criticality(p, b, tol));
    }
  }
  return out;
}

/// Nearest matrix with prescribed singular values: match sigma to the
/// data's singular values in like (non-increasing) order, positive signs.
inline Eigen::MatrixXd nearest_with_singular_values(const SingularValueProblem& p,
                                                    double /*tol*/ = kOnVarietyTol) {
  p.check();
  auto svd = detail_transfer::svd_decompose(p.data);
  detail_transfer::require_distinct_nonzero(svd.sv, p.data.norm(), "data singular values");
  return svd.u * detail_transfer::rect_diagonal(p.sigma, p.data.rows(), p.data.cols()) *
         svd.v.transpose();
}

// ---- property-check operations ----

namespace detail_transfer {

/// Set equality up to tol after greedy optimal matching; sizes must agree.
inline bool match_point_sets(const std::vector<Eigen::MatrixXd>& a,
                             const std::vector<Eigen::MatrixXd>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = (x - b[j]).norm();
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best > tol * std::max(1.0, x.norm())) return false;
    used[best_j] = true;
  }
  return true;
}

}  // namespace detail_transfer

/// Critical points commute with the group action: the critical set for
/// g.data equals g applied to the critical set for data.
inline bool equivariance_check(const SpectrumProblem& p, const Eigen::MatrixXd& g,
                               double tol = kMatchingTol) {
  if ((g.transpose() * g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).norm() > tol)
    throw invalid_problem("g must be orthogonal");
  CriticalPointSet base = critical_points_spectrum(p);
  SpectrumProblem moved{g * p.data * g.transpose(), p.lambda};
  CriticalPointSet shifted = critical_points_spectrum(moved);
  std::vector<Eigen::MatrixXd> mapped;
  for (const auto& b : base.points) mapped.push_back(g * b * g.transpose());
  return detail_transfer::match_point_sets(mapped, shifted.points, tol);
}

inline bool equivariance_check(const SingularValueProblem& p, const Eigen::MatrixXd& gu,
                               const Eigen::MatrixXd& gv, double tol = kMatchingTol) {
  if ((gu.transpose() * gu - Eigen::MatrixXd::Identity(gu.rows(), gu.cols())).norm() > tol ||
      (gv.transpose() * gv - Eigen::MatrixXd::Identity(gv.rows(), gv.cols())).norm() > tol)
    throw invalid_problem("(gu, gv) must be orthogonal");
  CriticalPointSet base = critical_points_singular_values(p);
  SingularValueProblem moved{gu * p.data * gv.transpose(), p.sigma};
  CriticalPointSet shifted = critical_points_singular_values(moved);
  std::vector<Eigen::MatrixXd> mapped;
  for (const auto& b : base.points) mapped.push_back(gu * b * gv.transpose());
  return detail_transfer::match_point_sets(mapped, shifted.points, tol);
}

namespace detail_transfer {

/// Works for rectangular shapes, unlike Eigen's isDiagonal.
inline bool is_diagonal(const Eigen::MatrixXd& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol * std::max(1.0, m.norm())) return false;
  return true;
}

}  // namespace detail_transfer

/// For data already in the diagonal slice, every critical point stays in
/// the slice: max off-diagonal magnitude <= tol * ||point||.
inline bool slice_containment_check(const SpectrumProblem& p, double tol = kCriticalityTol) {
  if (!detail_transfer::is_diagonal(p.data, 1e-14)) throw invalid_problem("data must be diagonal");
  for (const auto& b : critical_points_spectrum(p).points) {
    double off = 0;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (i != j) off = std::max(off, std::abs(b(i, j)));
    if (off > tol * b.norm()) return false;
  }
  return true;
}

inline bool slice_containment_check(const SingularValueProblem& p,
                                    double tol = kCriticalityTol) {
  if (!detail_transfer::is_diagonal(p.data, 1e-14))
    throw invalid_problem("data must be diagonal");
  for (const auto& b : critical_points_singular_values(p).points) {
    double off = 0;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (i != j) off = std::max(off, std::abs(b(i, j)));
    if (off > tol * b.norm()) return false;
  }
  return true;
}

}  // namespace polarslice
