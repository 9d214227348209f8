#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"
#include "polarslice/transfer.hpp"

using namespace polarslice;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Eigen::MatrixXd rect_diag(std::initializer_list<double> d, int n, int m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, m);
  int i = 0;
  for (double x : d) out(i, i) = x, ++i;
  return out;
}

}  // namespace

TEST_CASE("problem validation") {
  Eigen::MatrixXd ns(2, 2);
  ns << 0, 1, 0, 0;
  CHECK_THROWS_AS((SpectrumProblem{ns, {0, 1}}.check()), invalid_problem);
  CHECK_THROWS_AS((SpectrumProblem{diag2(1, 2), {2, 1}}.check()), invalid_problem);
  CHECK_THROWS_AS((SpectrumProblem{diag2(1, 2), {1}}.check()), invalid_problem);
  CHECK_NOTHROW((SpectrumProblem{diag2(1, 2), {1, 1}}.check()));

  Eigen::MatrixXd tall(3, 2);
  tall.setZero();
  CHECK_THROWS_AS((SingularValueProblem{tall, {1, 1, 1}}.check()), invalid_problem);
  CHECK_THROWS_AS((SingularValueProblem{rect_diag({3, 1}, 2, 3), {1, 2}}.check()),
                  invalid_problem);  // sigma must be non-increasing
  CHECK_THROWS_AS((SingularValueProblem{rect_diag({3, 1}, 2, 3), {1, -1}}.check()),
                  invalid_problem);
  CHECK_NOTHROW((SingularValueProblem{rect_diag({3, 1}, 2, 3), {2, 1}}.check()));
}

TEST_CASE("critical point counts") {
  CHECK(ed_degree_spectrum({1, 2, 3}) == 6);
  CHECK(ed_degree_spectrum({7, 7, 9}) == 3);
  CHECK(ed_degree_spectrum({5, 5, 5}) == 1);
  CHECK(ed_degree_spectrum({1, 1, 2, 2}) == 6);
  CHECK(ed_degree_spectrum({4}) == 1);
  CHECK_THROWS_AS(ed_degree_spectrum({2, 1}), invalid_problem);
  CHECK(ed_degree_adjoint_orbit(2) == 2);
  CHECK(ed_degree_adjoint_orbit(3) == 6);
  CHECK(ed_degree_adjoint_orbit(4) == 24);
  CHECK_THROWS_AS(ed_degree_adjoint_orbit(1), invalid_problem);
}

TEST_CASE("nearest matrix with prescribed spectrum, explicit cases") {
  // diagonal data stays diagonal, values matched in like order
  SpectrumProblem p1{diag2(1, 2), {5, 6}};
  CHECK((nearest_with_spectrum(p1) - diag2(5, 6)).norm() < 1e-12);

  // prescribing the data's own spectrum returns the data
  Eigen::MatrixXd a(3, 3);
  a << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + 3);
  CHECK((nearest_with_spectrum({a, lam}) - a).norm() < 1e-10);

  // unsorted diagonal data: ascending lambda pairs with ascending eigenvalues
  SpectrumProblem p2{diag2(3, 1), {2, 5}};
  Eigen::MatrixXd b = nearest_with_spectrum(p2);
  CHECK((b - diag2(5, 2)).norm() < 1e-12);
  // brute force over both arrangements confirms the minimum
  double best = std::min((diag2(3, 1) - diag2(2, 5)).squaredNorm(),
                         (diag2(3, 1) - diag2(5, 2)).squaredNorm());
  CHECK((p2.data - b).squaredNorm() == Catch::Approx(best));
}

TEST_CASE("spectrum critical point enumeration") {
  SpectrumProblem p{diag2(0, 1), {3, 4}};
  CriticalPointSet cps = critical_points_spectrum(p);
  REQUIRE(cps.points.size() == 2);
  CHECK(cps.ed_degree_expected == 2);
  CHECK((cps.points[0] - diag2(3, 4)).norm() < 1e-12);
  CHECK((cps.points[1] - diag2(4, 3)).norm() < 1e-12);
  for (double r : cps.residuals) CHECK(r <= kCriticalityTol);

  // stationarity, checked against the raw Lagrange pairing
  for (const auto& bp : cps.points) {
    Eigen::MatrixXd s(2, 2);
    s << 0, 1, -1, 0;
    Eigen::MatrixXd t = s * bp - bp * s;
    CHECK(std::abs(((p.data - bp).array() * t.array()).sum()) < 1e-12);
  }

  // repeated lambda: 3 points for (7, 7, 9)
  Eigen::MatrixXd a(3, 3);
  a << 1, 0.2, 0.1, 0.2, 2, 0.3, 0.1, 0.3, 5;
  CriticalPointSet reps = critical_points_spectrum({a, {7, 7, 9}});
  CHECK(reps.points.size() == 3);
  CHECK(reps.ed_degree_expected == 3);
  for (double r : reps.residuals) CHECK(r <= kCriticalityTol);

  // the minimizer is among the critical points and equals nearest_with_spectrum
  Eigen::MatrixXd nearest = nearest_with_spectrum({a, {7, 7, 9}});
  double dmin = *std::min_element(reps.distances.begin(), reps.distances.end());
  CHECK(std::abs(dmin - (a - nearest).squaredNorm()) < 1e-9);

  // colliding data eigenvalues are refused by the enumeration
  CHECK_THROWS_AS(critical_points_spectrum({diag2(1, 1), {3, 4}}), nongeneric_error);
}

TEST_CASE("spectrum criticality verification") {
  SpectrumProblem p{diag2(0, 1), {3, 4}};
  CHECK(verify_criticality(p, diag2(3, 4)) <= kCriticalityTol);
  CHECK(verify_criticality(p, diag2(4, 3)) <= kCriticalityTol);
  // on-variety but not critical: a rotated copy pairs against the tangent
  Eigen::MatrixXd g(2, 2);
  double c = std::cos(0.3), s = std::sin(0.3);
  g << c, -s, s, c;
  CHECK(verify_criticality(p, g * diag2(3, 4) * g.transpose()) > 1e-3);
  // off-variety points are an error, not a large residual
  CHECK_THROWS_AS(verify_criticality(p, diag2(3, 5)), numeric_error);
}

TEST_CASE("same-order matching beats every other arrangement") {
  std::mt19937_64 eng(101);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(eng() % 5ULL);  // up to 6
    auto mu = oracles::random_sorted_distinct(n, eng);
    auto lam = oracles::random_sorted_distinct(n, eng);
    // sum over i of (mu_i - lam_{pi(i)})^2, brute force over all n!
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double identity_cost = 0;
    for (int i = 0; i < n; ++i) identity_cost += (mu[i] - lam[i]) * (mu[i] - lam[i]);
    double second_best = std::numeric_limits<double>::infinity();
    do {
      bool is_identity = true;
      double cost = 0;
      for (int i = 0; i < n; ++i) {
        if (perm[i] != i) is_identity = false;
        cost += (mu[i] - lam[perm[i]]) * (mu[i] - lam[perm[i]]);
      }
      if (!is_identity) second_best = std::min(second_best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(identity_cost < second_best - 1e-10);
  }
}

TEST_CASE("nearest matrix with prescribed singular values, explicit cases") {
  SingularValueProblem p{rect_diag({3, 1}, 2, 3), {5, 2}};
  Eigen::MatrixXd b = nearest_with_singular_values(p);
  CHECK((b - rect_diag({5, 2}, 2, 3)).norm() < 1e-10);

  // prescribing the data's own singular values returns the data
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 0.5, -1, 0.3, 2;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::vector<double> sig(svd.singularValues().data(), svd.singularValues().data() + 2);
  CHECK((nearest_with_singular_values({m, sig}) - m).norm() < 1e-10);

  // negative diagonal entries: the nearest point flips toward positive
  SingularValueProblem pn{rect_diag({-5, 2}, 2, 3), {3, 1}};
  Eigen::MatrixXd bn = nearest_with_singular_values(pn);
  // |−5| is the top singular value, carried by (−e1, e1); diag(−3, 1) wins
  CHECK((bn - rect_diag({-3, 1}, 2, 3)).norm() < 1e-10);
  CHECK((pn.data - bn).squaredNorm() <
        (pn.data - rect_diag({3, 1}, 2, 3)).squaredNorm());
}

TEST_CASE("singular-value critical point enumeration") {
  SingularValueProblem tiny{Eigen::MatrixXd(1, 2), {2}};
  tiny.data << 3, 4;
  CriticalPointSet cps = critical_points_singular_values(tiny);
  REQUIRE(cps.points.size() == 2);
  CHECK(cps.ed_degree_expected == 2);
  // antipodal points on the circle of radius 2 along the data direction
  Eigen::MatrixXd unit(1, 2);
  unit << 0.6, 0.8;
  bool plus = false, minus = false;
  for (const auto& q : cps.points) {
    if ((q - 2 * unit).norm() < 1e-9) plus = true;
    if ((q + 2 * unit).norm() < 1e-9) minus = true;
  }
  CHECK(plus);
  CHECK(minus);
  for (double r : cps.residuals) CHECK(r <= kCriticalityTol);

  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 0.5, -1, 0.3, 2;
  SingularValueProblem p{m, {4, 1}};
  CriticalPointSet big = critical_points_singular_values(p);
  CHECK(big.points.size() == 8);  // 2^2 * 2!
  CHECK(big.ed_degree_expected == 8);
  for (double r : big.residuals) CHECK(r <= kCriticalityTol);
  for (const auto& q : big.points) {
    Eigen::JacobiSVD<Eigen::MatrixXd> s(q);
    CHECK(std::abs(s.singularValues()[0] - 4) < 1e-8);
    CHECK(std::abs(s.singularValues()[1] - 1) < 1e-8);
  }
  // minimal distance agrees with the dedicated nearest-point routine
  double dmin = *std::min_element(big.distances.begin(), big.distances.end());
  CHECK(std::abs(dmin - (m - nearest_with_singular_values(p)).squaredNorm()) < 1e-9);

  // square data is out of scope and says so
  SingularValueProblem sq{diag2(2, 1), {3, 1}};
  CHECK_THROWS_WITH(critical_points_singular_values(sq),
                    "unsupported: square case parity");

  // degenerate data is refused with the colliding pair named
  SingularValueProblem coll{rect_diag({2, 2}, 2, 3), {3, 1}};
  CHECK_THROWS_AS(critical_points_singular_values(coll), nongeneric_error);
  try {
    critical_points_singular_values(coll);
  } catch (const nongeneric_error& e) {
    CHECK(std::string(e.what()).find("0") != std::string::npos);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
  SingularValueProblem zero{rect_diag({2, 0}, 2, 3), {3, 1}};
  CHECK_THROWS_AS(critical_points_singular_values(zero), nongeneric_error);
}

TEST_CASE("singular criticality verification") {
  SingularValueProblem p{rect_diag({3, 1}, 2, 3), {5, 2}};
  CHECK(verify_criticality(p, rect_diag({5, 2}, 2, 3)) <= kCriticalityTol);
  CHECK_THROWS_AS(verify_criticality(p, rect_diag({5, 3}, 2, 3)), numeric_error);
  // wrong assignment is still critical; a generic on-variety point is not
  std::mt19937_64 eng(7);
  Eigen::MatrixXd gu = oracles::random_orthogonal(2, eng);
  Eigen::MatrixXd gv = oracles::random_orthogonal(3, eng);
  Eigen::MatrixXd q = gu * rect_diag({5, 2}, 2, 3) * gv.transpose();
  CHECK(verify_criticality(p, q) > 1e-3);
}

TEST_CASE("equivariance under the acting group") {
  std::mt19937_64 eng(55);
  Eigen::MatrixXd a = oracles::random_symmetric(3, eng);
  SpectrumProblem p{a, {1, 2, 4}};
  CHECK(equivariance_check(p, Eigen::MatrixXd::Identity(3, 3)));
  for (int t = 0; t < 5; ++t)
    CHECK(equivariance_check(p, oracles::random_orthogonal(3, eng)));
  Eigen::MatrixXd notog = Eigen::MatrixXd::Identity(3, 3) * 2;
  CHECK_THROWS_AS(equivariance_check(p, notog), invalid_problem);

  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 0.5, -1, 0.3, 2;
  SingularValueProblem sp{m, {4, 1}};
  for (int t = 0; t < 5; ++t)
    CHECK(equivariance_check(sp, oracles::random_orthogonal(2, eng),
                             oracles::random_orthogonal(3, eng)));
  CHECK_THROWS_AS(equivariance_check(sp, notog, Eigen::MatrixXd::Identity(3, 3)),
                  invalid_problem);
}

TEST_CASE("diagonal data produces diagonal critical points") {
  Eigen::MatrixXd d3 = Eigen::MatrixXd::Zero(3, 3);
  d3.diagonal() << 1, 2, 5;
  CHECK(slice_containment_check(SpectrumProblem{d3, {3, 4, 6}}));
  CHECK(slice_containment_check(SingularValueProblem{rect_diag({3, 1}, 2, 3), {5, 2}}));
  Eigen::MatrixXd nd = d3;
  nd(0, 1) = nd(1, 0) = 0.5;
  CHECK_THROWS_AS(slice_containment_check(SpectrumProblem{nd, {3, 4, 6}}),
                  invalid_problem);
}

TEST_CASE("enumeration agrees with the grid-and-refine search") {
  Eigen::MatrixXd m1(1, 2);
  m1 << 1.3, -0.7;
  SingularValueProblem p1{m1, {2}};
  auto oracle1 = oracles::lagrange_oracle_1x2(m1, 2);
  auto got1 = critical_points_singular_values(p1);
  CHECK(oracles::sets_match(got1.points, oracle1.points, 1e-6));

  Eigen::MatrixXd m2(2, 3);
  m2 << 1, 2, 0.5, -1, 0.3, 2;
  SingularValueProblem p2{m2, {4, 1}};
  auto oracle2 = oracles::lagrange_oracle_2x3(m2, 4, 1);
  auto got2 = critical_points_singular_values(p2);
  CHECK(oracle2.points.size() == 8);
  CHECK(oracles::sets_match(got2.points, oracle2.points, 1e-6));
}
