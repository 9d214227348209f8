#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "polarslice/catalog.hpp"
#include "polarslice/polarity.hpp"

using namespace polarslice;

namespace {

const std::vector<FamilySpec> kPolarInstances = {
    {"adjoint-sln", 2, std::nullopt},   {"adjoint-sln", 3, std::nullopt},
    {"so-standard", 2, std::nullopt},   {"so-standard", 4, std::nullopt},
    {"so-sym-traceless", 2, std::nullopt}, {"so-sym-traceless", 3, std::nullopt},
    {"onom-matrix", 2, 3},              {"sp-lambda2", 1, std::nullopt},
    {"sp-lambda2", 2, std::nullopt},    {"spn-spm-tensor", 1, 2},
    {"sln-std-dual", 2, std::nullopt},  {"sln-std-dual", 3, std::nullopt},
    {"gln-sym-pairs", 1, std::nullopt}, {"gln-sym-pairs", 2, std::nullopt},
    {"gln-skew-pairs", 2, std::nullopt}, {"gln-skew-pairs", 3, std::nullopt},
    {"spn-std-dual", 1, std::nullopt},  {"spn-std-dual", 2, std::nullopt},
    {"gln-glm-tensor-pairs", 2, 3},     {"sl2-quartics", std::nullopt, std::nullopt},
};

}  // namespace

TEST_CASE("the template list names every family exactly once") {
  auto list = catalog_list();
  CHECK(list.size() == 13);
  std::set<std::string> ids;
  for (const auto& t : list) ids.insert(t.family_id);
  CHECK(ids.size() == 13);
  // every listed family builds at a smallest legal parameter
  for (const auto& t : list) {
    FamilySpec spec{t.family_id, std::nullopt, std::nullopt};
    if (t.params.find('n') != std::string::npos) spec.n = 2;
    if (t.requires_m) spec.m = 2;
    CHECK_NOTHROW(catalog_build(spec));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(catalog_build({"no-such-family", 2, std::nullopt}), family_error);
  CHECK_THROWS_AS(catalog_build({"so-standard", std::nullopt, std::nullopt}), family_error);
  CHECK_THROWS_AS(catalog_build({"so-standard", 1, std::nullopt}), family_error);
  CHECK_THROWS_AS(catalog_build({"adjoint-sln", 1, std::nullopt}), family_error);
  CHECK_THROWS_AS(catalog_build({"onom-matrix", 2, std::nullopt}), family_error);
  CHECK_THROWS_AS(catalog_build({"onom-matrix", 3, 2}), family_error);  // needs n <= m
  CHECK_THROWS_AS(catalog_build({"spn-spm-tensor", 2, 1}), family_error);
  CHECK_THROWS_AS(catalog_build({"gln-skew-pairs", 1, std::nullopt}), family_error);
}

TEST_CASE("every catalog instance validates exactly") {
  for (const auto& spec : kPolarInstances) {
    CatalogEntry e = catalog_build(spec);
    INFO(e.rep.name);
    CHECK(validate(e.rep).ok);
    REQUIRE(e.slice.has_value());
    CHECK(rank_of_vectors(e.slice->vectors) == e.slice->vectors.size());
  }
  CatalogEntry control = catalog_build({"so2-double-standard", std::nullopt, std::nullopt});
  CHECK(validate(control.rep).ok);
  CHECK_FALSE(control.slice.has_value());
}

TEST_CASE("quartic family data") {
  CatalogEntry e = catalog_build({"sl2-quartics", std::nullopt, std::nullopt});
  CHECK(e.rep.dim == 5);
  REQUIRE(e.rep.generators.size() == 3);
  // the invariant pairing on binary quartics, antidiagonal 12, -3, 2, -3, 12
  ExactMatrix expect(5, 5);
  expect(0, 4) = 12; expect(4, 0) = 12;
  expect(1, 3) = -3; expect(3, 1) = -3;
  expect(2, 2) = 2;
  CHECK(e.rep.gram == expect);
  // h acts diagonally with weights 4, 2, 0, -2, -4
  for (int k = 0; k <= 4; ++k) CHECK(e.rep.generators[0](k, k) == 4 - 2 * k);
  REQUIRE(e.slice.has_value());
  CHECK(e.slice->vectors ==
        std::vector<RationalVector>{{1, 0, 0, 0, 1}, {0, 0, 1, 0, 0}});
}

TEST_CASE("matrix space family at n=2, m=3") {
  CatalogEntry e = catalog_build({"onom-matrix", 2, 3});
  CHECK(e.rep.dim == 6);
  CHECK(e.rep.generators.size() == 4);  // 1 left + 3 right skew generators
  CHECK(e.rep.gram == ExactMatrix::identity(6));
  REQUIRE(e.slice.has_value());
  // diagonal matrix units, row-major positions 0 and 4
  CHECK(e.slice->vectors == std::vector<RationalVector>{
                                {1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}});
}

TEST_CASE("trace-form values on the traceless 2x2 family") {
  CatalogEntry e = catalog_build({"adjoint-sln", 2, std::nullopt});
  // basis order (e, h, f); invariant form B(x, y) = 4 Tr(xy) here
  CHECK(e.rep.dim == 3);
  CHECK(e.rep.gram(1, 1) == 8);   // B(h, h)
  CHECK(e.rep.gram(0, 2) == 4);   // B(e, f)
  CHECK(e.rep.gram(2, 0) == 4);
  CHECK(e.rep.gram(0, 0) == 0);
  CHECK(e.rep.gram(0, 1) == 0);
}

TEST_CASE("closed-form invariant form matches the adjoint-trace brute force") {
  for (int n : {2, 3}) {
    auto basis = detail::sl_basis(static_cast<std::size_t>(n));
    ExactMatrix brute = oracles::killing_gram_bruteforce(basis, &detail::sl_coords);
    CatalogEntry e = catalog_build({"adjoint-sln", n, std::nullopt});
    INFO("n = " << n);
    CHECK(e.rep.gram == brute);
  }
}

TEST_CASE("alternating-square form agrees with the 2x2 minor formula") {
  for (int n : {1, 2, 3}) {
    CatalogEntry e = catalog_build({"sp-lambda2", n, std::nullopt});
    std::size_t d = 2 * static_cast<std::size_t>(n);
    // independent re-evaluation of <e_i^e_j | e_k^e_l> = w(i,k)w(j,l) - w(i,l)w(j,k)
    auto omega = [&](std::size_t a, std::size_t b) -> Rational {
      if (b == a + static_cast<std::size_t>(n)) return 1;
      if (a == b + static_cast<std::size_t>(n)) return -1;
      return 0;
    };
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
    REQUIRE(e.rep.dim == pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        auto [i, j] = pairs[p];
        auto [k, l] = pairs[q];
        CHECK(e.rep.gram(p, q) == omega(i, k) * omega(j, l) - omega(i, l) * omega(j, k));
      }
  }
}

TEST_CASE("slice dimension plus generic orbit dimension fills the space") {
  for (const auto& spec : kPolarInstances) {
    CatalogEntry e = catalog_build(spec);
    INFO(e.rep.name);
    REQUIRE(e.slice.has_value());
    CHECK(e.slice->vectors.size() + generic_orbit_dimension(e.rep) == e.rep.dim);
  }
}

TEST_CASE("builders are deterministic") {
  for (const auto& spec : {FamilySpec{"gln-skew-pairs", 3, std::nullopt},
                           FamilySpec{"spn-spm-tensor", 1, 2}}) {
    CatalogEntry a = catalog_build(spec);
    CatalogEntry b = catalog_build(spec);
    CHECK(a.rep.gram == b.rep.gram);
    REQUIRE(a.rep.generators.size() == b.rep.generators.size());
    for (std::size_t k = 0; k < a.rep.generators.size(); ++k)
      CHECK(a.rep.generators[k] == b.rep.generators[k]);
    CHECK(a.slice->vectors == b.slice->vectors);
  }
}
