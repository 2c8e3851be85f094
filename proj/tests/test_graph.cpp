// Graph core and Temperley-Lieb path model.
//
// Oracle strategy: Perron-Frobenius data is checked against closed-form
// quantum integers; path counts against adjacency powers; Jones-Wenzl
// projector ranks against the integer Chebyshev nimrep (the two are
// computed by entirely separate routes); crossing spectra against the
// braiding eigenvalues of the fusion category at the same level; and the
// dual canonical endomorphism multiset against the classical A-D-E
// catalog values.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "adeflat/fusion_data.hpp"
#include "adeflat/graph.hpp"
#include "adeflat/module.hpp"

using namespace ade;

namespace {

constexpr double kTol = 1e-12;

Eigen::MatrixXi adj_power(const BipartiteGraph& g, int m) {
  Eigen::MatrixXi p = Eigen::MatrixXi::Identity(g.n(), g.n());
  for (int i = 0; i < m; ++i) p = p * g.adjacency();
  return p;
}

} // namespace

TEST_CASE("Dynkin diagram shapes and norms") {
  const auto a3 = ade_graph('A', 3);
  CHECK(a3.n() == 3);
  CHECK(a3.star() == 0);
  CHECK(a3.connected());
  CHECK(a3.pf_norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto d4 = ade_graph('D', 4);
  CHECK(d4.n() == 4);
  CHECK(d4.pf_norm() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  // star is the tail extremity: exactly one neighbor
  CHECK(d4.adjacency().row(d4.star()).sum() == 1);
  // the branch vertex has three neighbors
  int max_deg = 0;
  for (int v = 0; v < 4; ++v)
    max_deg = std::max(max_deg, static_cast<int>(d4.adjacency().row(v).sum()));
  CHECK(max_deg == 3);

  const auto e7 = ade_graph('E', 7);
  CHECK(e7.n() == 7);
  CHECK(e7.adjacency().sum() == 2 * 6); // tree: 6 edges
  CHECK(coxeter_level(e7) == 16);

  CHECK(coxeter_level(ade_graph('A', 5)) == 4);
  CHECK(coxeter_level(ade_graph('D', 5)) == 6);
  CHECK(coxeter_level(ade_graph('D', 10)) == 16);
  CHECK(coxeter_level(ade_graph('E', 6)) == 10);
  CHECK(coxeter_level(ade_graph('E', 8)) == 28);

  CHECK_THROWS_AS(ade_graph('A', 1), std::invalid_argument);
  CHECK_THROWS_AS(ade_graph('D', 3), std::invalid_argument);
  CHECK_THROWS_AS(ade_graph('E', 9), std::invalid_argument);
  CHECK_THROWS_AS(ade_graph('F', 4), std::invalid_argument);
}

TEST_CASE("Perron-Frobenius weights on the A-chain are quantum dimensions") {
  for (int k : {1, 2, 5, 11}) {
    const auto g = ade_graph('A', k + 1);
    const auto cat = build_su2_level(k);
    CHECK(g.pf_norm() ==
          doctest::Approx(2.0 * std::cos(std::numbers::pi / (k + 2)))
              .epsilon(1e-12));
    for (int j = 0; j <= k; ++j)
      CHECK(g.pf_weight()(j) == doctest::Approx(cat.qdim(j)).epsilon(1e-12));
  }
}

TEST_CASE("bipartition by distance parity") {
  const auto a4 = ade_graph('A', 4);
  CHECK(a4.two_colorable());
  CHECK(a4.even_vertices() == std::vector<int>{0, 2});
  CHECK(a4.odd_vertices() == std::vector<int>{1, 3});
  const auto eo = a4.even_odd_adjacency();
  CHECK(eo.rows() == 2);
  CHECK(eo.cols() == 2);
  CHECK(eo.sum() == 3); // edges 0-1, 2-1, 2-3

  const auto d4 = ade_graph('D', 4);
  CHECK(d4.two_colorable());
  CHECK(d4.even_vertices().size() + d4.odd_vertices().size() == 4);
}

TEST_CASE("path algebra dimensions (towers of relative commutants)") {
  // A2: the chain with two vertices has a single path of every length.
  const auto a2 = ade_graph('A', 2);
  const auto dims_a2 = path_algebra_dims(a2, 0, 6);
  CHECK(dims_a2 == std::vector<long long>{1, 1, 1, 1, 1, 1, 1});

  // A3 from the extremity: dims follow the Jones tower at index 2.
  const auto a3 = ade_graph('A', 3);
  const auto dims_a3 = path_algebra_dims(a3, 0, 4);
  CHECK(dims_a3 == std::vector<long long>{1, 1, 2, 4, 8});

  // n_max = 0 gives just the scalars.
  CHECK(path_algebra_dims(a3, 0, 0) == std::vector<long long>{1});

  // Large chain: dimensions are Catalan-bounded, must stay exact.
  const auto a9 = ade_graph('A', 9);
  const auto dims = path_algebra_dims(a9, 0, 12);
  // Catalan numbers until the level-8 truncation bites at m = 10:
  // dim TL_m = C_m for m <= k+1.
  const std::vector<long long> catalan{1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int m = 0; m < static_cast<int>(catalan.size()); ++m)
    CHECK(dims[m] == catalan[m]);
  CHECK(dims[9] == 4861);  // first truncated value (C_9 = 4862)

  CHECK_THROWS_AS(path_algebra_dims(a3, 7, 2), std::invalid_argument);
  CHECK_THROWS_AS(path_algebra_dims(a3, 0, -1), std::invalid_argument);
}

TEST_CASE("path enumeration matches adjacency powers and is canonical") {
  for (const auto& g : {ade_graph('A', 4), ade_graph('D', 5), ade_graph('E', 6)}) {
    for (int m : {0, 1, 3, 5}) {
      const auto pw = adj_power(g, m);
      for (int x = 0; x < g.n(); ++x) {
        const auto ps = enumerate_paths(g, x, m);
        CHECK(static_cast<int>(ps.paths.size()) == pw.row(x).sum());
        CHECK(std::is_sorted(ps.paths.begin(), ps.paths.end()));
        Eigen::VectorXi ends = Eigen::VectorXi::Zero(g.n());
        for (const auto& p : ps.paths) {
          REQUIRE(static_cast<int>(p.size()) == m + 1);
          REQUIRE(p.front() == x);
          for (int i = 0; i < m; ++i) REQUIRE(g.adjacency()(p[i], p[i + 1]) > 0);
          ends(p.back())++;
        }
        for (int z = 0; z < g.n(); ++z) CHECK(ends(z) == pw(x, z));
      }
    }
  }
}

TEST_CASE("fusion graphs over sector label sets") {
  const auto cat = build_su2_level(4);

  SUBCASE("generator fusion graph is the A-chain") {
    const auto g = fusion_graph(cat, 1, {0, 1, 2, 3, 4});
    const auto a5 = ade_graph('A', 5);
    CHECK(g.n() == 5);
    CHECK((g.adjacency() - a5.adjacency()).cwiseAbs().maxCoeff() == 0);
    CHECK(g.star() == 0);
    CHECK(g.two_colorable());
  }

  SUBCASE("identity fusion graph is diagonal and layered") {
    const auto g = fusion_graph(cat, 0, {0, 1, 2, 3, 4});
    CHECK((g.adjacency() -
           Eigen::MatrixXi::Identity(5, 5)).cwiseAbs().maxCoeff() == 0);
    CHECK_FALSE(g.two_colorable()); // self-loops: no parity split
    CHECK_FALSE(g.connected());
    // per-component PF weights are all 1
    for (int v = 0; v < 5; ++v)
      CHECK(g.pf_weight()(v) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("even sector subset is closed under even fusion") {
    const auto g = fusion_graph(cat, 2, {0, 2, 4});
    CHECK(g.n() == 3);
    CHECK(g.adjacency()(1, 1) == 1); // 2 x 2 contains 2 at level 4
    CHECK_FALSE(g.two_colorable());
  }

  SUBCASE("non-closed subsets are rejected") {
    CHECK_THROWS_AS(fusion_graph(cat, 1, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fusion_graph(cat, 2, {0, 2}), std::invalid_argument);
  }
}

TEST_CASE("graph JSON carries structure") {
  const auto g = ade_graph('D', 4);
  const auto j = g.to_json();
  CHECK(j.find("\"name\": \"D4\"") != std::string::npos);
  CHECK(j.find("pf_norm") != std::string::npos);
  CHECK(j.find("edges") != std::string::npos);
}

TEST_CASE("labeled graph comparison") {
  CHECK(ade_graph('A', 3).same_labeled_graph(ade_graph('A', 3)));
  CHECK_FALSE(ade_graph('A', 4).same_labeled_graph(ade_graph('D', 4)));
}

// ---------------------------------------------------------------------
// Temperley-Lieb path model
// ---------------------------------------------------------------------

TEST_CASE("path model rejects mismatched graph/level pairs") {
  CHECK_THROWS_AS(ModulePathModel(ade_graph('A', 3), 3), std::invalid_argument);
  CHECK_THROWS_AS(ModulePathModel(ade_graph('E', 6), 9), std::invalid_argument);
  CHECK_NOTHROW(ModulePathModel(ade_graph('E', 6), 10));

  // disconnected graphs are rejected
  Eigen::MatrixXi two_chains = Eigen::MatrixXi::Zero(4, 4);
  two_chains(0, 1) = two_chains(1, 0) = 1;
  two_chains(2, 3) = two_chains(3, 2) = 1;
  BipartiteGraph g("2xA2", {"0", "1", "2", "3"}, two_chains, 0);
  CHECK_THROWS_AS(ModulePathModel(g, 1), std::invalid_argument);
}

TEST_CASE("Temperley-Lieb relations hold in the path representation") {
  for (const auto& [series, index, level] :
       {std::tuple<char, int, int>{'A', 5, 4}, {'D', 5, 6}, {'E', 6, 10}}) {
    const ModulePathModel mod(ade_graph(series, index), level);
    const double beta = mod.q_int(2);
    const int x = 0, m = 4;
    const auto e1 = mod.e_op(x, m, 1);
    const auto e2 = mod.e_op(x, m, 2);
    const auto e3 = mod.e_op(x, m, 3);
    CHECK((e1 - e1.transpose()).cwiseAbs().maxCoeff() < kTol);
    CHECK((e1 * e1 - beta * e1).cwiseAbs().maxCoeff() < kTol);
    CHECK((e2 * e2 - beta * e2).cwiseAbs().maxCoeff() < kTol);
    CHECK((e1 * e2 * e1 - e1).cwiseAbs().maxCoeff() < kTol);
    CHECK((e2 * e1 * e2 - e2).cwiseAbs().maxCoeff() < kTol);
    CHECK((e1 * e3 - e3 * e1).cwiseAbs().maxCoeff() < kTol);
  }
  const ModulePathModel a5(ade_graph('A', 5), 4);
  CHECK_THROWS_AS(a5.e_op(0, 3, 0), std::domain_error);
  CHECK_THROWS_AS(a5.e_op(0, 3, 3), std::domain_error);
}

TEST_CASE("Jones-Wenzl projectors: idempotent, symmetric, kill the cups") {
  for (const auto& [series, index, level] :
       {std::tuple<char, int, int>{'A', 4, 3}, {'D', 4, 4}, {'E', 7, 16}}) {
    const ModulePathModel mod(ade_graph(series, index), level);
    for (int x : {0, mod.graph().n() - 1}) {
      for (int m : {0, 1, 2, 4}) {
        const auto p = mod.jw(x, m);
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        for (int i = 1; i <= m - 1; ++i) {
          const auto e = mod.e_op(x, m, i);
          CHECK((e * p).cwiseAbs().maxCoeff() < 1e-10);
          CHECK((p * e).cwiseAbs().maxCoeff() < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("nimreps: Chebyshev integers agree with Jones-Wenzl ranks") {
  // The nimrep is computed by an integer recursion; hom_basis extracts an
  // orthonormal basis of the projector range and certifies its size
  // against the nimrep entry, tying the two computations together.
  for (const auto& [series, index, level] :
       {std::tuple<char, int, int>{'A', 5, 4}, {'D', 4, 4}, {'D', 5, 6},
        {'E', 6, 10}, {'E', 7, 16}, {'E', 8, 28}}) {
    const ModulePathModel mod(ade_graph(series, index), level);
    const auto& g = mod.graph();

    // nimrep(0) = identity, nimrep(1) = adjacency
    CHECK((mod.nimrep(0) -
           Eigen::MatrixXi::Identity(g.n(), g.n())).cwiseAbs().maxCoeff() == 0);
    CHECK((mod.nimrep(1) - g.adjacency()).cwiseAbs().maxCoeff() == 0);

    // nimreps satisfy the fusion rules: V_1 V_l = V_{l-1} + V_{l+1}
    for (int l = 1; l < std::min(level, 8); ++l)
      CHECK((g.adjacency() * mod.nimrep(l) - mod.nimrep(l - 1) -
             mod.nimrep(l + 1)).cwiseAbs().maxCoeff() == 0);

    const int lmax = std::min(level, 6);
    for (int lambda = 0; lambda <= lmax; ++lambda) {
      for (int x = 0; x < g.n(); ++x) {
        for (int z = 0; z < g.n(); ++z) {
          const auto basis = mod.hom_basis(x, z, lambda); // throws on mismatch
          CHECK(static_cast<int>(basis.cols()) == mod.nimrep(lambda)(x, z));
          if (basis.cols() == 0) continue;
          // columns orthonormal and inside the projector range
          CHECK((basis.transpose() * basis -
                 Eigen::MatrixXd::Identity(basis.cols(), basis.cols()))
                    .cwiseAbs().maxCoeff() < 1e-9);
          const auto rows = mod.paths_to(x, lambda, z);
          const auto p = mod.jw(x, lambda);
          Eigen::MatrixXd block(rows.size(), rows.size());
          for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows.size(); ++j)
              block(i, j) = p(rows[i], rows[j]);
          CHECK((block * basis - basis).cwiseAbs().maxCoeff() < 1e-9);
        }
      }
    }
    CHECK_THROWS_AS(mod.nimrep(level + 1), std::domain_error);
    CHECK_THROWS_AS(mod.nimrep(-1), std::domain_error);
  }
}

TEST_CASE("crossings: unitary, braided, spectrum matches the R-symbols") {
  for (const auto& [series, index, level] :
       {std::tuple<char, int, int>{'A', 4, 3}, {'E', 6, 10}}) {
    const ModulePathModel mod(ade_graph(series, index), level);
    const auto cat = build_su2_level(level);
    const int x = 0, m = 4;
    const auto xp1 = mod.crossing(x, m, 1, +1);
    const auto xm1 = mod.crossing(x, m, 1, -1);
    const auto xp2 = mod.crossing(x, m, 2, +1);
    const int d = xp1.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

    CHECK((xp1 * xp1.adjoint() - id).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((xp1 * xm1 - id).cwiseAbs().maxCoeff() < 1e-10);
    // Yang-Baxter / braid relation
    CHECK((xp1 * xp2 * xp1 - xp2 * xp1 * xp2).cwiseAbs().maxCoeff() < 1e-10);

    // spectrum: the two eigenvalues are the braiding eigenvalues of the
    // generator in its symmetric (c=2) and antisymmetric (c=0) channels
    const cplx r2 = cat.r_symbol(1, 1, 2, +1);
    const cplx r0 = cat.r_symbol(1, 1, 0, +1);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(xp1);
    for (int i = 0; i < d; ++i) {
      const cplx ev = es.eigenvalues()(i);
      const bool near2 = std::abs(ev - r2) < 1e-9;
      const bool near0 = std::abs(ev - r0) < 1e-9;
      CHECK((near2 || near0));
    }
    CHECK_THROWS_AS(mod.crossing(0, 3, 1, 0), std::domain_error);
  }
}

TEST_CASE("dual canonical endomorphisms of the A-D-E module catalog") {
  using Theta = std::vector<std::pair<int, int>>;
  auto theta_of = [](char s, int i, int k) {
    return ModulePathModel(ade_graph(s, i), k).theta();
  };
  CHECK(theta_of('A', 5, 4) == Theta{{0, 1}});
  CHECK(theta_of('A', 9, 8) == Theta{{0, 1}});
  CHECK(theta_of('D', 4, 4) == Theta{{0, 1}, {4, 1}});
  CHECK(theta_of('D', 5, 6) == Theta{{0, 1}, {6, 1}});
  CHECK(theta_of('D', 6, 8) == Theta{{0, 1}, {8, 1}});
  CHECK(theta_of('D', 10, 16) == Theta{{0, 1}, {16, 1}});
  CHECK(theta_of('E', 6, 10) == Theta{{0, 1}, {6, 1}});
  CHECK(theta_of('E', 7, 16) == Theta{{0, 1}, {8, 1}, {16, 1}});
  CHECK(theta_of('E', 8, 28) == Theta{{0, 1}, {10, 1}, {18, 1}, {28, 1}});
}

TEST_CASE("quantum integers exposed by the model") {
  const ModulePathModel mod(ade_graph('A', 6), 5);
  CHECK(mod.q_int(0) == doctest::Approx(0.0));
  CHECK(mod.q_int(1) == doctest::Approx(1.0));
  CHECK(mod.q_int(2) ==
        doctest::Approx(2.0 * std::cos(std::numbers::pi / 7)).epsilon(1e-12));
  CHECK_THROWS_AS(mod.q_int(-1), std::domain_error);
}
