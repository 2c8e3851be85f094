#pragma once
//
// Temperley-Lieb path model over a simply-laced module graph.
//
// The Hilbert space for m strands based at vertex x is spanned by the
// length-m paths from x, with the TL generator acting on interior
// vertex i by  <.. u w v ..| e_i |.. u y v ..> =
//   delta_{u,v} sqrt(mu(y) mu(w)) / mu(u).
// Jones-Wenzl projectors follow the Wenzl recursion
//   P_{j+1} = P_j - ([j]/[j+1]) P_j e_j P_j,
// and the braiding acts through the unitary crossing operator
//   X^{+-}_i = q^{+-1/2} I - q^{-+1/2} e_i,  q = exp(i pi/(k+2)),
// whose eigenvalues match the R-symbols of the generator.
//
// Intertwiner spaces Hom(x . lambda, z) are realized as the range of the
// lambda-strand Jones-Wenzl projector on paths x -> z; their dimensions
// form the nimrep U_lambda(adjacency) (Chebyshev recursion), which is
// also exposed directly as integer matrices.
//
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "adeflat/fusion_data.hpp"
#include "adeflat/graph.hpp"

namespace ade {

// Raised when a certified integer extraction (rank gap, eigenvalue gap)
// cannot be made unambiguously.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what, double residual_ = 0.0)
      : std::runtime_error(what), residual(residual_) {}
  double residual = 0.0;
};

class ModulePathModel {
public:
  // Requires: g connected, simply laced, and spectrally matched to the
  // level (pf_norm == [2]_q); throws std::invalid_argument otherwise.
  ModulePathModel(const BipartiteGraph& g, int level);

  const BipartiteGraph& graph() const { return g_; }
  int level() const { return k_; }
  double q_int(int n) const;  // [n] at this level

  // Canonical (lexicographic) enumeration of m-step paths from x.
  const std::vector<std::vector<int>>& paths(int x, int m) const;
  // id of a path within paths(x, m); -1 if absent.
  int path_id(int x, const std::vector<int>& p) const;
  // ids of paths from x of length m ending at z, in canonical order.
  std::vector<int> paths_to(int x, int m, int z) const;

  Eigen::MatrixXd e_op(int x, int m, int i) const;     // 1 <= i <= m-1
  Eigen::MatrixXd jw(int x, int m) const;              // P_m, m >= 0
  Eigen::MatrixXcd crossing(int x, int m, int i, int sign) const;

  // Integer nimrep U_lambda(adjacency); throws std::invalid_argument on
  // negative entries (graph/level mismatch).
  Eigen::MatrixXi nimrep(int lambda) const;

  // Orthonormal basis (columns) of range(P_lambda) restricted to paths
  // x -> z, via gap-certified Gram-Schmidt in canonical column order.
  Eigen::MatrixXd hom_basis(int x, int z, int lambda) const;

  // Dual canonical endomorphism at the star: multiplicity of nu is
  // nimrep(nu)_{star,star}; returned as (nu, multiplicity) pairs.
  std::vector<std::pair<int, int>> theta() const;

private:
  BipartiteGraph g_;
  int k_;
  std::vector<double> qn_;
  mutable std::map<std::pair<int, int>, std::vector<std::vector<int>>> paths_;
  mutable std::map<std::pair<int, int>, std::map<std::vector<int>, int>> ids_;
  mutable std::map<std::pair<int, int>, Eigen::MatrixXd> jw_;

  void ensure_paths(int x, int m) const;
};

} // namespace ade
