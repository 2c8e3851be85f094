#pragma once
//
// Bipartite graphs (A-D-E Dynkin diagrams and fusion graphs) with
// Perron-Frobenius data, canonical vertex order, and path-space
// bookkeeping.  The distinguished vertex (star) is the extremity of the
// longest arm — the inclusion vertex of the associated module — and
// carries PF weight 1 after normalization.
//
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adeflat/fusion_data.hpp"

namespace ade {

class BipartiteGraph {
public:
  BipartiteGraph() = default;
  // Vertices are indexed 0..n-1 in a fixed canonical order; adjacency is
  // the full symmetric multiplicity matrix.
  BipartiteGraph(std::string name, std::vector<std::string> vertex_names,
                 Eigen::MatrixXi adjacency, int star);

  const std::string& name() const { return name_; }
  int n() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const Eigen::MatrixXi& adjacency() const { return adj_; }
  int star() const { return star_; }
  bool connected() const { return connected_; }
  double pf_norm() const { return beta_; }
  const Eigen::VectorXd& pf_weight() const { return mu_; }

  // Bipartition classes by distance parity from the star (per component,
  // rooted at its first vertex in canonical order).  Valid only when the
  // graph is 2-colorable on its single vertex set; layered graphs
  // (identity / even-object fusion graphs) report two_colorable() false.
  bool two_colorable() const { return two_colorable_; }
  const std::vector<int>& parity() const { return parity_; }
  std::vector<int> even_vertices() const;
  std::vector<int> odd_vertices() const;
  Eigen::MatrixXi even_odd_adjacency() const;

  bool same_labeled_graph(const BipartiteGraph& o) const;

  std::string to_json() const;

private:
  std::string name_;
  std::vector<std::string> names_;
  Eigen::MatrixXi adj_;
  int star_ = 0;
  bool connected_ = true;
  bool two_colorable_ = true;
  double beta_ = 0.0;
  Eigen::VectorXd mu_;
  std::vector<int> parity_;
};

// A-D-E Dynkin diagrams: series 'A' (n>=2), 'D' (n>=4), 'E' (6,7,8).
BipartiteGraph ade_graph(char series, int index);

// Level k with pf_norm = [2]_q = 2 cos(pi/(k+2)); throws
// std::invalid_argument if the norm is not of that form (within 1e-6).
int coxeter_level(const BipartiteGraph& g);

// Entry m = sum_v (#paths of length m from start to v)^2; throws
// std::overflow_error if an entry exceeds the integer return range.
std::vector<long long> path_algebra_dims(const BipartiteGraph& g, int start,
                                         int n_max);

// Fusion graph of the acting object lambda on a fusion-closed subset of
// sector labels (adjacency = Verlinde multiplicities restricted to the
// subset).  Throws std::invalid_argument if the subset is not closed.
BipartiteGraph fusion_graph(const FusionCategoryData& cat, int lambda,
                            const std::vector<int>& module_vertices);

struct PathSpace {
  const BipartiteGraph* graph = nullptr;
  int start = 0;
  int length = 0;
  // Lexicographically ordered vertex sequences, each of size length+1,
  // beginning at start.
  std::vector<std::vector<int>> paths;
};

PathSpace enumerate_paths(const BipartiteGraph& g, int start, int length);

} // namespace ade
