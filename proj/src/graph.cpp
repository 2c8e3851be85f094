#include "adeflat/graph.hpp"
#include "adeflat/version.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <functional>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ade {

BipartiteGraph::BipartiteGraph(std::string name,
                               std::vector<std::string> vertex_names,
                               Eigen::MatrixXi adjacency, int star)
    : name_(std::move(name)), names_(std::move(vertex_names)),
      adj_(std::move(adjacency)), star_(star) {
  const int n = static_cast<int>(names_.size());
  if (n == 0 || adj_.rows() != n || adj_.cols() != n)
    throw std::invalid_argument("graph adjacency shape mismatch");
  if ((adj_ - adj_.transpose()).cwiseAbs().maxCoeff() != 0)
    throw std::invalid_argument("graph adjacency must be symmetric");
  if (star_ < 0 || star_ >= n)
    throw std::invalid_argument("star vertex out of range");

  // Components and distance parity via breadth-first search; the star's
  // component is rooted at the star, others at their first vertex.
  parity_.assign(n, -1);
  std::vector<int> comp(n, -1);
  int n_comp = 0;
  auto bfs = [&](int root) {
    std::deque<int> q{root};
    parity_[root] = 0;
    comp[root] = n_comp;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v = 0; v < n; ++v)
        if (adj_(u, v) > 0 && parity_[v] < 0) {
          parity_[v] = 1 - parity_[u];
          comp[v] = n_comp;
          q.push_back(v);
        }
    }
    ++n_comp;
  };
  bfs(star_);
  for (int v = 0; v < n; ++v)
    if (parity_[v] < 0) bfs(v);
  connected_ = (n_comp == 1);

  // Two-colorability on the single vertex set.  Dynkin diagrams and
  // generator fusion graphs are 2-colorable; layered graphs (identity,
  // even-object fusion) are bipartite only between their two layers, so
  // the parity split is marked unavailable rather than rejected.
  two_colorable_ = true;
  for (int u = 0; u < n && two_colorable_; ++u)
    for (int v = 0; v < n; ++v)
      if (adj_(u, v) > 0 && parity_[u] == parity_[v]) {
        two_colorable_ = false;
        break;
      }

  // Perron-Frobenius data per component, normalized to 1 at the root.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adj_.cast<double>());
  beta_ = es.eigenvalues()(n - 1);
  mu_.resize(n);
  for (int c = 0; c < n_comp; ++c) {
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (comp[v] == c) verts.push_back(v);
    Eigen::MatrixXd sub(verts.size(), verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = 0; j < verts.size(); ++j)
        sub(i, j) = adj_(verts[i], verts[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ces(sub);
    Eigen::VectorXd v = ces.eigenvectors().col(verts.size() - 1);
    if (v(0) < 0) v = -v;
    const int root = (comp[star_] == c) ? star_ : verts.front();
    double root_val = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (verts[i] == root) root_val = v(i);
    if (root_val <= 0.0) root_val = v.maxCoeff();
    for (std::size_t i = 0; i < verts.size(); ++i)
      mu_(verts[i]) = v(i) / root_val;
  }
}

std::vector<int> BipartiteGraph::even_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < n(); ++v)
    if (parity_[v] == 0) out.push_back(v);
  return out;
}

std::vector<int> BipartiteGraph::odd_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < n(); ++v)
    if (parity_[v] == 1) out.push_back(v);
  return out;
}

Eigen::MatrixXi BipartiteGraph::even_odd_adjacency() const {
  const auto ev = even_vertices();
  const auto od = odd_vertices();
  Eigen::MatrixXi m(ev.size(), od.size());
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = 0; j < od.size(); ++j)
      m(i, j) = adj_(ev[i], od[j]);
  return m;
}

bool BipartiteGraph::same_labeled_graph(const BipartiteGraph& o) const {
  return names_ == o.names_ && star_ == o.star_ && adj_.rows() == o.adj_.rows() &&
         (adj_ - o.adj_).cwiseAbs().maxCoeff() == 0;
}

std::string BipartiteGraph::to_json() const {
  nlohmann::json j;
  j["schema"] = "bipartite_graph";
  j["schema_version"] = kSchemaVersion;
  j["name"] = name_;
  j["vertices"] = names_;
  j["even_vertices"] = even_vertices();
  j["odd_vertices"] = odd_vertices();
  auto& edges = j["edges"] = nlohmann::json::array();
  for (int u = 0; u < n(); ++u)
    for (int v = u + 1; v < n(); ++v)
      if (adj_(u, v) > 0) edges.push_back({u, v, adj_(u, v)});
  j["star"] = star_;
  j["pf_norm"] = beta_;
  auto& w = j["pf_weight"] = nlohmann::json::array();
  for (int v = 0; v < n(); ++v) w.push_back(mu_(v));
  return j.dump(2);
}

BipartiteGraph ade_graph(char series, int index) {
  auto chain_names = [](int n) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
    return names;
  };
  Eigen::MatrixXi adj;
  std::string name;
  switch (series) {
  case 'A': {
    if (index < 2)
      throw std::invalid_argument("A-series index must be >= 2");
    const int n = index;
    adj = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) adj(i, i + 1) = adj(i + 1, i) = 1;
    name = "A" + std::to_string(index);
    break;
  }
  case 'D': {
    if (index < 4)
      throw std::invalid_argument("D-series index must be >= 4");
    const int n = index;
    adj = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i + 1 < n - 2; ++i) adj(i, i + 1) = adj(i + 1, i) = 1;
    adj(n - 3, n - 2) = adj(n - 2, n - 3) = 1;
    adj(n - 3, n - 1) = adj(n - 1, n - 3) = 1;
    name = "D" + std::to_string(index);
    break;
  }
  case 'E': {
    if (index < 6 || index > 8)
      throw std::invalid_argument("E-series index must be 6, 7 or 8");
    const int n = index;
    adj = Eigen::MatrixXi::Zero(n, n);
    // Longest arm first (star at its end), branch vertex carries the
    // short arm's extra node as the last vertex.
    const int branch = (index == 6) ? 2 : (index == 7) ? 3 : 4;
    for (int i = 0; i + 1 < n - 1; ++i) adj(i, i + 1) = adj(i + 1, i) = 1;
    adj(branch, n - 1) = adj(n - 1, branch) = 1;
    name = "E" + std::to_string(index);
    break;
  }
  default:
    throw std::invalid_argument("series must be 'A', 'D' or 'E'");
  }
  return BipartiteGraph(name, chain_names(adj.rows()), adj, /*star=*/0);
}

int coxeter_level(const BipartiteGraph& g) {
  const double beta = g.pf_norm();
  if (beta <= 0.0 || beta >= 2.0)
    throw std::invalid_argument("graph norm outside (0, 2)");
  const double h = std::numbers::pi / std::acos(beta / 2.0);
  const long k = std::lround(h) - 2;
  if (k < 1 || std::abs(h - std::lround(h)) > 1e-6)
    throw std::invalid_argument("graph norm is not 2 cos(pi/(k+2))");
  return static_cast<int>(k);
}

std::vector<long long> path_algebra_dims(const BipartiteGraph& g, int start,
                                         int n_max) {
  if (start < 0 || start >= g.n())
    throw std::invalid_argument("start vertex out of range");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  using bigint = unsigned __int128;
  std::vector<bigint> counts(g.n(), 0);
  counts[start] = 1;
  std::vector<long long> out;
  const bigint ll_max = static_cast<bigint>(
      std::numeric_limits<long long>::max());
  for (int m = 0; m <= n_max; ++m) {
    bigint total = 0;
    for (int v = 0; v < g.n(); ++v) {
      if (counts[v] > ll_max) throw std::overflow_error("path count overflow");
      total += counts[v] * counts[v];
      if (total > ll_max) throw std::overflow_error("path dimension overflow");
    }
    out.push_back(static_cast<long long>(total));
    if (m == n_max) break;
    std::vector<bigint> next(g.n(), 0);
    for (int u = 0; u < g.n(); ++u) {
      if (counts[u] == 0) continue;
      for (int v = 0; v < g.n(); ++v)
        if (g.adjacency()(u, v) > 0)
          next[v] += counts[u] * static_cast<bigint>(g.adjacency()(u, v));
    }
    counts.swap(next);
  }
  return out;
}

BipartiteGraph fusion_graph(const FusionCategoryData& cat, int lambda,
                            const std::vector<int>& module_vertices) {
  cat.require_label(lambda);
  std::vector<int> verts = module_vertices;
  for (int v : verts) cat.require_label(v);
  std::vector<int> pos(cat.rank(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = i;
  const int n = static_cast<int>(verts.size());
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int c : cat.fuse(verts[i], lambda)) {
      if (pos[c] < 0)
        throw std::invalid_argument(
            "module vertex set is not closed under fusion by " +
            std::to_string(lambda));
      adj(i, pos[c]) += 1;
    }
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(verts[i]);
  int star = (pos.size() > 0 && pos[0] >= 0) ? pos[0] : 0;
  return BipartiteGraph("fusion(" + std::to_string(lambda) + ")",
                        std::move(names), std::move(adj), star);
}

PathSpace enumerate_paths(const BipartiteGraph& g, int start, int length) {
  if (start < 0 || start >= g.n())
    throw std::invalid_argument("start vertex out of range");
  PathSpace ps;
  ps.graph = &g;
  ps.start = start;
  ps.length = length;
  std::vector<int> cur{start};
  // Depth-first extension in canonical vertex order gives lexicographic
  // path order.  Multi-edges contribute one path per parallel edge.
  std::function<void()> extend = [&]() {
    if (static_cast<int>(cur.size()) == length + 1) {
      ps.paths.push_back(cur);
      return;
    }
    const int u = cur.back();
    for (int v = 0; v < g.n(); ++v)
      for (int copy = 0; copy < g.adjacency()(u, v); ++copy) {
        cur.push_back(v);
        extend();
        cur.pop_back();
      }
  };
  extend();
  return ps;
}

} // namespace ade
