#include "adeflat/module.hpp"

#include <cmath>
#include <numbers>

namespace ade {

ModulePathModel::ModulePathModel(const BipartiteGraph& g, int level)
    : g_(g), k_(level) {
  if (k_ < 1 || k_ > 64) throw std::invalid_argument("level out of range");
  if (!g_.connected())
    throw std::invalid_argument("module graph must be connected");
  if (g_.adjacency().maxCoeff() > 1)
    throw std::invalid_argument("module graph must be simply laced");
  const double s1 = std::sin(std::numbers::pi / (k_ + 2));
  qn_.resize(2 * k_ + 5);
  for (std::size_t n = 0; n < qn_.size(); ++n)
    qn_[n] = std::sin(n * std::numbers::pi / (k_ + 2)) / s1;
  if (std::abs(g_.pf_norm() - qn_[2]) > 1e-9)
    throw std::invalid_argument(
        "module graph norm does not match the level: " + g_.name());
}

double ModulePathModel::q_int(int n) const {
  if (n < 0 || n >= static_cast<int>(qn_.size()))
    throw std::domain_error("quantum integer out of range");
  return qn_[n];
}

void ModulePathModel::ensure_paths(int x, int m) const {
  const auto key = std::make_pair(x, m);
  if (paths_.count(key)) return;
  PathSpace ps = enumerate_paths(g_, x, m);
  auto& id_map = ids_[key];
  for (std::size_t i = 0; i < ps.paths.size(); ++i)
    id_map[ps.paths[i]] = static_cast<int>(i);
  paths_[key] = std::move(ps.paths);
}

const std::vector<std::vector<int>>& ModulePathModel::paths(int x,
                                                            int m) const {
  ensure_paths(x, m);
  return paths_.at({x, m});
}

int ModulePathModel::path_id(int x, const std::vector<int>& p) const {
  const int m = static_cast<int>(p.size()) - 1;
  ensure_paths(x, m);
  const auto& id_map = ids_.at({x, m});
  auto it = id_map.find(p);
  return it == id_map.end() ? -1 : it->second;
}

std::vector<int> ModulePathModel::paths_to(int x, int m, int z) const {
  const auto& ps = paths(x, m);
  std::vector<int> out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i].back() == z) out.push_back(static_cast<int>(i));
  return out;
}

Eigen::MatrixXd ModulePathModel::e_op(int x, int m, int i) const {
  if (i < 1 || i > m - 1)
    throw std::domain_error("TL generator index out of range");
  const auto& ps = paths(x, m);
  const auto& mu = g_.pf_weight();
  const int d = static_cast<int>(ps.size());
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    const auto& p = ps[a];
    if (p[i - 1] != p[i + 1]) continue;
    // replace interior vertex p[i] by any neighbor w of p[i-1]
    std::vector<int> q = p;
    for (int w = 0; w < g_.n(); ++w) {
      if (g_.adjacency()(p[i - 1], w) == 0) continue;
      q[i] = w;
      const int b = path_id(x, q);
      e(b, a) = std::sqrt(mu(p[i]) * mu(w)) / mu(p[i - 1]);
    }
  }
  return e;
}

Eigen::MatrixXd ModulePathModel::jw(int x, int m) const {
  const auto key = std::make_pair(x, m);
  auto it = jw_.find(key);
  if (it != jw_.end()) return it->second;
  const int d = static_cast<int>(paths(x, m).size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(d, d);
  for (int j = 1; j <= m - 1; ++j) {
    const Eigen::MatrixXd e = e_op(x, m, j);
    p = p - (qn_[j] / qn_[j + 1]) * (p * e * p);
  }
  jw_[key] = p;
  return p;
}

Eigen::MatrixXcd ModulePathModel::crossing(int x, int m, int i,
                                           int sign) const {
  if (sign != 1 && sign != -1)
    throw std::domain_error("crossing sign must be +1 or -1");
  const int d = static_cast<int>(paths(x, m).size());
  const cplx qh = std::polar(1.0, sign * std::numbers::pi / (2.0 * (k_ + 2)));
  return qh * Eigen::MatrixXcd::Identity(d, d) -
         (1.0 / qh) * e_op(x, m, i).cast<cplx>();
}

Eigen::MatrixXi ModulePathModel::nimrep(int lambda) const {
  if (lambda < 0 || lambda > k_)
    throw std::domain_error("nimrep label out of range 0..k");
  Eigen::MatrixXi prev = Eigen::MatrixXi::Identity(g_.n(), g_.n());
  if (lambda == 0) return prev;
  Eigen::MatrixXi cur = g_.adjacency();
  for (int l = 2; l <= lambda; ++l) {
    Eigen::MatrixXi next = g_.adjacency() * cur - prev;
    prev = cur;
    cur = next;
  }
  if (cur.minCoeff() < 0)
    throw std::invalid_argument("graph/level mismatch: negative nimrep");
  return cur;
}

Eigen::MatrixXd ModulePathModel::hom_basis(int x, int z, int lambda) const {
  const Eigen::MatrixXd p = jw(x, lambda);
  const auto rows = paths_to(x, lambda, z);
  const int d = static_cast<int>(rows.size());
  Eigen::MatrixXd block(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) block(i, j) = p(rows[i], rows[j]);
  // Gap-certified Gram-Schmidt over canonical column order.
  std::vector<Eigen::VectorXd> basis;
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd v = block.col(j);
    for (const auto& u : basis) v -= u.dot(v) * u;
    const double nrm = v.norm();
    if (nrm > 1e-4) {
      basis.push_back(v / nrm);
    } else if (nrm >= 1e-9) {
      throw NumericError("Gram-Schmidt gap window occupied", nrm);
    }
  }
  const int expected = nimrep(lambda)(x, z);
  if (static_cast<int>(basis.size()) != expected)
    throw NumericError("projector rank disagrees with nimrep",
                       static_cast<double>(basis.size()) - expected);
  Eigen::MatrixXd out(d, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) out.col(j) = basis[j];
  return out;
}

std::vector<std::pair<int, int>> ModulePathModel::theta() const {
  std::vector<std::pair<int, int>> out;
  for (int nu = 0; nu <= k_; ++nu) {
    const int mult = nimrep(nu)(g_.star(), g_.star());
    if (mult > 0) out.emplace_back(nu, mult);
  }
  return out;
}

} // namespace ade
