#include "adeflat/induction.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace ade {

Connection connection_from_cables(const ModulePathModel& pm, int lambda,
                                  int mu, int sign,
                                  const std::string& name) {
  if (lambda < 0 || lambda > pm.level() || mu < 0 || mu > pm.level())
    throw std::invalid_argument("cable size outside [0, level]");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");

  const BipartiteGraph& g = pm.graph();
  const CornerData corner = corner_of(g);
  const int n = corner.n();
  const Eigen::MatrixXi h = pm.nimrep(mu);
  const Eigen::MatrixXi v = pm.nimrep(lambda);
  const int len = lambda + mu;

  // Cache the projected bases: hom[m][{x,z}] for cable size m.
  std::map<std::pair<int, int>, Eigen::MatrixXd> hom_mu, hom_lam;
  auto basis = [&](std::map<std::pair<int, int>, Eigen::MatrixXd>& cache,
                   int x, int z, int m) -> const Eigen::MatrixXd& {
    auto it = cache.find({x, z});
    if (it == cache.end())
      it = cache.emplace(std::make_pair(x, z), pm.hom_basis(x, z, m)).first;
    return it->second;
  };

  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < n; ++a) {
    const auto& all_paths = pm.paths(a, len);
    const int np = static_cast<int>(all_paths.size());
    if (np == 0) continue;
    // Braid word moving the mu-cable (positions 1..mu) past the
    // lambda-cable: B = W_mu ... W_1 with W_j = X_{mu+lambda-j} ...
    // X_{mu+1-j}, rightmost factor acting first.
    Eigen::MatrixXcd braid = Eigen::MatrixXcd::Identity(np, np);
    for (int j = 1; j <= mu; ++j)
      for (int i = mu + 1 - j; i <= mu + lambda - j; ++i)
        braid = pm.crossing(a, len, i, sign) * braid;

    for (int d = 0; d < n; ++d) {
      // Row factorization a --mu--> b --lambda--> d in PairBasis order.
      std::vector<Eigen::VectorXd> rows, cols;
      for (int b = 0; b < n; ++b) {
        if (h(a, b) == 0 || v(b, d) == 0) continue;
        const auto pt = pm.paths_to(a, mu, b);
        const auto pr = pm.paths_to(b, lambda, d);
        const Eigen::MatrixXd& ht = basis(hom_mu, a, b, mu);
        const Eigen::MatrixXd& hr = basis(hom_lam, b, d, lambda);
        Eigen::MatrixXi pid(pt.size(), pr.size());
        for (std::size_t i = 0; i < pt.size(); ++i) {
          std::vector<int> concat = pm.paths(a, mu)[pt[i]];
          const std::size_t base_len = concat.size();
          for (std::size_t j = 0; j < pr.size(); ++j) {
            const auto& tail = pm.paths(b, lambda)[pr[j]];
            concat.resize(base_len);
            concat.insert(concat.end(), tail.begin() + 1, tail.end());
            pid(i, j) = pm.path_id(a, concat);
          }
        }
        for (int et = 0; et < h(a, b); ++et)
          for (int er = 0; er < v(b, d); ++er) {
            Eigen::VectorXd vec = Eigen::VectorXd::Zero(np);
            for (std::size_t i = 0; i < pt.size(); ++i)
              for (std::size_t j = 0; j < pr.size(); ++j)
                vec(pid(i, j)) += ht(i, et) * hr(j, er);
            rows.push_back(std::move(vec));
          }
      }
      // Column factorization a --lambda--> c --mu--> d.
      for (int c = 0; c < n; ++c) {
        if (v(a, c) == 0 || h(c, d) == 0) continue;
        const auto pl = pm.paths_to(a, lambda, c);
        const auto pb = pm.paths_to(c, mu, d);
        const Eigen::MatrixXd& hl = basis(hom_lam, a, c, lambda);
        const Eigen::MatrixXd& hb = basis(hom_mu, c, d, mu);
        Eigen::MatrixXi pid(pl.size(), pb.size());
        for (std::size_t i = 0; i < pl.size(); ++i) {
          std::vector<int> concat = pm.paths(a, lambda)[pl[i]];
          const std::size_t base_len = concat.size();
          for (std::size_t j = 0; j < pb.size(); ++j) {
            const auto& tail = pm.paths(c, mu)[pb[j]];
            concat.resize(base_len);
            concat.insert(concat.end(), tail.begin() + 1, tail.end());
            pid(i, j) = pm.path_id(a, concat);
          }
        }
        for (int el = 0; el < v(a, c); ++el)
          for (int eb = 0; eb < h(c, d); ++eb) {
            Eigen::VectorXd vec = Eigen::VectorXd::Zero(np);
            for (std::size_t i = 0; i < pl.size(); ++i)
              for (std::size_t j = 0; j < pb.size(); ++j)
                vec(pid(i, j)) += hl(i, el) * hb(j, eb);
            cols.push_back(std::move(vec));
          }
      }
      if (rows.empty() && cols.empty()) continue;
      Eigen::MatrixXcd blk(rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const Eigen::VectorXcd braided = braid * rows[r];
        for (std::size_t cix = 0; cix < cols.size(); ++cix)
          blk(r, cix) = cols[cix].cast<std::complex<double>>().dot(braided);
      }
      cells[{a, d}] = std::move(blk);
    }
  }

  std::string nm = name;
  if (nm.empty())
    nm = "W" + std::string(sign > 0 ? "+" : "-") + "(" + g.name() + ";" +
         std::to_string(lambda) + "," + std::to_string(mu) + ")";
  return Connection(std::move(nm), corner, corner, corner, corner, h, v, v, h,
                    std::move(cells));
}

Connection crossing_connection(const FusionCategoryData& cat, int lambda,
                               int mu, int sign) {
  const ModulePathModel pm(ade_graph('A', cat.level() + 1), cat.level());
  return connection_from_cables(
      pm, lambda, mu, sign,
      "X" + std::string(sign > 0 ? "+" : "-") + "(A" +
          std::to_string(cat.level() + 1) + ";" + std::to_string(lambda) +
          "," + std::to_string(mu) + ")");
}

std::string InducedConnection::to_json() const {
  nlohmann::json j = nlohmann::json::parse(base.to_json());
  j["induced"] = {{"lambda", lambda},
                  {"sign", sign > 0 ? "+" : "-"},
                  {"spec", nlohmann::json::parse(spec.to_json())}};
  return j.dump(2);
}

InducedConnection induce(const QSystemSpec& spec, int lambda, int sign) {
  const ModulePathModel pm(spec.graph, spec.level);
  Connection base = connection_from_cables(
      pm, lambda, 1, sign,
      "alpha" + std::string(sign > 0 ? "+" : "-") + "_" +
          std::to_string(lambda) + "(" + spec.name + ")");
  return InducedConnection{std::move(base), lambda, sign, spec};
}

} // namespace ade
