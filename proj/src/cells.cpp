#include "adeflat/cells.hpp"
#include "adeflat/version.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ade {

namespace {

const char* locality_str(Locality l) {
  switch (l) {
  case Locality::local:
    return "local";
  case Locality::nonlocal:
    return "nonlocal";
  default:
    return "unknown";
  }
}

QSystemSpec make_spec(char series, int index) {
  QSystemSpec s;
  s.graph = ade_graph(series, index);
  s.name = s.graph.name();
  s.level = coxeter_level(s.graph);
  switch (series) {
  case 'A':
    s.theta = {0};
    s.locality = Locality::local;
    s.locality_source = LocalitySource::braiding_phase;
    break;
  case 'D': {
    const int l = index - 2; // level k = 2l
    s.theta = {0, s.level};
    // Simple-current Q-system on {0, k}: the multiplication is
    // commutative iff the self-braiding phase of the current is +1,
    // i.e. iff l is even.
    s.locality = (l % 2 == 0) ? Locality::local : Locality::nonlocal;
    s.locality_source = LocalitySource::braiding_phase;
    break;
  }
  case 'E':
    s.locality_source = LocalitySource::catalog_metadata;
    if (index == 6) {
      s.theta = {0, 6};
      s.locality = Locality::local;
    } else if (index == 7) {
      s.theta = {0, 8, 16};
      s.locality = Locality::nonlocal;
    } else {
      s.theta = {0, 10, 18, 28};
      s.locality = Locality::local;
      s.notes =
          "theta top label corrected to 28 (conformal embedding in (G2)_1 "
          "forces exponents 1,11,19,29) and level corrected to 28; both "
          "digits are misprinted in circulated sources";
    }
    break;
  }
  return s;
}

} // namespace

std::string QSystemSpec::to_json() const {
  nlohmann::json j;
  j["schema"] = "qsystem-spec";
  j["schema_version"] = kSchemaVersion;
  j["name"] = name;
  j["level"] = level;
  j["theta"] = theta;
  j["locality"] = locality_str(locality);
  j["locality_source"] = locality_source == LocalitySource::braiding_phase
                             ? "braiding_phase"
                             : "catalog_metadata";
  if (!notes.empty()) j["notes"] = notes;
  j["graph"] = nlohmann::json::parse(graph.to_json());
  return j.dump();
}

std::vector<QSystemSpec> catalog() {
  std::vector<QSystemSpec> out;
  for (int n = 2; n <= 9; ++n) out.push_back(make_spec('A', n));
  for (int n = 4; n <= 10; ++n) out.push_back(make_spec('D', n));
  for (int n = 6; n <= 8; ++n) out.push_back(make_spec('E', n));
  return out;
}

QSystemSpec find_spec(const std::string& name) {
  for (auto& s : catalog())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown catalog entry: " + name);
}

Connection a_series_cells(int k) {
  if (k < 1) throw std::invalid_argument("level must be >= 1");
  const BipartiteGraph g = ade_graph('A', k + 1);
  const CornerData c = corner_of(g);
  const Eigen::MatrixXi& adj = g.adjacency();
  const auto mu = [&](int v) { return c.mu(v); };
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a <= k; ++a)
    for (int d = 0; d <= k; ++d) {
      std::vector<int> mids;
      for (int b = 0; b <= k; ++b)
        if (adj(a, b) > 0 && adj(b, d) > 0) mids.push_back(b);
      if (mids.empty()) continue;
      Eigen::MatrixXcd blk(mids.size(), mids.size());
      for (std::size_t i = 0; i < mids.size(); ++i)
        for (std::size_t j = 0; j < mids.size(); ++j) {
          const int b = mids[i], cc = mids[j];
          double v;
          if (a != d)
            v = 1.0; // unique middle vertex, unimodular cell
          else if (b == cc)
            v = (b > a ? 1.0 : -1.0) / mu(a);
          else
            v = std::sqrt(mu(b) * mu(cc)) / mu(a);
          blk(i, j) = v;
        }
      cells[{a, d}] = blk;
    }
  return Connection("ghj(A" + std::to_string(k + 1) + ")", c, c, c, c, adj,
                    adj, adj, adj, std::move(cells));
}

Connection fundamental_connection(const BipartiteGraph& g, int level,
                                  int sign) {
  if (coxeter_level(g) != level)
    throw std::invalid_argument("graph norm does not match the level");
  const CornerData c = corner_of(g);
  const Eigen::MatrixXi& adj = g.adjacency();
  const int n = c.n();
  const std::complex<double> qh =
      std::polar(1.0, sign * M_PI / (2.0 * (level + 2)));
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      std::vector<int> mids;
      for (int b = 0; b < n; ++b)
        if (adj(a, b) > 0 && adj(b, d) > 0) mids.push_back(b);
      if (mids.empty()) continue;
      Eigen::MatrixXcd blk(mids.size(), mids.size());
      for (std::size_t i = 0; i < mids.size(); ++i)
        for (std::size_t j = 0; j < mids.size(); ++j) {
          std::complex<double> v = 0.0;
          if (mids[i] == mids[j]) v += qh;
          if (a == d)
            v -= (1.0 / qh) * std::sqrt(c.mu(mids[i]) * c.mu(mids[j])) /
                 c.mu(a);
          blk(i, j) = v;
        }
      cells[{a, d}] = blk;
    }
  return Connection("X" + std::string(sign > 0 ? "+" : "-") + "(" +
                        g.name() + ")",
                    c, c, c, c, adj, adj, adj, adj, std::move(cells));
}

Connection ghj_cells(const QSystemSpec& spec) {
  if (coxeter_level(spec.graph) != spec.level)
    throw std::invalid_argument("spec level does not match its graph");
  if (spec.name.size() >= 1 && spec.name[0] == 'A')
    return a_series_cells(spec.level);
  return fundamental_connection(spec.graph, spec.level, +1);
}

} // namespace ade
