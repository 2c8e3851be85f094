#include "adeflat/grading.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ade {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Unique class hit by the nonzero columns of the given rows; throws if
// the rows straddle classes (the graph is not graded) or hit nothing.
int class_image(const Eigen::MatrixXi& m, const std::vector<int>& rows,
                const std::vector<int>& classes, const char* which) {
  std::optional<int> found;
  for (int r : rows)
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      if (found && *found != classes[c])
        throw std::invalid_argument(std::string("connection is not graded: ") +
                                    which + " graph straddles classes");
      found = classes[c];
    }
  if (!found)
    throw std::invalid_argument(std::string("connection is not graded: ") +
                                which + " graph has no edges from the class");
  return *found;
}

} // namespace

int Grading::cls(int lambda) const {
  if (lambda < 0 || lambda >= static_cast<int>(classes.size()))
    throw std::invalid_argument("object label out of range for the grading");
  return classes[lambda];
}

std::string Grading::to_json() const {
  nlohmann::json j;
  j["schema"] = "grading";
  j["schema_version"] = 1;
  j["n"] = n;
  j["classes"] = classes;
  return j.dump();
}

Grading grade_su2(const FusionCategoryData& cat) {
  Grading g;
  g.n = 2;
  g.classes.resize(cat.rank());
  for (int lam = 0; lam < cat.rank(); ++lam) g.classes[lam] = lam % 2;
  return g;
}

std::string GradedSectorPartition::to_json() const {
  nlohmann::json j;
  j["schema"] = "graded-partition";
  j["schema_version"] = 1;
  j["n"] = n;
  j["classes"] = classes;
  j["phi"] = phi;
  return j.dump();
}

GradedSectorPartition sector_partition(const QSystemSpec& spec,
                                       const Grading& grading) {
  require(grading.n == 2,
          "only the parity grading (n = 2) is realized for this catalog");
  for (int t : spec.theta)
    require(grading.cls(t) == 0, "theta is not supported in class 0");
  require(spec.graph.connected(), "module graph is not connected");
  require(spec.graph.two_colorable(), "module graph is not two-colorable");

  GradedSectorPartition part;
  part.n = grading.n;
  const std::vector<int> parity = spec.graph.parity();
  const int star = spec.graph.star();
  part.classes.resize(spec.graph.n());
  part.phi.assign(grading.n, {});
  for (int v = 0; v < spec.graph.n(); ++v) {
    part.classes[v] = (parity[v] + parity[star]) % 2;
    part.phi[part.classes[v]].push_back(v);
  }
  return part;
}

std::string GradedConnection::to_json() const {
  nlohmann::json j;
  j["schema"] = "graded-connection";
  j["schema_version"] = 1;
  j["name"] = base.name();
  j["top_class"] = top_class;
  j["bottom_class"] = bottom_class;
  j["corners"] = {base.tl().n(), base.tr().n(), base.bl().n(), base.br().n()};
  return j.dump();
}

std::vector<GradedConnection> graded_pieces(const Connection& w,
                                            const GradedSectorPartition& p) {
  const int nv = static_cast<int>(p.classes.size());
  require(w.tl().n() == nv && w.tr().n() == nv && w.bl().n() == nv &&
              w.br().n() == nv,
          "graded_pieces needs the full module connection on all corners");

  std::vector<GradedConnection> pieces;
  for (int i = 0; i < p.n; ++i) {
    if (p.phi[i].empty()) continue;
    const int t = class_image(w.top(), p.phi[i], p.classes, "top");
    const int b = class_image(w.left(), p.phi[i], p.classes, "left");
    const int r = class_image(w.bottom(), p.phi[b], p.classes, "bottom");
    // The right graph must close the square on the same classes.
    for (int row : p.phi[t])
      for (int c = 0; c < w.right().cols(); ++c)
        if (w.right()(row, c) != 0)
          require(p.classes[c] == r,
                  "connection is not graded: right graph straddles classes");
    GradedConnection piece{
        restrict_connection(w, p.phi[i], p.phi[t], p.phi[b], p.phi[r]), i, b};
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

GradedComposite graded_compose(const GradedComposite& w1,
                               const GradedComposite& w2) {
  if (std::holds_alternative<ZeroObject>(w1) ||
      std::holds_alternative<ZeroObject>(w2))
    return ZeroObject{};
  const GradedConnection& a = std::get<GradedConnection>(w1);
  const GradedConnection& b = std::get<GradedConnection>(w2);
  // Labeled-graph match: equal class labels first (graphs with distinct
  // labels are distinct even when equal as matrices), then the actual
  // shared graph with its corners.
  if (a.bottom_class != b.top_class) return ZeroObject{};
  if (!(a.base.bl() == b.base.tl()) || !(a.base.br() == b.base.tr()))
    return ZeroObject{};
  if (a.base.bottom().rows() != b.base.top().rows() ||
      a.base.bottom().cols() != b.base.top().cols() ||
      (a.base.bottom() - b.base.top()).cwiseAbs().maxCoeff() != 0)
    return ZeroObject{};
  return GradedConnection{compose_vertical(a.base, b.base), a.top_class,
                          b.bottom_class};
}

std::vector<GradedConnection> identity_system(const QSystemSpec& spec) {
  const FusionCategoryData cat(spec.level);
  const GradedSectorPartition part =
      sector_partition(spec, grade_su2(cat));
  return graded_pieces(identity_vertical(spec.graph), part);
}

} // namespace ade
