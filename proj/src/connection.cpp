#include "adeflat/connection.hpp"
#include "adeflat/version.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ade {

namespace {

bool close_vec(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() < 1e-9;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

const Eigen::MatrixXcd& empty_block() {
  static const Eigen::MatrixXcd e;
  return e;
}

} // namespace

bool CornerData::operator==(const CornerData& o) const {
  return names == o.names && close_vec(mu, o.mu);
}

CornerData corner_of(const BipartiteGraph& g) {
  return CornerData{g.vertex_names(), g.pf_weight()};
}

CornerData corner_subset(const CornerData& c, const std::vector<int>& keep) {
  CornerData out;
  out.mu.resize(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= c.n())
      throw std::invalid_argument("corner subset index out of range");
    out.names.push_back(c.names[keep[i]]);
    out.mu(i) = c.mu(keep[i]);
  }
  return out;
}

PairBasis::PairBasis(const Eigen::MatrixXi& g1, int a,
                     const Eigen::MatrixXi& g2, int d) {
  for (int m = 0; m < g1.cols(); ++m)
    for (int e1 = 0; e1 < g1(a, m); ++e1)
      for (int e2 = 0; e2 < g2(m, d); ++e2) {
        index_[{m, e1, e2}] = static_cast<int>(elems.size());
        elems.push_back({m, e1, e2});
      }
}

int PairBasis::index(int mid, int e1, int e2) const {
  auto it = index_.find({mid, e1, e2});
  return it == index_.end() ? -1 : it->second;
}

Connection::Connection(std::string name, CornerData tl, CornerData tr,
                       CornerData bl, CornerData br, Eigen::MatrixXi top,
                       Eigen::MatrixXi right, Eigen::MatrixXi left,
                       Eigen::MatrixXi bottom,
                       std::map<std::pair<int, int>, Eigen::MatrixXcd> cells,
                       double tol)
    : name_(std::move(name)), tl_(std::move(tl)), tr_(std::move(tr)),
      bl_(std::move(bl)), br_(std::move(br)), top_(std::move(top)),
      right_(std::move(right)), left_(std::move(left)),
      bottom_(std::move(bottom)), cells_(std::move(cells)), tol_(tol) {
  require(top_.rows() == tl_.n() && top_.cols() == tr_.n(),
          "top graph shape mismatch");
  require(right_.rows() == tr_.n() && right_.cols() == br_.n(),
          "right graph shape mismatch");
  require(left_.rows() == tl_.n() && left_.cols() == bl_.n(),
          "left graph shape mismatch");
  require(bottom_.rows() == bl_.n() && bottom_.cols() == br_.n(),
          "bottom graph shape mismatch");
  require(top_.minCoeff() >= 0 && right_.minCoeff() >= 0 &&
              left_.minCoeff() >= 0 && bottom_.minCoeff() >= 0,
          "negative edge multiplicity");
  for (const auto& c : {tl_, tr_, bl_, br_})
    require(c.mu.size() == c.n() && (c.n() == 0 || c.mu.minCoeff() > 0),
            "corner weights must be positive");
  const Eigen::MatrixXi tr_prod = top_ * right_;
  const Eigen::MatrixXi lb_prod = left_ * bottom_;
  require((tr_prod - lb_prod).cwiseAbs().maxCoeff() == 0,
          "malformed connection: top*right != left*bottom");
  for (int a = 0; a < tl_.n(); ++a)
    for (int d = 0; d < br_.n(); ++d) {
      const int s = tr_prod(a, d);
      const auto it = cells_.find({a, d});
      if (s == 0) {
        require(it == cells_.end() || it->second.size() == 0,
                "cell block present for empty corner pair");
        continue;
      }
      require(it != cells_.end(), "missing cell block");
      require(it->second.rows() == s && it->second.cols() == s,
              "cell block shape mismatch");
    }
}

long long Connection::cell_count() const {
  long long n = 0;
  for (int a = 0; a < tl_.n(); ++a)
    for (int b = 0; b < tr_.n(); ++b)
      for (int c = 0; c < bl_.n(); ++c)
        for (int d = 0; d < br_.n(); ++d)
          n += static_cast<long long>(top_(a, b)) * right_(b, d) *
               left_(a, c) * bottom_(c, d);
  return n;
}

const Eigen::MatrixXcd& Connection::block(int a, int d) const {
  auto it = cells_.find({a, d});
  return it == cells_.end() ? empty_block() : it->second;
}

std::complex<double> Connection::cell(int a, int b, int c, int d, int et,
                                      int er, int el, int eb) const {
  const auto& blk = block(a, d);
  if (blk.size() == 0) return 0.0;
  const int r = row_basis(a, d).index(b, et, er);
  const int col = col_basis(a, d).index(c, el, eb);
  if (r < 0 || col < 0) throw std::invalid_argument("inadmissible cell index");
  return blk(r, col);
}

PairBasis Connection::row_basis(int a, int d) const {
  return PairBasis(top_, a, right_, d);
}

PairBasis Connection::col_basis(int a, int d) const {
  return PairBasis(left_, a, bottom_, d);
}

bool Connection::same_shape(const Connection& o) const {
  auto same_graph = [](const Eigen::MatrixXi& x, const Eigen::MatrixXi& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() &&
           (x - y).cwiseAbs().maxCoeff() == 0;
  };
  return tl_ == o.tl_ && tr_ == o.tr_ && bl_ == o.bl_ && br_ == o.br_ &&
         same_graph(top_, o.top_) && same_graph(right_, o.right_) &&
         same_graph(left_, o.left_) && same_graph(bottom_, o.bottom_);
}

std::string Connection::to_json() const {
  nlohmann::json j;
  j["schema"] = "connection";
  j["schema_version"] = kSchemaVersion;
  j["name"] = name_;
  auto corner_json = [](const CornerData& c) {
    nlohmann::json cj;
    cj["names"] = c.names;
    auto& w = cj["mu"] = nlohmann::json::array();
    for (int i = 0; i < c.n(); ++i) w.push_back(c.mu(i));
    return cj;
  };
  j["corners"] = {{"tl", corner_json(tl_)},
                  {"tr", corner_json(tr_)},
                  {"bl", corner_json(bl_)},
                  {"br", corner_json(br_)}};
  auto graph_json = [](const Eigen::MatrixXi& g) {
    nlohmann::json gj = nlohmann::json::array();
    for (int u = 0; u < g.rows(); ++u)
      for (int v = 0; v < g.cols(); ++v)
        if (g(u, v) > 0) gj.push_back({u, v, g(u, v)});
    return gj;
  };
  j["graphs"] = {{"top", graph_json(top_)},
                 {"right", graph_json(right_)},
                 {"left", graph_json(left_)},
                 {"bottom", graph_json(bottom_)}};
  auto& cj = j["cells"] = nlohmann::json::array();
  for (const auto& [key, blk] : cells_) {
    const auto [a, d] = key;
    const auto rows = row_basis(a, d);
    const auto cols = col_basis(a, d);
    for (int r = 0; r < rows.size(); ++r)
      for (int c = 0; c < cols.size(); ++c) {
        const std::complex<double> z = blk(r, c);
        if (std::abs(z) < 1e-15) continue;
        const auto& re = rows.elems[r];
        const auto& ce = cols.elems[c];
        cj.push_back({{"q", {a, re.mid, ce.mid, d}},
                      {"e", {re.e1, re.e2, ce.e1, ce.e2}},
                      {"re", z.real()},
                      {"im", z.imag()}});
      }
  }
  return j.dump();
}

Connection identity_vertical(const BipartiteGraph& g) {
  const CornerData c = corner_of(g);
  const int n = c.n();
  const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(n, n);
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      const int s = g.adjacency()(a, d);
      if (s == 0) continue;
      cells[{a, d}] = Eigen::MatrixXcd::Identity(s, s);
    }
  return Connection("id_v(" + g.name() + ")", c, c, c, c, g.adjacency(), id,
                    id, g.adjacency(), std::move(cells));
}

Connection identity_horizontal(const BipartiteGraph& g) {
  const CornerData c = corner_of(g);
  const int n = c.n();
  const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(n, n);
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d) {
      const int s = g.adjacency()(a, d);
      if (s == 0) continue;
      cells[{a, d}] = Eigen::MatrixXcd::Identity(s, s);
    }
  return Connection("id_h(" + g.name() + ")", c, c, c, c, id,
                    g.adjacency(), g.adjacency(), id, std::move(cells));
}

BiunitarityReport check_biunitarity(const Connection& w) {
  BiunitarityReport rep;
  auto defect = [](const Eigen::MatrixXcd& m) {
    const int r = static_cast<int>(m.rows());
    const int c = static_cast<int>(m.cols());
    double d = 0.0;
    if (r == 0 || c == 0) return (r == c) ? 0.0 : 1.0;
    d = std::max(d, (m.adjoint() * m -
                     Eigen::MatrixXcd::Identity(c, c)).cwiseAbs().maxCoeff());
    d = std::max(d, (m * m.adjoint() -
                     Eigen::MatrixXcd::Identity(r, r)).cwiseAbs().maxCoeff());
    return d;
  };

  for (int a = 0; a < w.tl().n(); ++a)
    for (int d = 0; d < w.br().n(); ++d) {
      const auto& blk = w.block(a, d);
      if (blk.size() == 0) continue;
      rep.unitarity_residual = std::max(rep.unitarity_residual, defect(blk));
    }

  // Reflected, renormalized direction: fix (b, c), matrix between
  // (a, xi_t, xi_l) and (d, xi_r, xi_b).
  for (int b = 0; b < w.tr().n(); ++b)
    for (int c = 0; c < w.bl().n(); ++c) {
      std::vector<std::tuple<int, int, int>> rows, cols;
      for (int a = 0; a < w.tl().n(); ++a)
        for (int et = 0; et < w.top()(a, b); ++et)
          for (int el = 0; el < w.left()(a, c); ++el)
            rows.emplace_back(a, et, el);
      for (int d = 0; d < w.br().n(); ++d)
        for (int er = 0; er < w.right()(b, d); ++er)
          for (int eb = 0; eb < w.bottom()(c, d); ++eb)
            cols.emplace_back(d, er, eb);
      if (rows.empty() && cols.empty()) continue;
      Eigen::MatrixXcd m2(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [a, et, el] = rows[i];
        for (std::size_t jj = 0; jj < cols.size(); ++jj) {
          const auto [d, er, eb] = cols[jj];
          const double wgt = std::sqrt(w.tl().mu(a) * w.br().mu(d) /
                                       (w.tr().mu(b) * w.bl().mu(c)));
          m2(i, jj) = wgt * std::conj(w.cell(a, b, c, d, et, er, el, eb));
        }
      }
      rep.renorm_residual = std::max(rep.renorm_residual, defect(m2));
    }
  return rep;
}

Connection compose_vertical(const Connection& w1, const Connection& w2) {
  require(w1.bl() == w2.tl() && w1.br() == w2.tr(),
          "vertical composition: corner mismatch");
  require(w1.bottom().rows() == w2.top().rows() &&
              w1.bottom().cols() == w2.top().cols() &&
              (w1.bottom() - w2.top()).cwiseAbs().maxCoeff() == 0,
          "vertical composition: shared graph mismatch");
  const Eigen::MatrixXi left = w1.left() * w2.left();
  const Eigen::MatrixXi right = w1.right() * w2.right();
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < w1.tl().n(); ++a)
    for (int d2 = 0; d2 < w2.br().n(); ++d2) {
      // rows: (b, xi_t, rho), rho in PairBasis(right1, b, right2, d2)
      // cols: (c2, kappa, xi_b2), kappa in PairBasis(left1, a, left2, c2)
      std::vector<std::tuple<int, int, int, int, int>> rows, cols;
      for (int b = 0; b < w1.tr().n(); ++b) {
        const PairBasis pr(w1.right(), b, w2.right(), d2);
        for (int et = 0; et < w1.top()(a, b); ++et)
          for (int r = 0; r < pr.size(); ++r)
            rows.emplace_back(b, et, pr.elems[r].mid, pr.elems[r].e1,
                              pr.elems[r].e2);
      }
      for (int c2 = 0; c2 < w2.bl().n(); ++c2) {
        const PairBasis pl(w1.left(), a, w2.left(), c2);
        for (int l = 0; l < pl.size(); ++l)
          for (int eb = 0; eb < w2.bottom()(c2, d2); ++eb)
            cols.emplace_back(c2, pl.elems[l].mid, pl.elems[l].e1,
                              pl.elems[l].e2, eb);
      }
      if (rows.empty()) continue;
      Eigen::MatrixXcd blk =
          Eigen::MatrixXcd::Zero(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [b, et, m2v, e4, e4p] = rows[i];
        const auto& blk1row = w1.block(a, m2v);
        if (blk1row.size() == 0) continue;
        const PairBasis rb1 = w1.row_basis(a, m2v);
        const PairBasis cb1 = w1.col_basis(a, m2v);
        const int r1 = rb1.index(b, et, e4);
        for (std::size_t jj = 0; jj < cols.size(); ++jj) {
          const auto [c2, mv, e2, e2p, eb] = cols[jj];
          const auto& blk2 = w2.block(mv, d2);
          if (blk2.size() == 0) continue;
          const PairBasis rb2 = w2.row_basis(mv, d2);
          const PairBasis cb2 = w2.col_basis(mv, d2);
          std::complex<double> s = 0.0;
          for (int em = 0; em < w1.bottom()(mv, m2v); ++em) {
            const int c1 = cb1.index(mv, e2, em);
            const int r2 = rb2.index(m2v, em, e4p);
            const int cc2 = cb2.index(c2, e2p, eb);
            s += blk1row(r1, c1) * blk2(r2, cc2);
          }
          blk(i, jj) = s;
        }
      }
      cells[{a, d2}] = std::move(blk);
    }
  return Connection(w1.name() + "*v*" + w2.name(), w1.tl(), w1.tr(), w2.bl(),
                    w2.br(), w1.top(), right, left, w2.bottom(),
                    std::move(cells), w1.tol() + w2.tol());
}

Connection compose_horizontal(const Connection& w1, const Connection& w2) {
  require(w1.tr() == w2.tl() && w1.br() == w2.bl(),
          "horizontal composition: corner mismatch");
  require(w1.right().rows() == w2.left().rows() &&
              w1.right().cols() == w2.left().cols() &&
              (w1.right() - w2.left()).cwiseAbs().maxCoeff() == 0,
          "horizontal composition: shared graph mismatch");
  const Eigen::MatrixXi top = w1.top() * w2.top();
  const Eigen::MatrixXi bottom = w1.bottom() * w2.bottom();
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < w1.tl().n(); ++a)
    for (int d2 = 0; d2 < w2.br().n(); ++d2) {
      // rows: (b2, tau = (b, et1, et2), xi_r2)
      // cols: (c, xi_l, beta = (c2, eb1, eb2))
      std::vector<std::tuple<int, int, int, int, int>> rows, cols;
      for (int b2 = 0; b2 < w2.tr().n(); ++b2) {
        const PairBasis pt(w1.top(), a, w2.top(), b2);
        for (int t = 0; t < pt.size(); ++t)
          for (int er = 0; er < w2.right()(b2, d2); ++er)
            rows.emplace_back(b2, pt.elems[t].mid, pt.elems[t].e1,
                              pt.elems[t].e2, er);
      }
      for (int c = 0; c < w1.bl().n(); ++c) {
        const PairBasis pb(w1.bottom(), c, w2.bottom(), d2);
        for (int el = 0; el < w1.left()(a, c); ++el)
          for (int bidx = 0; bidx < pb.size(); ++bidx)
            cols.emplace_back(c, el, pb.elems[bidx].mid, pb.elems[bidx].e1,
                              pb.elems[bidx].e2);
      }
      if (rows.empty()) continue;
      Eigen::MatrixXcd blk =
          Eigen::MatrixXcd::Zero(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [b2, bmid, et1, et2, er2] = rows[i];
        for (std::size_t jj = 0; jj < cols.size(); ++jj) {
          const auto [c, el, c2mid, eb1, eb2] = cols[jj];
          const auto& blk1 = w1.block(a, c2mid);
          const auto& blk2 = w2.block(bmid, d2);
          if (blk1.size() == 0 || blk2.size() == 0) continue;
          const PairBasis rb1 = w1.row_basis(a, c2mid);
          const PairBasis cb1 = w1.col_basis(a, c2mid);
          const PairBasis rb2 = w2.row_basis(bmid, d2);
          const PairBasis cb2 = w2.col_basis(bmid, d2);
          std::complex<double> s = 0.0;
          for (int em = 0; em < w1.right()(bmid, c2mid); ++em) {
            const int r1 = rb1.index(bmid, et1, em);
            const int c1 = cb1.index(c, el, eb1);
            const int r2 = rb2.index(b2, et2, er2);
            const int cc2 = cb2.index(c2mid, em, eb2);
            s += blk1(r1, c1) * blk2(r2, cc2);
          }
          blk(i, jj) = s;
        }
      }
      cells[{a, d2}] = std::move(blk);
    }
  return Connection(w1.name() + "*h*" + w2.name(), w1.tl(), w2.tr(), w1.bl(),
                    w2.br(), top, w2.right(), w1.left(), bottom,
                    std::move(cells), w1.tol() + w2.tol());
}

Connection direct_sum(const Connection& w1, const Connection& w2) {
  require(w1.tl() == w2.tl() && w1.tr() == w2.tr() && w1.bl() == w2.bl() &&
              w1.br() == w2.br(),
          "direct sum: corner mismatch");
  require((w1.top() - w2.top()).cwiseAbs().maxCoeff() == 0 &&
              (w1.bottom() - w2.bottom()).cwiseAbs().maxCoeff() == 0,
          "direct sum: horizontal graph mismatch");
  const Eigen::MatrixXi left = w1.left() + w2.left();
  const Eigen::MatrixXi right = w1.right() + w2.right();
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < w1.tl().n(); ++a)
    for (int d = 0; d < w1.br().n(); ++d) {
      std::vector<std::tuple<int, int, int>> rows, cols;
      for (int b = 0; b < w1.tr().n(); ++b)
        for (int et = 0; et < w1.top()(a, b); ++et)
          for (int er = 0; er < right(b, d); ++er) rows.emplace_back(b, et, er);
      for (int c = 0; c < w1.bl().n(); ++c)
        for (int el = 0; el < left(a, c); ++el)
          for (int eb = 0; eb < w1.bottom()(c, d); ++eb)
            cols.emplace_back(c, el, eb);
      if (rows.empty()) continue;
      Eigen::MatrixXcd blk =
          Eigen::MatrixXcd::Zero(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [b, et, er] = rows[i];
        const bool r_first = er < w1.right()(b, d);
        for (std::size_t jj = 0; jj < cols.size(); ++jj) {
          const auto [c, el, eb] = cols[jj];
          const bool l_first = el < w1.left()(a, c);
          if (r_first != l_first) continue;
          if (r_first)
            blk(i, jj) = w1.cell(a, b, c, d, et, er, el, eb);
          else
            blk(i, jj) = w2.cell(a, b, c, d, et, er - w1.right()(b, d),
                                 el - w1.left()(a, c), eb);
        }
      }
      cells[{a, d}] = std::move(blk);
    }
  return Connection(w1.name() + "+" + w2.name(), w1.tl(), w1.tr(), w1.bl(),
                    w1.br(), w1.top(), right, left, w1.bottom(),
                    std::move(cells), std::max(w1.tol(), w2.tol()));
}

Connection gauge_transform(
    const Connection& w,
    const std::map<std::pair<int, int>, Eigen::MatrixXcd>& u) {
  require(w.tl() == w.tr() && w.bl() == w.br() &&
              (w.left() - w.right()).cwiseAbs().maxCoeff() == 0,
          "gauge transform requires matching vertical sides");
  auto u_at = [&](int x, int y) -> Eigen::MatrixXcd {
    const int s = w.left()(x, y);
    auto it = u.find({x, y});
    if (it == u.end()) return Eigen::MatrixXcd::Identity(s, s);
    require(it->second.rows() == s && it->second.cols() == s,
            "gauge unitary shape mismatch");
    return it->second;
  };
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int a = 0; a < w.tl().n(); ++a)
    for (int d = 0; d < w.br().n(); ++d) {
      const auto& blk = w.block(a, d);
      if (blk.size() == 0) continue;
      const PairBasis rb = w.row_basis(a, d);
      const PairBasis cb = w.col_basis(a, d);
      Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(blk.rows(), blk.cols());
      // rows transform by u(b,d) on xi_r, cols by conj(u(a,c)) on xi_l
      for (int i = 0; i < rb.size(); ++i) {
        const auto [b, et, erp] = rb.elems[i];
        const Eigen::MatrixXcd ur = u_at(b, d);
        for (int jj = 0; jj < cb.size(); ++jj) {
          const auto [c, elp, eb] = cb.elems[jj];
          const Eigen::MatrixXcd ul = u_at(a, c);
          std::complex<double> s = 0.0;
          for (int er = 0; er < w.right()(b, d); ++er)
            for (int el = 0; el < w.left()(a, c); ++el)
              s += ur(erp, er) * blk(rb.index(b, et, er), cb.index(c, el, eb)) *
                   std::conj(ul(elp, el));
          out(i, jj) = s;
        }
      }
      cells[{a, d}] = std::move(out);
    }
  return Connection(w.name() + "~", w.tl(), w.tr(), w.bl(), w.br(), w.top(),
                    w.right(), w.left(), w.bottom(), std::move(cells),
                    w.tol());
}

Connection restrict_connection(const Connection& w,
                               const std::vector<int>& keep_tl,
                               const std::vector<int>& keep_tr,
                               const std::vector<int>& keep_bl,
                               const std::vector<int>& keep_br) {
  auto sub = [](const Eigen::MatrixXi& m, const std::vector<int>& r,
                const std::vector<int>& c) {
    Eigen::MatrixXi out(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = m(r[i], c[j]);
    return out;
  };
  const Eigen::MatrixXi top = sub(w.top(), keep_tl, keep_tr);
  const Eigen::MatrixXi right = sub(w.right(), keep_tr, keep_br);
  const Eigen::MatrixXi left = sub(w.left(), keep_tl, keep_bl);
  const Eigen::MatrixXi bottom = sub(w.bottom(), keep_bl, keep_br);
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (std::size_t ai = 0; ai < keep_tl.size(); ++ai)
    for (std::size_t di = 0; di < keep_br.size(); ++di) {
      const int a = keep_tl[ai], d = keep_br[di];
      std::vector<std::tuple<int, int, int, int>> rows, cols;
      for (std::size_t bi = 0; bi < keep_tr.size(); ++bi)
        for (int et = 0; et < top(ai, bi); ++et)
          for (int er = 0; er < right(bi, di); ++er)
            rows.emplace_back(static_cast<int>(bi), keep_tr[bi], et, er);
      for (std::size_t ci = 0; ci < keep_bl.size(); ++ci)
        for (int el = 0; el < left(ai, ci); ++el)
          for (int eb = 0; eb < bottom(ci, di); ++eb)
            cols.emplace_back(static_cast<int>(ci), keep_bl[ci], el, eb);
      if (rows.empty() && cols.empty()) continue;
      Eigen::MatrixXcd blk(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [bi, b, et, er] = rows[i];
        for (std::size_t jj = 0; jj < cols.size(); ++jj) {
          const auto [ci, c, el, eb] = cols[jj];
          blk(i, jj) = w.cell(a, b, c, d, et, er, el, eb);
        }
      }
      cells[{static_cast<int>(ai), static_cast<int>(di)}] = std::move(blk);
    }
  return Connection(w.name() + "|r", corner_subset(w.tl(), keep_tl),
                    corner_subset(w.tr(), keep_tr),
                    corner_subset(w.bl(), keep_bl),
                    corner_subset(w.br(), keep_br), top, right, left, bottom,
                    std::move(cells), w.tol());
}

Connection mirror_horizontal(const Connection& w) {
  // New quadruple (b, a, d, c): top' = top^T, right' = left,
  // left' = right, bottom' = bottom^T; block key moves to (b, c).
  const Eigen::MatrixXi top = w.top().transpose();
  const Eigen::MatrixXi bottom = w.bottom().transpose();
  const Eigen::MatrixXi right = w.left();
  const Eigen::MatrixXi left = w.right();
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int b = 0; b < w.tr().n(); ++b)
    for (int c = 0; c < w.bl().n(); ++c) {
      const PairBasis rb(top, b, right, c);   // (a, xi_t, xi_l)
      const PairBasis cb(left, b, bottom, c); // (d, xi_r, xi_b)
      if (rb.size() == 0 && cb.size() == 0) continue;
      Eigen::MatrixXcd blk(rb.size(), cb.size());
      for (int i = 0; i < rb.size(); ++i) {
        const auto [a, et, el] = rb.elems[i];
        for (int jj = 0; jj < cb.size(); ++jj) {
          const auto [d, er, eb] = cb.elems[jj];
          const double wgt = std::sqrt(w.tl().mu(a) * w.br().mu(d) /
                                       (w.tr().mu(b) * w.bl().mu(c)));
          blk(i, jj) = wgt * std::conj(w.cell(a, b, c, d, et, er, el, eb));
        }
      }
      cells[{b, c}] = std::move(blk);
    }
  return Connection(w.name() + "^h", w.tr(), w.tl(), w.br(), w.bl(), top,
                    right, left, bottom, std::move(cells), w.tol());
}

Connection mirror_vertical(const Connection& w) {
  // New quadruple (c, d, a, b): top' = bottom, right' = right^T,
  // left' = left^T, bottom' = top; block key moves to (c, b).
  const Eigen::MatrixXi top = w.bottom();
  const Eigen::MatrixXi bottom = w.top();
  const Eigen::MatrixXi right = w.right().transpose();
  const Eigen::MatrixXi left = w.left().transpose();
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells;
  for (int c = 0; c < w.bl().n(); ++c)
    for (int b = 0; b < w.tr().n(); ++b) {
      const PairBasis rb(top, c, right, b);   // (d, xi_b, xi_r)
      const PairBasis cb(left, c, bottom, b); // (a, xi_l, xi_t)
      if (rb.size() == 0 && cb.size() == 0) continue;
      Eigen::MatrixXcd blk(rb.size(), cb.size());
      for (int i = 0; i < rb.size(); ++i) {
        const auto [d, eb, er] = rb.elems[i];
        for (int jj = 0; jj < cb.size(); ++jj) {
          const auto [a, el, et] = cb.elems[jj];
          const double wgt = std::sqrt(w.tl().mu(a) * w.br().mu(d) /
                                       (w.tr().mu(b) * w.bl().mu(c)));
          blk(i, jj) = wgt * std::conj(w.cell(a, b, c, d, et, er, el, eb));
        }
      }
      cells[{c, b}] = std::move(blk);
    }
  return Connection(w.name() + "^v", w.bl(), w.br(), w.tl(), w.tr(), top,
                    right, left, bottom, std::move(cells), w.tol());
}

} // namespace ade
