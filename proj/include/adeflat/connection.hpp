#pragma once
//
// Bi-unitary connections: complex-valued cells on quadrilaterals
//
//        a --- xi_t (top) ---> b
//        |                     |
//      xi_l (left)          xi_r (right)
//        |                     |
//        v                     v
//        c --- xi_b (bottom) -> d
//
// between four corner vertex sets joined by four edge-multiplicity
// graphs.  For each corner pair (a, d) the cells form a matrix between
// the top-right bridges (b, xi_t, xi_r) and the left-bottom bridges
// (c, xi_l, xi_b); bi-unitarity means
//   (1) every such matrix is unitary, and
//   (2) the reflected matrix, renormalized by
//       sqrt(mu(a) mu(d) / (mu(b) mu(c))) and entrywise conjugated,
//       grouped by fixed (b, c), is unitary as well.
// Connections are immutable; composition contracts the shared graph and
// indexes composite edges canonically by (middle vertex, first copy,
// second copy).
//
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adeflat/graph.hpp"

namespace ade {

// One side of a connection: a finite labeled vertex set with
// Perron-Frobenius weights.
struct CornerData {
  std::vector<std::string> names;
  Eigen::VectorXd mu;

  int n() const { return static_cast<int>(names.size()); }
  bool operator==(const CornerData& o) const;
};

CornerData corner_of(const BipartiteGraph& g);
CornerData corner_subset(const CornerData& c, const std::vector<int>& keep);

// Canonical enumeration of two-step bridges a --e1--> m --e2--> d through
// a pair of edge-multiplicity graphs, ordered by (m, e1, e2).
struct PairBasis {
  struct Elem {
    int mid, e1, e2;
  };
  std::vector<Elem> elems;

  PairBasis() = default;
  PairBasis(const Eigen::MatrixXi& g1, int a, const Eigen::MatrixXi& g2,
            int d);
  int size() const { return static_cast<int>(elems.size()); }
  int index(int mid, int e1, int e2) const;  // -1 if absent

 private:
  std::map<std::tuple<int, int, int>, int> index_;
};

struct BiunitarityReport {
  double unitarity_residual = 0.0;  // corner-pair matrices vs unitary
  double renorm_residual = 0.0;     // reflected renormalized matrices
  double max_residual() const {
    return std::max(unitarity_residual, renorm_residual);
  }
};

class Connection {
 public:
  // Graph shapes: top: tl x tr, right: tr x br, left: tl x bl,
  // bottom: bl x br.  Cells: one matrix per (a in tl, d in br) with
  // rows = PairBasis(top, a, right, d), cols = PairBasis(left, a,
  // bottom, d); entries absent for structurally empty pairs.
  // Requires top*right == left*bottom entrywise (so the matrices are
  // square); throws std::invalid_argument on malformed input.
  Connection(std::string name, CornerData tl, CornerData tr, CornerData bl,
             CornerData br, Eigen::MatrixXi top, Eigen::MatrixXi right,
             Eigen::MatrixXi left, Eigen::MatrixXi bottom,
             std::map<std::pair<int, int>, Eigen::MatrixXcd> cells,
             double tol = 1e-9);

  const std::string& name() const { return name_; }
  const CornerData& tl() const { return tl_; }
  const CornerData& tr() const { return tr_; }
  const CornerData& bl() const { return bl_; }
  const CornerData& br() const { return br_; }
  const Eigen::MatrixXi& top() const { return top_; }
  const Eigen::MatrixXi& right() const { return right_; }
  const Eigen::MatrixXi& left() const { return left_; }
  const Eigen::MatrixXi& bottom() const { return bottom_; }
  double tol() const { return tol_; }

  // Number of cell entries over all admissible quadruples
  // (= trace formula over the four adjacency matrices).
  long long cell_count() const;

  const Eigen::MatrixXcd& block(int a, int d) const;  // empty if absent
  std::complex<double> cell(int a, int b, int c, int d, int et, int er,
                            int el, int eb) const;

  PairBasis row_basis(int a, int d) const;  // (b, xi_t, xi_r)
  PairBasis col_basis(int a, int d) const;  // (c, xi_l, xi_b)

  bool same_shape(const Connection& o) const;  // corners + all four graphs

  std::string to_json() const;

 private:
  std::string name_;
  CornerData tl_, tr_, bl_, br_;
  Eigen::MatrixXi top_, right_, left_, bottom_;
  std::map<std::pair<int, int>, Eigen::MatrixXcd> cells_;
  double tol_ = 1e-9;
};

// Identity for vertical composition on a symmetric graph g: top = bottom
// = g, left = right = trivial; all admissible cells 1.
Connection identity_vertical(const BipartiteGraph& g);
// Identity for horizontal composition: left = right = g, top = bottom
// trivial.
Connection identity_horizontal(const BipartiteGraph& g);

BiunitarityReport check_biunitarity(const Connection& w);

// Stacks w1 above w2 (w1.bottom graph and corners must match w2.top);
// contracts the shared horizontal edge.  Throws std::invalid_argument on
// mismatch.
Connection compose_vertical(const Connection& w1, const Connection& w2);
// Puts w1 left of w2 (w1.right graph and corners must match w2.left).
Connection compose_horizontal(const Connection& w1, const Connection& w2);

// Direct sum in the vertical direction: same corners and horizontal
// graphs; vertical edge spaces concatenate (w1 copies first).
Connection direct_sum(const Connection& w1, const Connection& w2);

// Gauge action: unitary change of basis on the vertical edge spaces,
// u[(x,y)] a square unitary of size left/right multiplicity (the same
// family acts on left and right edges; left and right graphs must be
// equal).  Per quadruple, M' = u(b,d) . M . u(a,c)^H where M maps the
// left edge space (a,c) to the right edge space (b,d); the family u is
// then itself an intertwiner from the old connection to the new one.
// Missing keys default to the identity.
Connection gauge_transform(
    const Connection& w,
    const std::map<std::pair<int, int>, Eigen::MatrixXcd>& u);

// Restriction to corner subsets (indices into each corner, in order);
// keeps the cells whose four corners survive.  Exact when the graphs
// have no edges leaving the kept sets (otherwise unitarity may break,
// which check_biunitarity will report).
Connection restrict_connection(const Connection& w,
                               const std::vector<int>& keep_tl,
                               const std::vector<int>& keep_tr,
                               const std::vector<int>& keep_bl,
                               const std::vector<int>& keep_br);

// Renormalized mirror reflections.  Both conjugate every cell and scale
// it by sqrt(mu(a) mu(d) / (mu(b) mu(c))) — the second bi-unitarity
// axiom states precisely that these reflections are again bi-unitary.
//
// mirror_horizontal flips across the vertical axis: corners tl<->tr and
// bl<->br swap, top and bottom transpose, left and right exchange.
// mirror_vertical flips across the horizontal axis: corners tl<->bl and
// tr<->br swap, top and bottom exchange, left and right transpose.
// Each is an involution (mirror(mirror(w)) == w exactly).
Connection mirror_horizontal(const Connection& w);
Connection mirror_vertical(const Connection& w);

} // namespace ade
