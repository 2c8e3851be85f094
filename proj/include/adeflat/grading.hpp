#pragma once
//
// Z/n gradings and the graded (multi-fusion) composition of module
// connections.
//
// A grading splits the simple objects into classes Delta_j so that
// fusion adds classes.  For SU(2) level k this is the parity grading:
// Delta_0 = {0, 2, ...}, Delta_1 = {1, 3, ...}.  On the module side the
// vertices of a module graph split into classes Phi_j by bipartite
// parity from the star vertex (transport by the generator steps the
// class by one), provided the dual canonical object theta is supported
// in class 0.  The horizontal graph connecting Phi_j to Phi_{j+1} is
// written G_j; G_j and G_m can be isomorphic (even equal as matrices)
// for j != m but are distinguished as labeled graphs.
//
// Each induced module connection splits into graded slices: the slice
// with top-left corner in Phi_i has top graph G_i and bottom graph
// G_{i+p} where p is the class of the inducing object.  Composition of
// slices is defined to be zero unless the labeled bottom and top graphs
// match; with this rule the slices generate a multi-fusion system whose
// identity decomposes into n irreducible pieces, one per class.
//
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adeflat/cells.hpp"
#include "adeflat/connection.hpp"
#include "adeflat/fusion_data.hpp"

namespace ade {

// Grading of the simple objects: classes[lambda] in Z/n, with
// classes[0] = 0, classes of conjugates negated, and fusion additive.
struct Grading {
  int n = 2;
  std::vector<int> classes;

  int cls(int lambda) const;
  std::string to_json() const;
};

// The parity grading of SU(2) at the category's level.
Grading grade_su2(const FusionCategoryData& cat);

// Partition of the module-graph vertices into the classes Phi_j,
// measured by path parity from the star vertex.
struct GradedSectorPartition {
  int n = 2;
  std::vector<int> classes;           // class of each vertex
  std::vector<std::vector<int>> phi;  // phi[j]: vertices of class j

  std::string to_json() const;
};

// Build the partition.  Requires every label of spec.theta to lie in
// class 0 of the grading, the module graph to be connected and
// two-colorable, and (for the realized catalog) grading.n == 2; throws
// std::invalid_argument otherwise.
GradedSectorPartition sector_partition(const QSystemSpec& spec,
                                       const Grading& grading);

// The distinguished zero of the graded composition; a value, not an
// error, so it can absorb products and participate in bookkeeping.
struct ZeroObject {
  bool operator==(const ZeroObject&) const { return true; }
};

// A graded slice of a module connection: the underlying connection
// restricted to one top-left class, plus the class labels that make
// composition label-sensitive.  Top graph = G_{top_class}, bottom
// graph = G_{bottom_class}.
struct GradedConnection {
  Connection base;
  int top_class = 0;
  int bottom_class = 0;

  std::string to_json() const;
};

using GradedComposite = std::variant<ZeroObject, GradedConnection>;

// Split a module connection whose four corners are the full vertex set
// into its graded slices, one per top-left class with vertices present.
// The other three corner classes are inferred from the connection's
// graphs, which must map each class into a single class (homogeneity);
// throws std::invalid_argument if the connection is not graded.
std::vector<GradedConnection> graded_pieces(const Connection& w,
                                            const GradedSectorPartition& p);

// Vertical composition with the zero rule: the result is ZeroObject
// unless w1's bottom and w2's top match as labeled graphs (equal class
// labels, corners, and adjacency); otherwise compose_vertical.  Zero
// absorbs.
GradedComposite graded_compose(const GradedComposite& w1,
                               const GradedComposite& w2);

// The graded pieces of the identity connection of the spec's module
// graph: exactly n mutually orthogonal idempotents, the irreducible
// components of the multi-fusion identity.
std::vector<GradedConnection> identity_system(const QSystemSpec& spec);

} // namespace ade
