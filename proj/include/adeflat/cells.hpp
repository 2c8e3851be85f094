#pragma once
//
// GHJ cell systems: the catalog of SU(2)_k Frobenius-algebra module data
// on the A-D-E graphs, and the fundamental bi-unitary connections built
// from them.
//
// Every catalog entry records the level, the module graph, the dual
// canonical endomorphism theta (multiplicities of the simple objects at
// the star vertex, all 1 here), and whether the underlying Q-system is
// local (commutative).  The fundamental connection has all four corners
// equal to the graph vertices, both horizontal graphs the module graph
// itself, and both vertical graphs the module graph (one-step transport
// by the generator in both directions).
//
#include <string>
#include <vector>

#include "adeflat/connection.hpp"
#include "adeflat/graph.hpp"

namespace ade {

enum class Locality { local, nonlocal, unknown };
enum class LocalitySource { braiding_phase, catalog_metadata };

struct QSystemSpec {
  std::string name;        // e.g. "A5", "D4", "E7"
  int level = 0;           // k
  BipartiteGraph graph;    // module graph, star = distinguished vertex
  std::vector<int> theta;  // sorted labels, multiplicity = repetition
  Locality locality = Locality::unknown;
  LocalitySource locality_source = LocalitySource::catalog_metadata;
  std::string notes;

  std::string to_json() const;
};

// The full GHJ catalog at levels <= 28: A2..A9 (theta = {0}),
// D4..D10 (k = 2(n-2), theta = {0, k}), E6 (k=10), E7 (k=16), E8 (k=28).
std::vector<QSystemSpec> catalog();

// Catalog entry by graph name; throws std::invalid_argument if unknown.
QSystemSpec find_spec(const std::string& name);

// Closed-form fundamental connection on A_{k+1} (real cells from
// Perron-Frobenius weight ratios with alternating sign on the diagonal
// blocks); bi-unitary to machine precision.
Connection a_series_cells(int k);

// Braid-crossing fundamental connection on a simply-laced graph at the
// matching level:
//   cell(a,b,c,d) = q^{s/2} delta_{b,c}
//                 - q^{-s/2} delta_{a,d} sqrt(mu(b) mu(c)) / mu(a),
// with q^{1/2} = exp(i pi / (2(k+2))).
Connection fundamental_connection(const BipartiteGraph& g, int level,
                                  int sign);

// Fundamental connection of a catalog entry: the A-series closed form
// for A graphs, the positive braid-crossing form for D and E graphs.
// Throws std::invalid_argument if level and graph norm disagree.
Connection ghj_cells(const QSystemSpec& spec);

} // namespace ade
