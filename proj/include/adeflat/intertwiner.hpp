#pragma once
//
// Intertwiner spaces between bi-unitary connections.
//
// A morphism from W1 to W2 (same corners, same horizontal graphs,
// left = right vertical graphs on each side) is a family of matrices
// T(x, y) : V1-edge-space(x, y) -> V2-edge-space(x, y), indexed by
// vertical vertex pairs, satisfying for every horizontal edge pair
// xi_t : a -> b, xi_b : c -> d the transport equation
//     M2(xi_t, xi_b) T(a, c) = T(b, d) M1(xi_t, xi_b),
// where Mi(xi_t, xi_b)[xi_r, xi_l] = cell_i(a,b,c,d, ...).  The space
// is computed as the certified null space of the assembled linear
// system (normal-equation eigensolve per connected component of the
// vertex-pair coupling graph); the dimension is accepted only across a
// clean spectral gap, otherwise a NumericError is raised.
//
// These dimensions realize the Hom spaces of the ambichiral (neutral)
// sector combinatorics: every basis element automatically commutes
// with the double transport around a face, so only the transparent
// part of the induced system admits morphisms.
//
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "adeflat/connection.hpp"
#include "adeflat/module.hpp"

namespace ade {

struct IntertwinerSpace {
  std::string source;  // connection names, for reporting
  std::string target;
  // basis[b] maps a vertical vertex pair (x, y) to a V2(x,y) x V1(x,y)
  // matrix; orthonormal under sum of trace pairings.
  std::vector<std::map<std::pair<int, int>, Eigen::MatrixXcd>> basis;
  int dim = 0;
  double residual = 0.0;  // max 2-norm defect of the basis elements
};

// Hom(w1 -> w2).  Requires matching corners (tl == tr and bl == br on
// both), equal horizontal graphs, and left == right on each connection;
// throws std::invalid_argument otherwise, NumericError when the null
// space is not certified by a spectral gap.
IntertwinerSpace intertwiner_space(const Connection& w1,
                                   const Connection& w2);

int hom_dim(const Connection& w1, const Connection& w2);

// Two connections are equivalent iff they have the same shape and
// dim Hom(w1,w2) = dim End(w1) = dim End(w2)  (semisimplicity makes
// this equality a certificate: sum (m_i - n_i)^2 = 0).
bool gauge_equivalent(const Connection& w1, const Connection& w2);

// Full decomposition into irreducible connections with multiplicities.
// Uses a seeded random self-adjoint element of End(w), clusters its
// spectrum (tolerance 1e-8), compresses onto each eigenspace family,
// verifies every piece has End dimension 1, and groups equivalent
// pieces.  Deterministic seed schedule with retries; NumericError if no
// seed yields a clean split.
std::vector<std::pair<Connection, int>> decompose(const Connection& w);

// The deterministic seed schedule decompose draws from, exposed so
// batch tools can log the randomness they depend on.
const std::vector<unsigned>& decomposition_seed_schedule();

} // namespace ade
