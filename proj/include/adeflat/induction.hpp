#pragma once
//
// Braided induction of connections from a cell system.
//
// The general constructor takes the Temperley-Lieb path model of a
// module graph and two cable sizes: a horizontal mu-cable and a
// vertical lambda-cable, both compressed onto their top isotypic piece
// by Jones-Wenzl projectors.  The connection cell for a quadrilateral
// (a, b, c, d) is the matrix element of the cabled braid word that
// moves the mu-cable past the lambda-cable (uniformly positive or
// negative crossings) between the two factorizations of the projected
// path space:
//     rows:  a --mu--> b --lambda--> d
//     cols:  a --lambda--> c --mu--> d.
// Braiding naturality carries one Jones-Wenzl pair onto the other, so
// the corner-pair matrices are exactly unitary; bi-unitarity is
// checked numerically.
//
// Specializations: mu = 1 against a module graph gives the braided
// induction of the label lambda over that module's cell system (the
// alpha-connection); both cables over the A-graph give the pure
// crossing connection of the fusion category.  Cable size 0 yields the
// corresponding identity connection.
//
#include <string>

#include "adeflat/cells.hpp"
#include "adeflat/connection.hpp"
#include "adeflat/fusion_data.hpp"
#include "adeflat/module.hpp"

namespace ade {

// vertical cable = lambda, horizontal cable = mu; sign = +1 / -1.
// Vertical graphs are nimrep(lambda), horizontal graphs nimrep(mu).
// Throws std::invalid_argument when a cable size is outside [0, level].
Connection connection_from_cables(const ModulePathModel& pm, int lambda,
                                  int mu, int sign,
                                  const std::string& name = "");

// Crossing connection of SU(2)_level on the regular (A-graph) module:
// encodes the braiding of lambda past mu in the path basis.  The
// negative variant is the entrywise complex conjugate of the positive
// one.
Connection crossing_connection(const FusionCategoryData& cat, int lambda,
                               int mu, int sign);

struct InducedConnection {
  Connection base;
  int lambda = 0;
  int sign = +1;
  QSystemSpec spec;

  std::string to_json() const;  // base cells plus (spec, lambda, sign)
};

// Braided induction of the label lambda over the catalog entry's cell
// system (horizontal cable = the generator).  lambda = 0 gives the
// identity connection; lambda = 1 the fundamental cell system of the
// chosen sign.
InducedConnection induce(const QSystemSpec& spec, int lambda, int sign);

} // namespace ade
