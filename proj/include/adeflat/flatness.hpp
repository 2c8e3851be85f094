#pragma once
//
// Flatness verdicts with re-checkable certificates.
//
// Primary criterion (integer linear algebra, numerically robust): the
// induced connection of a sector lambda is flat iff its chiral
// endomorphism dimension sequence dim End(W_lambda^{o m}) equals the
// ambient string-algebra sequence dim Hom(theta lambda^m, lambda^m)
// for every m — even m covers the (lambda-bar lambda)^k towers, odd m
// the lambda (lambda-bar lambda)^k variants.  A nonflat verdict
// carries the first strict inequality as a finite certificate.
//
// Independent cross-check: direct contraction of the n x m cell grid
// with all boundary corners pinned at the distinguished vertex — for a
// flat connection every such parallel-transport amplitude is a
// Kronecker delta of boundary paths.
//
// Locality oracle: for a simple-current Q-system theta = 0 + k the
// multiplication is commutative iff the self-braiding phase of the
// current is +1 (one R-symbol); trivial theta is always local;
// exceptional entries fall back to catalog metadata.
//
#include <string>
#include <vector>

#include "adeflat/cells.hpp"
#include "adeflat/connection.hpp"

namespace ade {

enum class FlatVerdict { flat, nonflat };
enum class FlatMethod { dimension_equality, parallel_transport };

struct FlatnessCertificate {
  int k = -1;               // tower depth of the first strict inequality
  bool odd_variant = false; // seen at odd composition length 2k+1
  long long lhs_dim = 0;    // chiral (flat-part) dimension
  long long rhs_dim = 0;    // ambient fusion-ring dimension
};

struct FlatnessVerdict {
  QSystemSpec spec;
  int lambda = 1;
  int sign = +1;
  FlatVerdict verdict = FlatVerdict::flat;
  FlatMethod method = FlatMethod::dimension_equality;
  FlatnessCertificate certificate;  // meaningful only when nonflat
  int depth = 0;          // requested tower depth
  int depth_checked = 0;  // depth actually certified (64-bit truncation)
  std::vector<long long> chiral_dims;   // dim End(W^{o m}), m = 0..
  std::vector<long long> ambient_dims;  // dim Hom(theta l^m, l^m)

  std::string to_json() const;
};

// Longest graph distance between any two vertices.
int graph_diameter(const BipartiteGraph& g);

// Flat iff the two dimension sequences agree up to composition length
// 2*depth+1; depth < 0 selects the default 2 x graph diameter.
FlatnessVerdict check_flatness(const QSystemSpec& spec, int lambda, int sign,
                               int depth = -1);

// Direct parallel-transport test of flatness on the n x m cell grid.
// The grid composite pinned at `star` transports vertical strings
// (pairs of left-boundary paths from star) across the rectangle;
// flatness demands the transported strings commute with every
// horizontal string (pairs of top-boundary paths from star).  Returns
// the maximum entrywise deviation of a transported matrix unit from
// the horizontal-string commutant: exactly 0 for flat connections at
// every size, order one for non-flat ones once n reaches the depth
// where the flat part falls short of the full path algebra.  Requires
// all four graphs of w equal with 0/1 adjacency.
double parallel_transport_check(const Connection& w, int n, int m, int star);

struct LocalityReport {
  Locality locality = Locality::unknown;
  LocalitySource source = LocalitySource::catalog_metadata;
  double phase_deviation = 0.0;  // |r - 1| when decided by braiding
};

LocalityReport locality_from_braiding(const QSystemSpec& spec);

// Theorem-of-correspondence comparison: the flat part of spec_a at
// lambda matches the full tower of the commutative entry spec_b.
// Requires theta_plus(spec_a) == spec_b.theta.
bool flat_part_matches(const QSystemSpec& spec_a, const QSystemSpec& spec_b,
                       int lambda, int k_max);

} // namespace ade
