#pragma once
//
// Integer sector bookkeeping over braided inductions.
//
// The chiral sector system of one sign is the closure of the identity
// connection under vertical composition with the generator induction,
// decomposed into irreducibles.  All higher hom counts then reduce to
// exact integer linear algebra: composition with W_lambda acts through
// the Chebyshev matrix U_lambda(N1) of the generator multiplication
// table, so endomorphism dimensions of deep composites, the modular
// invariant matrix Z_{l1,l2} = dim Hom(W+_{l1}, W-_{l2}), the
// commutative part theta+ (column 0 of Z), and the flat-part dimension
// sequences never require solving on a deep cable.
//
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adeflat/cells.hpp"
#include "adeflat/connection.hpp"
#include "adeflat/fusion_data.hpp"

namespace ade {

struct SectorSystem {
  QSystemSpec spec;
  int sign = +1;
  std::vector<Connection> irreducibles;  // [0] = identity connection
  // n1(i, j) = multiplicity of irreducibles[j] in X_i composed with
  // the generator induction W_1.
  Eigen::MatrixXi n1;

  int size() const { return static_cast<int>(irreducibles.size()); }

  // mult_matrix(lambda)(i, j) = multiplicity of X_j in X_i o W_lambda;
  // Chebyshev recursion M_{l+1} = M_l N1 - M_{l-1} (exact integers,
  // entrywise nonnegative).
  Eigen::MatrixXi mult_matrix(int lambda) const;

  // Multiplicities of the irreducibles inside W_lambda (row 0 of
  // mult_matrix).
  Eigen::VectorXi weights(int lambda) const;
};

// Discover the chiral system by breadth-first decomposition; throws
// NumericError if more than `cap` irreducibles appear.
SectorSystem chiral_sectors(const QSystemSpec& spec, int sign, int cap = 64);

// dim Hom(W_l1, W_l2) within one chiral system (equal-sign pairing).
long long chiral_hom(const SectorSystem& sys, int l1, int l2);

// dim End(W_lambda^{o m}) for m = 0..m_max as exact integers (sum of
// squared irreducible multiplicities).  The sequence is truncated
// early if an entry would overflow 64-bit range.
std::vector<long long> end_dim_sequence(const SectorSystem& sys, int lambda,
                                        int m_max);

// Ambient string-algebra dimensions sum_{t in theta} dim Hom(t
// lambda^m, lambda^m) in the fusion ring, m = 0..m_max; same
// truncation convention.
std::vector<long long> ambient_dim_sequence(const FusionCategoryData& cat,
                                            const std::vector<int>& theta,
                                            int lambda, int m_max);

// Fusion-ring pairing dim Hom(theta l1, l2) = sum_t N_{t l1}^{l2}.
long long theta_pairing(const FusionCategoryData& cat,
                        const std::vector<int>& theta, int l1, int l2);

struct ZMatrix {
  QSystemSpec spec;
  Eigen::MatrixXi entries;  // (level+1) x (level+1), exact integers
  double s_residual = 0.0;  // ||ZS - SZ||_max against the modular data
  double t_residual = 0.0;  // ||ZT - TZ||_max

  std::string to_json() const;
};

// Z_{l1,l2} = dim Hom(induce(spec,l1,+), induce(spec,l2,-)), computed
// by pairing the two chiral systems through the solved equivalence
// matrix H(i,j) = dim Hom(X+_i, X-_j).
ZMatrix z_matrix(const QSystemSpec& spec);

// Multiset {lambda repeated Z_{lambda,0} times}: the commutative part
// of the dual canonical endomorphism.
std::vector<int> theta_plus(const QSystemSpec& spec);

// Entry k = dim End(W_lambda^{o 2k}) for k = 0..k_max: the flat-part
// dimension sequence at even cable depth (the odd-depth variants are
// available through end_dim_sequence).
std::vector<long long> flat_part_dims(const QSystemSpec& spec, int lambda,
                                      int k_max);

} // namespace ade
