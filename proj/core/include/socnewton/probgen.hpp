#pragma once

#include <cstdint>

#include "socnewton/lsoccp.hpp"
#include "socnewton/pwls.hpp"
#include "socnewton/rng.hpp"

// Seeded instance generators. A GenSpec fully determines the instance:
// identical specs give bit-identical output on any platform.

namespace socnewton {

enum class GenKind { kDense, kSparse, kSpdDense };

struct GenSpec {
  int n = 0;
  GenKind kind = GenKind::kDense;
  std::uint64_t seed = 0;

  // Sparse path.
  double density = 0.004;
  double target_cond = 1e4;

  // SPD eigenvalue range, drawn open-interval. The (0,1) default gives the
  // deliberately ill-conditioned SPD family.
  double lambda_min = 0.0;
  double lambda_max = 1.0;

  // Requested ||M - Id|| for the dense LSOCCP family.
  double m_minus_id_norm = 0.3;
};

// Dense T with entries uniform(-10,10), rescaled by 2/(sigma_min * u) with
// u uniform(0,1), so sigma_min(T) = 2/u > 2 and ||T^-1|| = u/2 < 1/2.
// A solution is planted strictly outside both cones and b built from it.
PwlsProblem gen_dense(const GenSpec& spec);

// Sparse T with prescribed singular values: n draws uniform(0,1) mapped
// affinely onto [2.002, 2.002*target_cond], then two-sided sparse Givens
// rotations applied until the nonzero count is within +-20% of
// density * n^2. Planted solution as in gen_dense.
PwlsProblem gen_sparse(const GenSpec& spec);

// SPD T = U diag(lambda) U^T where U holds the eigenvectors of (A + A^T)/2
// for A with uniform(0,1) entries and lambda drawn open-interval from
// (lambda_min, lambda_max). Planted solution as in gen_dense.
PwlsProblem gen_spd(const GenSpec& spec);

// Planted solution in the Outside region: tail entries uniform(-10,10),
// x1 = -||x2|| + t*2||x2|| with t uniform(0,1) open. Needs n >= 2.
Eigen::VectorXd gen_planted(int n, rng::Xoshiro256pp& gen);

// LSOCCP instances: kDense gives M = Id + S with ||S|| scaled to
// m_minus_id_norm; kSpdDense gives SPD M with eigenvalues mapped affinely
// onto [lambda_min, lambda_max] (extremes attained). q uniform(-10,10).
LsoccpProblem gen_lsoccp(const GenSpec& spec);

}  // namespace socnewton
