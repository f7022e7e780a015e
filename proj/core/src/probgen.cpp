#include "socnewton/probgen.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "socnewton/spectral.hpp"

namespace socnewton {

namespace {

void check_spec(const GenSpec& spec) {
  if (spec.n < 1) throw InvalidSpecError("GenSpec: n must be positive");
}

Eigen::VectorXd draw_vector(rng::Xoshiro256pp& gen, int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = gen.uniform(lo, hi);
  return v;
}

DenseMat draw_matrix(rng::Xoshiro256pp& gen, int n, double lo, double hi) {
  DenseMat m(n, n);
  // Row-major fill order, one stream.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = gen.uniform(lo, hi);
  }
  return m;
}

// Finishes a PWLS instance: plants an Outside-region solution and builds b.
PwlsProblem finish_pwls(Matrix T, const GenSpec& spec) {
  rng::Xoshiro256pp planted_gen = rng::make_stream(spec.seed, rng::Site::kPlanted);
  Eigen::VectorXd x_star = gen_planted(spec.n, planted_gen);
  Eigen::VectorXd b = project(x_star) + T.apply(x_star);
  return PwlsProblem{std::move(T), std::move(b), std::move(x_star)};
}

// Orthonormal eigenbasis of the symmetrized uniform(0,1) matrix.
DenseMat random_eigenbasis(const GenSpec& spec, int n) {
  rng::Xoshiro256pp gen = rng::make_stream(spec.seed, rng::Site::kEigBasis);
  DenseMat a = draw_matrix(gen, n, 0.0, 1.0);
  DenseMat sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMat> es(sym);
  return es.eigenvectors();
}

DenseMat spd_from_spectrum(const DenseMat& u, const Eigen::VectorXd& lambda) {
  DenseMat t = u * lambda.asDiagonal() * u.transpose();
  return 0.5 * (t + DenseMat(t.transpose()));
}

}  // namespace

Eigen::VectorXd gen_planted(int n, rng::Xoshiro256pp& gen) {
  if (n < 2) {
    throw InvalidSpecError("gen_planted: the strict Outside region is empty for n < 2");
  }
  Eigen::VectorXd x(n);
  for (int i = 1; i < n; ++i) x[i] = gen.uniform(-10.0, 10.0);
  const double r = x.tail(n - 1).norm();
  const double t = gen.uniform01_open();
  x[0] = -r + t * (2.0 * r);
  if (classify(SocVector(x)) != ConeRegion::kOutside) {
    // Possible only if every tail draw were exactly zero.
    throw InvalidSpecError("gen_planted: degenerate draw, planted point not Outside");
  }
  return x;
}

PwlsProblem gen_dense(const GenSpec& spec) {
  check_spec(spec);
  rng::Xoshiro256pp entries = rng::make_stream(spec.seed, rng::Site::kMatrixEntries);
  DenseMat t = draw_matrix(entries, spec.n, -10.0, 10.0);
  const double sm = sigma_min(Matrix::dense(t));
  if (sm == 0.0) throw InvalidSpecError("gen_dense: drew a singular matrix");
  rng::Xoshiro256pp scale_gen = rng::make_stream(spec.seed, rng::Site::kScale);
  const double u = scale_gen.uniform01_open();
  t *= 2.0 / (sm * u);
  return finish_pwls(Matrix::dense(std::move(t)), spec);
}

PwlsProblem gen_sparse(const GenSpec& spec) {
  check_spec(spec);
  if (!(spec.density > 0.0) || spec.density > 1.0) {
    throw InvalidSpecError("gen_sparse: density must lie in (0, 1]");
  }
  if (!(spec.target_cond >= 1.0)) {
    throw InvalidSpecError("gen_sparse: target_cond must be >= 1");
  }
  const int n = spec.n;
  const double target_nnz = spec.density * static_cast<double>(n) * static_cast<double>(n);
  if (target_nnz < static_cast<double>(n)) {
    throw InvalidSpecError("gen_sparse: density below the n/n^2 diagonal floor");
  }

  // Singular values: uniform draws mapped affinely so the smallest lands on
  // 2.002 and the largest on 2.002 * target_cond.
  rng::Xoshiro256pp sv_gen = rng::make_stream(spec.seed, rng::Site::kSingularValues);
  Eigen::VectorXd sv(n);
  for (int i = 0; i < n; ++i) sv[i] = sv_gen.uniform01();
  const double lo = 2.002;
  const double hi = lo * spec.target_cond;
  const double smin = sv.minCoeff();
  const double smax = sv.maxCoeff();
  if (n == 1 || smax == smin) {
    sv.setConstant(lo);
  } else {
    for (int i = 0; i < n; ++i) sv[i] = lo + (sv[i] - smin) * (hi - lo) / (smax - smin);
  }

  // T = G_L * D * G_R^T built in two passes of sparse row rotations:
  // B = G_R * D first, then T = G_L * B^T, so both passes are row operations.
  rng::Xoshiro256pp rot = rng::make_stream(spec.seed, rng::Site::kRotations);
  std::vector<std::map<int, double>> rows(n);
  for (int i = 0; i < n; ++i) rows[i][i] = sv[i];
  long long nnz = n;

  auto rotate_rows = [&](int p, int q, double c, double s) {
    std::map<int, double> merged_p, merged_q;
    auto& rp = rows[p];
    auto& rq = rows[q];
    for (const auto& [col, v] : rp) {
      merged_p[col] += c * v;
      merged_q[col] -= s * v;
    }
    for (const auto& [col, v] : rq) {
      merged_p[col] += s * v;
      merged_q[col] += c * v;
    }
    nnz -= static_cast<long long>(rp.size() + rq.size());
    rp = std::move(merged_p);
    rq = std::move(merged_q);
    nnz += static_cast<long long>(rp.size() + rq.size());
  };

  auto sprinkle = [&](double stop_at) {
    // Cap at 64*n rotations as a safety net; the nnz target is reached long
    // before that at practical densities.
    for (long long guard = 0; nnz < stop_at && guard < 64LL * n; ++guard) {
      int p = static_cast<int>(rot.uniform01() * n);
      int q = static_cast<int>(rot.uniform01() * (n - 1));
      p = std::min(p, n - 1);
      q = std::min(q, n - 2);
      if (q >= p) ++q;
      const double theta = rot.uniform(0.0, 2.0 * M_PI);
      rotate_rows(p, q, std::cos(theta), std::sin(theta));
    }
  };

  sprinkle(0.5 * target_nnz);
  // Transpose between the two passes.
  {
    std::vector<std::map<int, double>> cols(n);
    for (int i = 0; i < n; ++i) {
      for (const auto& [col, v] : rows[i]) cols[col][i] = v;
    }
    rows = std::move(cols);
  }
  sprinkle(0.999 * target_nnz);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(nnz));
  for (int i = 0; i < n; ++i) {
    for (const auto& [col, v] : rows[i]) triplets.emplace_back(i, col, v);
  }
  SparseMat t(n, n);
  t.setFromTriplets(triplets.begin(), triplets.end());
  return finish_pwls(Matrix::sparse(std::move(t)), spec);
}

PwlsProblem gen_spd(const GenSpec& spec) {
  check_spec(spec);
  if (!(spec.lambda_min >= 0.0) || !(spec.lambda_max > spec.lambda_min)) {
    throw InvalidSpecError("gen_spd: need 0 <= lambda_min < lambda_max");
  }
  const DenseMat u = random_eigenbasis(spec, spec.n);
  rng::Xoshiro256pp ev_gen = rng::make_stream(spec.seed, rng::Site::kEigValues);
  Eigen::VectorXd lambda(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    lambda[i] = spec.lambda_min + ev_gen.uniform01_open() * (spec.lambda_max - spec.lambda_min);
  }
  return finish_pwls(Matrix::dense(spd_from_spectrum(u, lambda)), spec);
}

LsoccpProblem gen_lsoccp(const GenSpec& spec) {
  check_spec(spec);
  std::optional<Matrix> m;
  switch (spec.kind) {
    case GenKind::kDense: {
      if (!(spec.m_minus_id_norm > 0.0) || !(spec.m_minus_id_norm < 0.5)) {
        throw InvalidSpecError("gen_lsoccp: m_minus_id_norm must lie in (0, 0.5)");
      }
      rng::Xoshiro256pp entries = rng::make_stream(spec.seed, rng::Site::kMatrixEntries);
      DenseMat s = draw_matrix(entries, spec.n, -10.0, 10.0);
      const double norm = op_norm_2(Matrix::dense(s));
      if (norm == 0.0) throw InvalidSpecError("gen_lsoccp: drew a zero matrix");
      s *= spec.m_minus_id_norm / norm;
      s.diagonal().array() += 1.0;
      m.emplace(Matrix::dense(std::move(s)));
      break;
    }
    case GenKind::kSpdDense: {
      if (!(spec.lambda_min > 0.0) || !(spec.lambda_max > spec.lambda_min)) {
        throw InvalidSpecError("gen_lsoccp: SPD kind needs 0 < lambda_min < lambda_max");
      }
      const DenseMat u = random_eigenbasis(spec, spec.n);
      rng::Xoshiro256pp ev_gen = rng::make_stream(spec.seed, rng::Site::kEigValues);
      Eigen::VectorXd lambda(spec.n);
      for (int i = 0; i < spec.n; ++i) lambda[i] = ev_gen.uniform01();
      if (spec.n == 1) {
        lambda[0] = spec.lambda_min;
      } else {
        // Affine map with the extremes attained exactly.
        const double dmin = lambda.minCoeff();
        const double dmax = lambda.maxCoeff();
        if (dmax == dmin) {
          lambda.setConstant(spec.lambda_min);
        } else {
          for (int i = 0; i < spec.n; ++i) {
            lambda[i] = spec.lambda_min +
                        (lambda[i] - dmin) * (spec.lambda_max - spec.lambda_min) / (dmax - dmin);
          }
        }
      }
      m.emplace(Matrix::dense(spd_from_spectrum(u, lambda)));
      break;
    }
    case GenKind::kSparse:
      throw InvalidSpecError("gen_lsoccp: sparse LSOCCP generation is not provided");
  }
  rng::Xoshiro256pp q_gen = rng::make_stream(spec.seed, rng::Site::kRhs);
  Eigen::VectorXd q = draw_vector(q_gen, spec.n, -10.0, 10.0);
  return LsoccpProblem{std::move(*m), std::move(q)};
}

}  // namespace socnewton
