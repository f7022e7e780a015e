#pragma once

#include <Eigen/Dense>
#include <utility>

#include "socnewton/errors.hpp"

// Geometry of the second-order cone
//   K = { (x1, x2) in R x R^{n-1} : ||x2|| <= x1 }.
// For n = 1 the tail block is empty and K degenerates to the nonnegative
// half-line.

namespace socnewton {

// A vector split as (x1, x2) with the tail norm and the spectral values
// x1 -+ ||x2|| cached at construction.
class SocVector {
 public:
  explicit SocVector(Eigen::VectorXd x);
  SocVector(double x1, const Eigen::VectorXd& tail);

  Eigen::Index dim() const { return x_.size(); }
  double x1() const { return x_[0]; }
  auto tail() const { return x_.tail(x_.size() - 1); }
  const Eigen::VectorXd& vec() const { return x_; }

  double tail_norm() const { return tail_norm_; }
  // Spectral values: lambda1 = x1 - ||x2||, lambda2 = x1 + ||x2||.
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }

 private:
  Eigen::VectorXd x_;
  double tail_norm_;
  double lambda1_;
  double lambda2_;
};

enum class ConeRegion {
  kInteriorCone,   // x1 > ||x2||
  kInteriorPolar,  // x1 < -||x2||
  kBoundaryCone,   // x2 != 0 and x1 = ||x2||
  kBoundaryPolar,  // x2 != 0 and x1 = -||x2||
  kOrigin,         // x = 0
  kOutside,        // -||x2|| < x1 < ||x2||
};

const char* to_string(ConeRegion region);

// Region of x. With boundary_eps = 0 comparisons are exact; with
// boundary_eps > 0, |x1 -+ ||x2||| <= boundary_eps * max(1, ||x||) snaps to
// the corresponding boundary tag (both snapping means Origin).
ConeRegion classify(const SocVector& x, double boundary_eps = 0.0);

// Euclidean projection onto K. Points already in K come back unchanged
// (bitwise); points in the polar cone -K map to zero.
SocVector project(const SocVector& x);
Eigen::VectorXd project(const Eigen::VectorXd& x);

// Returns (P_K(x), P_K(-x)); the input satisfies x = first - second and the
// two parts are orthogonal, both checked internally in debug builds.
std::pair<SocVector, SocVector> moreau_decompose(const SocVector& x);

// How to pick an element of the B-subdifferential of P_K at nonsmooth points
// (the two boundary rays and the origin), where the set has more than one
// member.
enum class TieBreakPolicy {
  // Identity on the cone boundary, Zero on the polar boundary and at the
  // origin. This is the choice the solver uses.
  kSimplest,
  // The half-block limits instead: Structured(w, +1) on the cone boundary,
  // Structured(w, -1) on the polar boundary, Structured(e1, 0) at the origin.
  // At the origin with n = 1 there is no direction w and this falls back to
  // Zero.
  kHalfBlock,
};

// One element V of the B-subdifferential of P_K. Structured stands for the
// symmetric matrix
//   1/2 * [[1, w^T], [w, H]],  H = (1+rho) Id - rho w w^T,
// with ||w|| = 1 and |rho| <= 1. Stored as (kind, w, rho); never densified
// unless materialize() is called.
class BSubdiffElement {
 public:
  enum class Kind { kIdentity, kZero, kStructured };

  static BSubdiffElement identity() { return BSubdiffElement(Kind::kIdentity); }
  static BSubdiffElement zero() { return BSubdiffElement(Kind::kZero); }
  static BSubdiffElement structured(Eigen::VectorXd w, double rho);

  Kind kind() const { return kind_; }
  const Eigen::VectorXd& w() const;
  double rho() const;

  bool same_element(const BSubdiffElement& other, double tol = 0.0) const;

 private:
  explicit BSubdiffElement(Kind kind) : kind_(kind), rho_(0.0) {}
  Kind kind_;
  Eigen::VectorXd w_;
  double rho_;
};

// Element of the B-subdifferential at x under the given tie-break policy.
BSubdiffElement bsubdiff_element(const SocVector& x,
                                 TieBreakPolicy policy = TieBreakPolicy::kSimplest);

// v * y without forming the matrix.
Eigen::VectorXd apply_bsubdiff(const BSubdiffElement& v, const Eigen::VectorXd& y);

// The explicit symmetric n x n matrix represented by v.
Eigen::MatrixXd materialize_bsubdiff(const BSubdiffElement& v, Eigen::Index n);

}  // namespace socnewton
