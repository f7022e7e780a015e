#include "socnewton/soc_cone.hpp"

#include <cassert>
#include <cmath>

namespace socnewton {

namespace {

void check_finite(const Eigen::VectorXd& x) {
  if (x.size() < 1) {
    throw InvalidInputError("SocVector: dimension must be at least 1");
  }
  if (!x.allFinite()) {
    throw InvalidInputError("SocVector: entries must be finite");
  }
}

}  // namespace

SocVector::SocVector(Eigen::VectorXd x) : x_(std::move(x)) {
  check_finite(x_);
  tail_norm_ = x_.size() > 1 ? x_.tail(x_.size() - 1).norm() : 0.0;
  lambda1_ = x_[0] - tail_norm_;
  lambda2_ = x_[0] + tail_norm_;
}

SocVector::SocVector(double x1, const Eigen::VectorXd& tail)
    : SocVector([&] {
        Eigen::VectorXd x(tail.size() + 1);
        x[0] = x1;
        x.tail(tail.size()) = tail;
        return x;
      }()) {}

const char* to_string(ConeRegion region) {
  switch (region) {
    case ConeRegion::kInteriorCone:
      return "InteriorCone";
    case ConeRegion::kInteriorPolar:
      return "InteriorPolar";
    case ConeRegion::kBoundaryCone:
      return "BoundaryCone";
    case ConeRegion::kBoundaryPolar:
      return "BoundaryPolar";
    case ConeRegion::kOrigin:
      return "Origin";
    case ConeRegion::kOutside:
      return "Outside";
  }
  return "Unknown";
}

ConeRegion classify(const SocVector& x, double boundary_eps) {
  if (boundary_eps < 0.0 || !std::isfinite(boundary_eps)) {
    throw InvalidInputError("classify: boundary_eps must be finite and >= 0");
  }
  const double snap = boundary_eps * std::max(1.0, x.vec().norm());
  const bool on_cone_boundary = std::abs(x.lambda1()) <= snap;
  const bool on_polar_boundary = std::abs(x.lambda2()) <= snap;
  if (on_cone_boundary && on_polar_boundary) return ConeRegion::kOrigin;
  if (on_cone_boundary) return ConeRegion::kBoundaryCone;
  if (on_polar_boundary) return ConeRegion::kBoundaryPolar;
  if (x.lambda1() > 0.0) return ConeRegion::kInteriorCone;
  if (x.lambda2() < 0.0) return ConeRegion::kInteriorPolar;
  return ConeRegion::kOutside;
}

SocVector project(const SocVector& x) {
  if (x.lambda1() >= 0.0) return x;
  if (x.lambda2() <= 0.0) return SocVector(Eigen::VectorXd::Zero(x.dim()));
  // Strictly outside both cones now, so ||x2|| > 0. Only the positive part of
  // lambda2 survives.
  const double r = x.tail_norm();
  const double p1 = 0.5 * x.lambda2();
  Eigen::VectorXd p(x.dim());
  p[0] = p1;
  p.tail(x.dim() - 1) = (p1 / r) * x.tail();
  return SocVector(std::move(p));
}

Eigen::VectorXd project(const Eigen::VectorXd& x) {
  return project(SocVector(x)).vec();
}

std::pair<SocVector, SocVector> moreau_decompose(const SocVector& x) {
  SocVector p = project(x);
  SocVector m = project(SocVector(-x.vec()));
#ifndef NDEBUG
  const double scale = std::max(1.0, x.vec().squaredNorm());
  assert((x.vec() - p.vec() + m.vec()).norm() <= 1e-10 * scale);
  assert(std::abs(p.vec().dot(m.vec())) <= 1e-10 * scale);
#endif
  return {std::move(p), std::move(m)};
}

BSubdiffElement BSubdiffElement::structured(Eigen::VectorXd w, double rho) {
  if (w.size() < 1 || !w.allFinite()) {
    throw InvalidInputError("BSubdiffElement: w must be nonempty and finite");
  }
  if (std::abs(w.norm() - 1.0) > 1e-12) {
    throw InvalidInputError("BSubdiffElement: w must be a unit vector");
  }
  if (!(std::abs(rho) <= 1.0)) {
    throw InvalidInputError("BSubdiffElement: need |rho| <= 1");
  }
  BSubdiffElement v(Kind::kStructured);
  v.w_ = std::move(w);
  v.rho_ = rho;
  return v;
}

const Eigen::VectorXd& BSubdiffElement::w() const {
  if (kind_ != Kind::kStructured) {
    throw InvalidInputError("BSubdiffElement: w() only valid for Structured");
  }
  return w_;
}

double BSubdiffElement::rho() const {
  if (kind_ != Kind::kStructured) {
    throw InvalidInputError("BSubdiffElement: rho() only valid for Structured");
  }
  return rho_;
}

bool BSubdiffElement::same_element(const BSubdiffElement& other, double tol) const {
  if (kind_ != other.kind_) return false;
  if (kind_ != Kind::kStructured) return true;
  if (w_.size() != other.w_.size()) return false;
  return std::abs(rho_ - other.rho_) <= tol && (w_ - other.w_).norm() <= tol;
}

BSubdiffElement bsubdiff_element(const SocVector& x, TieBreakPolicy policy) {
  const ConeRegion region = classify(x);
  const auto direction = [&] {
    return Eigen::VectorXd(x.tail() / x.tail_norm());
  };
  switch (region) {
    case ConeRegion::kInteriorCone:
      return BSubdiffElement::identity();
    case ConeRegion::kInteriorPolar:
      return BSubdiffElement::zero();
    case ConeRegion::kOutside:
      return BSubdiffElement::structured(direction(), x.x1() / x.tail_norm());
    case ConeRegion::kBoundaryCone:
      if (policy == TieBreakPolicy::kHalfBlock) {
        return BSubdiffElement::structured(direction(), 1.0);
      }
      return BSubdiffElement::identity();
    case ConeRegion::kBoundaryPolar:
      if (policy == TieBreakPolicy::kHalfBlock) {
        return BSubdiffElement::structured(direction(), -1.0);
      }
      return BSubdiffElement::zero();
    case ConeRegion::kOrigin:
      if (policy == TieBreakPolicy::kHalfBlock && x.dim() > 1) {
        Eigen::VectorXd e1 = Eigen::VectorXd::Zero(x.dim() - 1);
        e1[0] = 1.0;
        return BSubdiffElement::structured(std::move(e1), 0.0);
      }
      return BSubdiffElement::zero();
  }
  throw InvalidInputError("bsubdiff_element: unreachable region");
}

Eigen::VectorXd apply_bsubdiff(const BSubdiffElement& v, const Eigen::VectorXd& y) {
  switch (v.kind()) {
    case BSubdiffElement::Kind::kIdentity:
      return y;
    case BSubdiffElement::Kind::kZero:
      return Eigen::VectorXd::Zero(y.size());
    case BSubdiffElement::Kind::kStructured:
      break;
  }
  const Eigen::VectorXd& w = v.w();
  if (y.size() != w.size() + 1) {
    throw DimensionMismatchError("apply_bsubdiff: vector length does not match element");
  }
  const double rho = v.rho();
  const auto y2 = y.tail(w.size());
  const double wy2 = w.dot(y2);
  Eigen::VectorXd out(y.size());
  out[0] = 0.5 * (y[0] + wy2);
  out.tail(w.size()) = 0.5 * (y[0] * w + (1.0 + rho) * y2 - rho * wy2 * w);
  return out;
}

Eigen::MatrixXd materialize_bsubdiff(const BSubdiffElement& v, Eigen::Index n) {
  if (n < 1) throw DimensionMismatchError("materialize_bsubdiff: need n >= 1");
  switch (v.kind()) {
    case BSubdiffElement::Kind::kIdentity:
      return Eigen::MatrixXd::Identity(n, n);
    case BSubdiffElement::Kind::kZero:
      return Eigen::MatrixXd::Zero(n, n);
    case BSubdiffElement::Kind::kStructured:
      break;
  }
  const Eigen::VectorXd& w = v.w();
  if (n != w.size() + 1) {
    throw DimensionMismatchError("materialize_bsubdiff: n does not match element");
  }
  const double rho = v.rho();
  const Eigen::Index m = w.size();
  Eigen::MatrixXd out(n, n);
  out(0, 0) = 0.5;
  // Fill one triangle and mirror so the result is symmetric bit for bit.
  for (Eigen::Index i = 0; i < m; ++i) {
    const double off = 0.5 * w[i];
    out(0, i + 1) = off;
    out(i + 1, 0) = off;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    out(i + 1, i + 1) = 0.5 * ((1.0 + rho) - rho * (w[i] * w[i]));
    for (Eigen::Index j = 0; j < i; ++j) {
      const double hij = 0.5 * (-rho * (w[i] * w[j]));
      out(i + 1, j + 1) = hij;
      out(j + 1, i + 1) = hij;
    }
  }
  return out;
}

}  // namespace socnewton
