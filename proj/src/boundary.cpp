#include "vbslab/boundary.hpp"

#include <charconv>
#include <stdexcept>

namespace vbslab {

BoundaryDistance::BoundaryDistance(int sites) : sites_(sites) {
  if (sites < 1) throw std::invalid_argument("BoundaryDistance: distance must be >= 1 or infinite");
}

int BoundaryDistance::sites() const {
  if (!sites_) throw std::logic_error("BoundaryDistance: distance is infinite");
  return *sites_;
}

std::string BoundaryDistance::to_string() const {
  return sites_ ? std::to_string(*sites_) : std::string("inf");
}

BoundaryDistance BoundaryDistance::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinite();
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw std::invalid_argument("BoundaryDistance: cannot parse '" + text + "'");
  return BoundaryDistance(value);
}

double boundary_f(const BoundaryDistance& distance) {
  if (distance.is_infinite()) return 0.0;
  return minus_third_power(distance.sites() - 1);
}

BoundaryWeights boundary_weights(const BoundaryDistance& distance, Side side) {
  return boundary_weights(distance, side, side == Side::left ? Sign::plus : Sign::minus);
}

BoundaryWeights boundary_weights(const BoundaryDistance& distance, Side /*side*/, Sign sign) {
  BoundaryWeights w;
  w.f = boundary_f(distance);
  w.xi_plus = (3.0 + w.f) / 6.0;
  w.xi_minus = (3.0 - w.f) / 6.0;
  const double hi = std::sqrt(w.xi_plus);
  const double lo = std::sqrt(w.xi_minus);
  w.V = Eigen::Matrix2d::Zero();
  w.V(0, 0) = sign == Sign::plus ? hi : lo;
  w.V(1, 1) = sign == Sign::plus ? lo : hi;
  return w;
}

BoundaryWeights left_weights(const BoundaryConfig& config) {
  return boundary_weights(config.left, Side::left, config.sign_left);
}

BoundaryWeights right_weights(const BoundaryConfig& config) {
  return boundary_weights(config.right, Side::right, config.sign_right);
}

Eigen::Matrix<Complex, 3, 2> boundary_insertion(Sign sign) {
  Eigen::Matrix<Complex, 3, 2> q = Eigen::Matrix<Complex, 3, 2>::Zero();
  if (sign == Sign::plus) {
    q(0, 0) = std::numbers::sqrt2;  // a^+ a^+ |vac> = sqrt(2)|+1>
    q(1, 1) = 1.0;                  // a^+ b^+ |vac> = |0>
  } else {
    q(1, 0) = 1.0;
    q(2, 1) = std::numbers::sqrt2;
  }
  return q;
}

DensityMatrix boundary_site_rdm(const BoundaryDistance& distance, Sign sign) {
  if (distance.is_infinite())
    throw std::invalid_argument("boundary_site_rdm: requires a finite boundary distance");
  const double f = boundary_f(distance);
  const ComplexMatrix q = boundary_insertion(sign);
  const ComplexMatrix lift = kron(q, ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  const ComplexMatrix wing = lift * werner_state(f) * lift.adjoint();
  return partial_trace(DensityMatrix::normalized(wing, {3, 2}), {1});
}

Eigen::Vector4cd phi_state(const BoundaryWeights& weights, Side side) {
  const ComplexMatrix v = weights.V.cast<Complex>();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix op = side == Side::left ? kron(v, id) : kron(id, v);
  Eigen::Vector4cd phi = op * singlet();
  return phi / phi.norm();
}

Eigen::Matrix4cd twirled_singlet_sum() {
  Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const ComplexMatrix op = kron(id, ComplexMatrix(pauli(alpha)));
    sum += op * singlet_projector() * op.adjoint();
  }
  return sum;
}

}  // namespace vbslab
