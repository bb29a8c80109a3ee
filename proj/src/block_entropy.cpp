#include "vbslab/block_entropy.hpp"

#include <stdexcept>

namespace vbslab {

namespace {

struct SquaredWeights {
  double x1, x2, y1, y2;  // squared diagonals of V_l and V_r
};

SquaredWeights squared(const BoundaryWeights& left, const BoundaryWeights& right) {
  return {left.V(0, 0) * left.V(0, 0), left.V(1, 1) * left.V(1, 1), right.V(0, 0) * right.V(0, 0),
          right.V(1, 1) * right.V(1, 1)};
}

double log2_safe(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

}  // namespace

DensityMatrix rho_tilde(const BoundaryWeights& left, const BoundaryWeights& right, int block_length) {
  if (block_length < 1) throw std::invalid_argument("rho_tilde: block length must be >= 1");
  const double p = minus_third_power(block_length);
  Eigen::Matrix4cd v = kron(left.V.cast<Complex>().eval(), right.V.cast<Complex>().eval());
  const Eigen::Matrix4cd raw = v * werner_state(p) * v.adjoint();
  return DensityMatrix::normalized(raw, {2, 2});
}

BlockSpectrum block_spectrum(const BoundaryWeights& left, const BoundaryWeights& right,
                             long long block_length) {
  if (block_length < 1) throw std::invalid_argument("block_spectrum: block length must be >= 1");
  const auto [x1, x2, y1, y2] = squared(left, right);
  BlockSpectrum out;
  const double p = minus_third_power(block_length);
  out.p = p;

  const double z = ((1.0 - p) * (x1 * y1 + x2 * y2) + (1.0 + p) * (x1 * y2 + x2 * y1)) / 4.0;
  const double e00 = x1 * y1 * (1.0 - p) / (4.0 * z);
  const double e11 = x2 * y2 * (1.0 - p) / (4.0 * z);
  const double a = x1 * y2 * (1.0 + p) / (4.0 * z);
  const double b = x2 * y1 * (1.0 + p) / (4.0 * z);
  const double off = -0.5 * p * std::sqrt(x1 * x2 * y1 * y2) / z;
  const double mean = 0.5 * (a + b);
  const double radius = std::hypot(0.5 * (a - b), off);

  out.lambdas = {e00, e11, mean + radius, mean - radius};
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  out.entropy_bits = entropy_from_spectrum(out.lambdas);
  out.first_order_lambdas = {x1 * y1 * (1.0 - p), x2 * y2 * (1.0 - p), x1 * y2 * (1.0 + p),
                             x2 * y1 * (1.0 + p)};
  return out;
}

BlockSpectrum block_spectrum(const BoundaryConfig& config, long long block_length) {
  return block_spectrum(left_weights(config), right_weights(config), block_length);
}

double block_entropy(const BoundaryConfig& config, long long block_length) {
  return block_spectrum(config, block_length).entropy_bits;
}

double saturation_value(const BoundaryConfig& config) {
  const BoundaryWeights l = left_weights(config);
  const BoundaryWeights r = right_weights(config);
  return binary_entropy(l.xi_plus) + binary_entropy(r.xi_plus);
}

double entropy_first_order(const BoundaryConfig& config, long long block_length) {
  const BoundaryWeights l = left_weights(config);
  const BoundaryWeights r = right_weights(config);
  const double p = minus_third_power(block_length);
  const double sat = saturation_value(config);
  const double x = l.xi_plus * r.xi_minus;
  const double y = l.xi_minus * r.xi_plus;
  const double correction =
      p * (sat - 4.0 * l.f * r.f + 0.5 * x * log2_safe(x / 4.0) + 0.5 * y * log2_safe(y / 4.0));
  return sat + correction;
}

double entropy_linear_coefficient(const BoundaryConfig& config) {
  const auto [x1, x2, y1, y2] = squared(left_weights(config), right_weights(config));
  // At p = 0 the spectrum is the product {x_i y_j}; to first order each
  // eigenvalue moves by w (s + D) with s = -1 on |00>,|11>, +1 on |01>,|10>
  // and D = (x1 - x2)(y1 - y2) from the trace normalization.
  const double d = (x1 - x2) * (y1 - y2);
  const std::array<std::pair<double, double>, 4> terms = {
      {{x1 * y1, -1.0}, {x2 * y2, -1.0}, {x1 * y2, 1.0}, {x2 * y1, 1.0}}};
  double slope = 0.0;
  for (const auto& [w, s] : terms) slope -= w * (s + d) * log2_safe(w);
  return slope;
}

double entropy_linearized(const BoundaryConfig& config, long long block_length) {
  return saturation_value(config) + minus_third_power(block_length) * entropy_linear_coefficient(config);
}

double entropy_asymptotic(const BoundaryConfig& config, long long block_length, double log_constant) {
  if (!(log_constant > 0.0)) throw std::invalid_argument("entropy_asymptotic: log constant must be > 0");
  const double fl = boundary_f(config.left);
  const double fr = boundary_f(config.right);
  return 2.0 - (fl * fl + fr * fr) / (18.0 * log_constant) +
         minus_third_power(block_length) * entropy_linear_coefficient(config);
}

double xx_boundary_term(int block_length, int chain_length, int boundary_sites, double exponent_k) {
  if (!(exponent_k > 0.0)) throw std::invalid_argument("xx_boundary_term: K must be > 0");
  if (boundary_sites <= 0 || 2 * boundary_sites >= chain_length)
    throw std::domain_error("xx_boundary_term: need 0 < N_nr < N/2");
  if (block_length + 2 * boundary_sites != chain_length)
    throw std::invalid_argument("xx_boundary_term: L + 2 N_nr must equal N");
  const double s = std::sin(2.0 * std::numbers::pi * boundary_sites / chain_length);
  if (std::abs(s) < 1e-15) throw std::domain_error("xx_boundary_term: sine vanishes");
  return 1.0 / std::pow(s * chain_length / std::numbers::pi, exponent_k);
}

std::vector<DecayPoint> decay_scan(const BoundaryConfig& config, long long l_min, long long l_max) {
  if (l_min < 1 || l_max < l_min) throw std::invalid_argument("decay_scan: need 1 <= L_min <= L_max");
  const double sat = saturation_value(config);
  std::vector<DecayPoint> out;
  out.reserve(static_cast<std::size_t>(l_max - l_min + 1));
  for (long long l = l_min; l <= l_max; ++l) {
    const double s = block_entropy(config, l);
    out.push_back({l, s, s - sat});
  }
  return out;
}

}  // namespace vbslab
