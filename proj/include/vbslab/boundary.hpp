#pragma once

#include <optional>
#include <string>

#include "vbslab/spin_core.hpp"

namespace vbslab {

enum class Side { left, right };

/// Which boson the boundary operator inserts at the outermost site:
/// plus = a^+, minus = b^+.
enum class Sign { plus, minus };

inline Sign flipped(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

/// Number of spin-1 sites between a block and the chain end, or infinite
/// (no boundary operator at all).
class BoundaryDistance {
 public:
  explicit BoundaryDistance(int sites);
  static BoundaryDistance infinite() { return BoundaryDistance(); }

  bool is_infinite() const noexcept { return !sites_; }
  /// Throws for an infinite distance.
  int sites() const;
  std::string to_string() const;

  /// Accepts a positive integer or "inf".
  static BoundaryDistance parse(const std::string& text);

  friend bool operator==(const BoundaryDistance&, const BoundaryDistance&) = default;

 private:
  BoundaryDistance() = default;
  std::optional<int> sites_;
};

struct BoundaryConfig {
  BoundaryDistance left;
  BoundaryDistance right;
  Sign sign_left = Sign::plus;
  Sign sign_right = Sign::plus;

  /// Swaps the two ends (mirror image of the chain).
  BoundaryConfig mirrored() const { return {right, left, sign_right, sign_left}; }
  bool is_finite() const { return !left.is_infinite() && !right.is_infinite(); }
};

/// Effective description of one boundary wing after Schmidt reduction.
struct BoundaryWeights {
  double f = 0.0;         ///< (-1/3)^(N-1), zero at infinite distance
  double xi_plus = 0.5;   ///< (3+f)/6
  double xi_minus = 0.5;  ///< (3-f)/6
  Eigen::Matrix2d V = Eigen::Matrix2d::Identity() * std::sqrt(0.5);
};

/// f = (-1/3)^(N-1), or 0 for an infinite distance.
double boundary_f(const BoundaryDistance& distance);

/// Weights in the canonical orientation V_l = diag(sqrt xi+, sqrt xi-),
/// V_r = diag(sqrt xi-, sqrt xi+). That pair describes the boundary signs
/// (left, right) = (+, -).
BoundaryWeights boundary_weights(const BoundaryDistance& distance, Side side);

/// Weights with V oriented for the given boundary operator. For either end,
/// sign + puts xi+ on the b boson of the half-spin adjacent to the wing:
/// V = diag(sqrt xi+, sqrt xi-); sign - swaps the diagonal.
BoundaryWeights boundary_weights(const BoundaryDistance& distance, Side side, Sign sign);

BoundaryWeights left_weights(const BoundaryConfig& config);
BoundaryWeights right_weights(const BoundaryConfig& config);

/// Single-boson insertion Q^sign on a spin-1/2 half-site, as the 3x2 map
/// from the qubit basis (a, b) to the spin-1 basis (S_z = +1, 0, -1).
/// Carries the sqrt(2) of a^+ a^+ |vac>.
Eigen::Matrix<Complex, 3, 2> boundary_insertion(Sign sign);

/// Reduced state of the half-spin of the first block site that belongs to a
/// wing of `distance` finite sites, evaluated from the Werner form of the
/// wing with the boundary insertion applied and the boundary site traced out.
DensityMatrix boundary_site_rdm(const BoundaryDistance& distance, Sign sign);

/// (V_l x I)|Psi-> for the left end or (I x V_r)|Psi-> for the right end,
/// normalized. Qubit order is (outer, inner) on the left and (inner, outer)
/// on the right.
Eigen::Vector4cd phi_state(const BoundaryWeights& weights, Side side);

/// Sum over alpha = 1..3 of (I x sigma_alpha)|Psi-><Psi-|(I x sigma_alpha)^+.
Eigen::Matrix4cd twirled_singlet_sum();

}  // namespace vbslab
