#pragma once

#include <span>
#include <vector>

#include "arago/poisson.hpp"

namespace arago {

/// Obstacle-plane radius s (units of R) to signed screen radius u_final for a
/// point source on the axis, with the eikonal kick applied instantaneously.
/// Beyond s_free the kick is negligible and u_final = ell * s exactly.
struct RayMap {
  std::vector<double> s;
  std::vector<double> u_final;
  std::vector<double> jacobian;  // d u_final / d s
  double ell = 0.0;
  double s_start = 1.0;
  double s_free = 1.0;
  int caustics = 0;  // folds where the jacobian changes sign
};

/// u_final(s) = ell s + L2 q(s R) / (m v_z R), q from the phase table.
RayMap ray_map(const DimensionlessParams& params, const Interaction& interaction,
               double L2, int points = 20000);

/// Classical screen density from flux conservation along every branch of the
/// ray map, w = ell^2 s / (u |d|u_final|/ds|), normalised to 1 far outside.
RadialProfile classical_point_pattern(std::span<const double> u_grid, const RayMap& map);

/// The classical pattern averaged over the source disc of image radius
/// params.beta, using the same disc kernel as source_averaged_pattern but
/// evaluated ray by ray, which keeps the 1/u focus integrable.
RadialProfile classical_source_averaged(std::span<const double> u_grid,
                                        const DimensionlessParams& params,
                                        const RayMap& map);

struct Distinguishability {
  double height_ratio = 1.0;  // w_quantum / w_classical at the first node
  double l1_distance = 0.0;   // integral of |w_q - w_cl| du over u < ell
};

Distinguishability distinguishability(const RadialProfile& quantum,
                                      const RadialProfile& classical, double ell);

}  // namespace arago
