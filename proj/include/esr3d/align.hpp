#ifndef ESR3D_ALIGN_HPP
#define ESR3D_ALIGN_HPP

#include "esr3d/grid.hpp"
#include "esr3d/linalg.hpp"

namespace esr3d {

// A_kl = sum_j wt_j sum_i wr_i a(r_i,t_j)_k b(r_i,t_j)_l.
Mat3 cross_covariance(const ShapeField& a, const ShapeField& b);

struct KabschResult {
  Rotation3 rotation;
  double maxtrace;  // tr(R A^T), the attained alignment score
};

// Proper rotation maximizing sum_ij w_ij a(i,j) . (R b(i,j)) over SO(3):
// A = cross_covariance(a,b), A = U S V^T, R = U diag(1,1,s3) V^T with
// s3 = +1 if det(UV) > 0 and -1 otherwise, so reflections are excluded.
KabschResult kabsch_umeyama(const ShapeField& a, const ShapeField& b);

}  // namespace esr3d

#endif
