#include "esr3d/align.hpp"

#include "esr3d/kernels.hpp"

namespace esr3d {

Mat3 cross_covariance(const ShapeField& a, const ShapeField& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("field dimensions differ");
  if (!a.r().approx_equal(b.r()) || !a.t().approx_equal(b.t()))
    throw PartitionMismatch("field partitions differ");
  Mat3 out;
  kernels::active().cross_covariance(a.x().data(), a.y().data(), a.z().data(), b.x().data(),
                                     b.y().data(), b.z().data(),
                                     a.r().trapezoid_weights().data(), a.rows(),
                                     a.t().trapezoid_weights().data(), a.cols(), out.m.data());
  return out;
}

KabschResult kabsch_umeyama(const ShapeField& a, const ShapeField& b) {
  const Mat3 cov = cross_covariance(a, b);
  const SvdResult svd = svd3(cov);
  const double s3 = (svd.u * svd.v).det() > 0.0 ? 1.0 : -1.0;
  const Mat3 r = svd.u * Mat3::diagonal(1.0, 1.0, s3) * svd.v.transposed();
  const double maxtrace = (r * cov.transposed()).trace();
  return {Rotation3(r), maxtrace};
}

}  // namespace esr3d
