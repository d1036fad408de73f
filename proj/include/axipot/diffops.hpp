#pragma once

#include "axipot/grid.hpp"

namespace axipot {

enum class Axis { r, z };

/// Second-order finite-difference derivative of order 1 or 2 along one axis.
/// Interior nodes use centered stencils, domain edges one-sided second-order
/// stencils. Across r=0 an even-symmetry ghost f(-hr,z) = f(hr,z) is used,
/// which is the smoothness condition for an axisymmetric scalar; in
/// particular diff(f, r, 1) vanishes identically on the axis.
ScalarField diff(const ScalarField& f, Axis axis, int order);

/// f_rr + f_r/r + f_zz; on the axis the 1/r term is replaced by its limit,
/// giving 2 f_rr + f_zz.
ScalarField axisymmetric_laplacian(const ScalarField& f);

/// f_rr + f_zz with the same stencils: the operator that drops the axis
/// term of the cylindrical Laplacian. Kept as a falsification target.
ScalarField laplacian_missing_axis_term(const ScalarField& f);

/// u_r + u/r + w_z for a velocity pair (u radial, w axial); 2 u_r + w_z on
/// the axis. u is odd in r, so its axis derivative comes from a one-sided
/// stencil instead of the even ghost.
ScalarField divergence_axi(const ScalarField& u, const ScalarField& w);

/// Azimuthal vorticity u_z - w_r, the only curl component of an
/// axisymmetric swirl-free field.
ScalarField curl_theta(const ScalarField& u, const ScalarField& w);

} // namespace axipot
