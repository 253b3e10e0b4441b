#pragma once

#include <map>
#include <string>
#include <vector>

#include "maxlab/diffeo.hpp"
#include "maxlab/fields.hpp"
#include "maxlab/geometry.hpp"

// Named closed-form catalogs used by configs, tests and the Python bindings.
// Unknown names raise std::invalid_argument listing the valid ones.

namespace maxlab::catalog {

using Params = std::map<std::string, double>;

std::vector<std::string> domain_names();
std::vector<std::string> coefficient_names();
std::vector<std::string> vector_field_names();
std::vector<std::string> scalar_field_names();
std::vector<std::string> diffeo_names();
std::vector<std::string> kernel_names();

// Domains (graph functions):
//   flat              phi = 0
//   paraboloid        phi = coeff * |x'|^2 / 2        (coeff, default 1)
//   wedge             phi = -k |x1|                   (k, default 1)
//   abs               phi = |x'|
//   cusp32            phi = -|x'|^{3/2}
//   sinbump           phi = a sin(x1) cos(x2)         (a, default 0.25)
geometry::GraphFunction graph_by_name(const std::string& name, const Params& params = {});

// Coefficients: identity, scaled (beta), aniso, sin_iso (amp), var_spd (amp).
fields::CoefficientField coefficient_by_name(const std::string& name, const Params& params = {});

// Smooth generator fields for baskets: const-x, const-y, const-z, linear,
// rotor, bilinear, trig, quad, shear, radial.
fields::VectorField vector_field_by_name(const std::string& name);
std::vector<fields::VectorField> basket(const std::vector<std::string>& names);
std::vector<std::string> default_basket_names();

// Scalar fields: one, coord3, poly, trig.
fields::ScalarField scalar_field_by_name(const std::string& name);

// Diffeomorphisms: identity, scale (c), affine, shearpoly (a, b), cusp32,
// cusp12.
diffeo::Diffeomorphism diffeo_by_name(const std::string& name, const Params& params = {});

}  // namespace maxlab::catalog
