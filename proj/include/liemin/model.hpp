#pragma once

#include <string>
#include <vector>

#include "liemin/ivp.hpp"
#include "liemin/poly_template.hpp"

namespace liemin {

// Concrete model file:
//   vars: x, y, z, w        # declaration, N >= 1
//   x' = x*z + z            # one equation per variable
//   ...
//   init: x=0, y=0, z=1, w=1
//   template: a1*x + a2*y   # optional, may repeat
// '#' starts a comment; blank lines ignored.
struct Model {
    IVP ivp;
    std::vector<PolyTemplate> templates;
};

Model parse_model(const std::string& text);
Model load_model(const std::string& path);
std::string render_model(const Model& model);

}  // namespace liemin
