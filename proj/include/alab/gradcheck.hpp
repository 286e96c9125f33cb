#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "alab/tape.hpp"

namespace alab {

// Worst relative disagreement between tape gradients and central finite
// differences, coordinate by coordinate, with denominator
// max(|analytic|, |numeric|, 1e-12).
//
// build records one forward pass on a fresh tape and returns the scalar
// loss; it must read every checked parameter from the external tensors in
// `leaves` (registering them with tape.param under the given names), so that
// perturbing a leaf perturbs the recorded function.
double gradcheck_params(const std::function<Value(Tape&)>& build,
                        const std::vector<std::pair<std::string, Tensor*>>& leaves,
                        double h);

// Convenience form for a function of a single tensor input.
double gradcheck(const std::function<Value(Tape&, Value)>& fn, const Tensor& point, double h);

} // namespace alab
