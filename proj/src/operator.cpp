#include "greensfn/operator.hpp"

namespace greensfn {

RealGridFunction sample_coeff(const DifferentialOperator& op, int k, const GridPtr& grid) {
    if (k < 0 || k >= op.degree)
        throw Error("bad-index", "coefficient index outside 0..n-1");
    return sample(grid, op.coeffs[k]);
}

} // namespace greensfn
