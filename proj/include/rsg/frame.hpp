#pragma once

#include <Eigen/Dense>
#include <random>

#include "rsg/rng.hpp"

namespace rsg {

// Exact low-dimensional sampling for rotation-invariant functionals.
//
// A uniform point on S^k seen from an m-dimensional subspace has coordinates
// g / sqrt(|g|^2 + R^2) with g ~ N(0, I_m) and R^2 ~ chi^2_{k+1-m}. Applying this
// point by point gives a uniform r-tuple as an r x r lower-triangular matrix whose
// rows are the points in the Gram-Schmidt basis e_1..e_r of the tuple itself.
class Draws {
public:
    double gaussian(Rng& rng) { return normal_(rng); }
    double chi2(Rng& rng, double dof) {
        return gamma_(rng, std::gamma_distribution<double>::param_type(0.5 * dof, 2.0));
    }

private:
    std::normal_distribution<double> normal_;
    std::gamma_distribution<double> gamma_;
};

struct FramePoint {
    Eigen::VectorXd span;  // coordinates in the m-dimensional frame
    double resid = 0.0;    // norm of the component orthogonal to the frame
};

// Uniform point on S^k expressed against an m-dimensional frame (m <= k).
FramePoint sample_frame_point(double k, int m, Rng& rng, Draws& draws);

// Uniform r-tuple on S^k as a lower-triangular r x r matrix of unit rows.
Eigen::MatrixXd sample_frame_tuple(double k, int r, Rng& rng, Draws& draws);

// Cosine between two independent uniform directions of S^{m}.
double sample_cosine(double m, Rng& rng, Draws& draws);

}  // namespace rsg
