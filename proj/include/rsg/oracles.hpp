#pragma once

#include <vector>

#include "rsg/graph.hpp"

namespace rsg {

// Exhaustive subset enumeration; usable up to n around 20.
bool brute_force_has_clique(const BitGraph& adj, int size);
int brute_force_clique_number(const BitGraph& adj);

// P(three uniform points form a monochromatic triangle) by nested one-dimensional quadrature.
double triangle_prob_exact(double k, double p, Color color);

// Cap measure by adaptive Simpson integration of the cosine density, independent of the incomplete beta.
double cap_probability_simpson(double k, double a, double tol = 1e-13);

}  // namespace rsg
