#pragma once

#include "ifdyn/contour.hpp"

namespace ifdyn {

/// max over node pairs of |beta| / |z(a) - z(a - beta)|, beta taken in (-pi, pi],
/// together with max_j 1/|dz/da| for beta = 0. Chords are only sampled at grid
/// offsets, so near-contacts between nodes are resolved only as well as the grid
/// resolves them. Throws CurveDegenerate if two nodes coincide.
double arc_chord(const Contour& z);

/// max_j | |dz/da(a_j)|^2 - A | / A with A the grid mean of |dz/da|^2.
double tangent_uniformity(const Contour& z);

/// Grid mean of |dz/da|^2.
double mean_tangent_length_sq(const Contour& z);

}  // namespace ifdyn
