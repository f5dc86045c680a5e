#pragma once

// Constructions: symmetrisation, facet derivation, gluing of stiff codes and
// the rotated-cubes family on S^2.

#include <cstdint>
#include <vector>

#include "stiffkit/codes.hpp"
#include "stiffkit/stiffness.hpp"

namespace stiffkit {

/// code u (-code). Throws InvalidArgument if the code already has an antipodal pair.
Code symmetrize(const Code& code);

/// Points y with x . y = t (x = point x_index), mapped to (y - t x) / sqrt(1 - t^2)
/// and written in an orthonormal basis of x^perp. Exact when x is a multiple
/// of a coordinate axis (that coordinate is dropped); floating otherwise.
Code facet_derive(const Code& code, std::size_t x_index, const Surd& t);

struct GlueResult {
  Code code;
  std::vector<double> z1, z2;  // dual points used; z2 lies in D_m of the union
  int attempts = 0;            // random reflections tried
  bool disjoint = false;
  int design_strength = 0;     // float index set up to 2m - 1
  bool design_ok = false;
  std::size_t z2_distinct = 0;  // distinct dots of z2 with the union
  bool z2_in_dual = false;
  bool stiff = false;
  std::uint64_t seed = 0;
};

/// Union of code2 with a reflected copy of code1 sharing the dual point z2.
/// Both inputs must be m-stiff on the same S^d with d >= 2.
GlueResult glue(const Code& code1, const Code& code2, int m, std::uint64_t seed, int threads = 0);

struct RotatedCubes {
  Code code;
  StiffnessCertificate certificate;
  bool dual_is_axis = false;  // dual == {e3, -e3} within 1e-12
};

/// Union of n copies of the cube on S^2 rotated about the z-axis by pi k / (2n).
/// n = 1 gives the plain (exact) cube.
RotatedCubes rotated_cubes(int n, int threads = 0);

}  // namespace stiffkit
